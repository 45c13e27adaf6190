#pragma once

// Relative prolongation d_{D/Delta}, prolongation presentations, nabla and
// the induced maps on prolongation spaces.

#include <string>
#include <vector>

#include "reldiff/diffpoly.hpp"

namespace reldiff {

/// A point (x; u_1, ..., u_r) of a prolongation space. fibers[i] belongs to
/// the i-th lifted derivation.
struct TauPoint {
  std::vector<RatFun> base;
  std::vector<std::vector<RatFun>> fibers;

  bool operator==(const TauPoint&) const = default;
};

/// Sum over derivative variables theta z_k of f of
///   (df / d theta z_k)|_at * theta(direction_k).
/// With `at` empty and direction = fresh symbols this is d_lin.
RatFun linearize(const FieldDescriptor& field, const RatFun& f, const std::vector<std::uint32_t>& coords,
                 const Substitution& at, const std::vector<RatFun>& direction);

/// Sum of df/d(theta x_k) * theta u_k.
RatFun d_lin(const FieldDescriptor& field, const RatFun& f, const std::vector<std::uint32_t>& coords,
             const std::vector<std::uint32_t>& fiber);

/// d_lin(f) + f^D. Throws Error(Semantic) when D is not a lifted derivation
/// or f mentions derivatives along lifted derivations.
RatFun d_rel(const FieldDescriptor& field, std::size_t derivation, const RatFun& f,
             const std::vector<std::uint32_t>& coords, const std::vector<std::uint32_t>& fiber);

/// Name of the fiber variable for lifted derivation i (0-based) and
/// coordinate j (0-based): "u<i+1>_<j+1>".
std::string fiber_name(std::size_t i, std::size_t j);

/// Declares (or reuses) the fiber indeterminates, one tuple per lifted
/// derivation, named with the given prefix.
std::vector<std::vector<std::uint32_t>> fiber_variables(Ring& ring, std::size_t n, const std::string& prefix = "u");

struct ProlongationPresentation {
  std::vector<std::uint32_t> coords;
  std::vector<RatFun> base;
  /// fibers[i][j]: indeterminate index of the fiber variable.
  std::vector<std::vector<std::uint32_t>> fibers;
  /// lifted[i][k] = d_rel(D_i, base[k]).
  std::vector<std::vector<RatFun>> lifted;

  std::vector<RatFun> all_generators() const;
};

ProlongationPresentation prolongation_gens(Ring& ring, const std::vector<RatFun>& generators,
                                           const std::vector<std::uint32_t>& coords);
/// Same, with caller-chosen fiber indeterminates.
ProlongationPresentation prolongation_gens(const FieldDescriptor& field, const std::vector<RatFun>& generators,
                                           const std::vector<std::uint32_t>& coords,
                                           std::vector<std::vector<std::uint32_t>> fibers);

/// (a; D_1 a, ..., D_r a) with formal derivatives.
TauPoint nabla(const FieldDescriptor& field, const std::vector<RatFun>& a);

/// Induced map (x, u_i) -> (f(x), d_rel(D_i, f)(x, u_i)).
/// Throws Error(DivisionByZero) or Error(DimensionMismatch).
TauPoint tau_apply(Ring& ring, const std::vector<RatFun>& f, const std::vector<std::uint32_t>& coords,
                   const TauPoint& p);

/// Evaluates every generator of the presentation at a point.
std::vector<RatFun> evaluate_presentation(const FieldDescriptor& field, const ProlongationPresentation& pres,
                                          const TauPoint& p);

}  // namespace reldiff
