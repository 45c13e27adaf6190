#pragma once

// Differential polynomials and rational functions in Pi-indeterminates over
// a FieldDescriptor: formal derivation, partial derivatives, derivative-
// consistent substitution, rankings and leader/initial/separant.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "reldiff/coeffield.hpp"
#include "reldiff/expr.hpp"

namespace reldiff {

/// Coefficient field plus named differential indeterminates x_1..x_n. The
/// indeterminate index is the last tie-break of the ranking, so declaration
/// order matters: later indeterminates rank higher at equal derivative order.
class Ring {
public:
  explicit Ring(std::shared_ptr<const FieldDescriptor> field, std::vector<std::string> indeterminates = {});

  const FieldDescriptor& field() const { return *field_; }
  std::shared_ptr<const FieldDescriptor> field_ptr() const { return field_; }

  std::size_t indeterminate_count() const { return indeterminates_.size(); }
  const std::vector<std::string>& indeterminates() const { return indeterminates_; }
  const std::string& indeterminate_name(std::uint32_t i) const { return indeterminates_.at(i); }
  std::optional<std::uint32_t> find_indeterminate(std::string_view name) const;
  /// Throws Error(UndefinedSymbol).
  std::uint32_t indeterminate(std::string_view name) const;
  /// Returns the index of `name`, declaring it if needed.
  std::uint32_t ensure_indeterminate(const std::string& name);

  /// Indeterminate at order zero.
  Var var(std::string_view name) const { return Var::indeterminate(indeterminate(name)); }
  RatFun symbol(std::string_view name) const;

  NameTable names() const { return NameTable{field_->derivations(), field_->generators(), indeterminates_}; }
  RatFun parse(std::string_view text, ParseOptions opts = {}) const;
  std::string str(const RatFun& f) const { return format_ratfun(f, names()); }
  std::string str(const Poly& p) const { return format_poly(p, names()); }
  std::string str(const Var& v) const { return format_var(v, names()); }

private:
  std::shared_ptr<const FieldDescriptor> field_;
  std::vector<std::string> indeterminates_;
};

/// Formal total derivative: coefficients via the table, theta x_i -> d theta x_i.
RatFun derive(const FieldDescriptor& field, std::size_t derivation, const RatFun& f);

/// Total derivative in which derivative variables of the listed
/// indeterminates are held constant. With every indeterminate frozen this is
/// f^D, the derivative of the coefficients only.
RatFun derive_holding(const FieldDescriptor& field, std::size_t derivation, const RatFun& f,
                      const std::vector<std::uint32_t>& frozen);

/// f^D: applies D to the coefficients of f only.
RatFun derive_coefficients(const FieldDescriptor& field, std::size_t derivation, const RatFun& f);

/// theta(f) for a multi-index theta.
RatFun apply_theta(const FieldDescriptor& field, const MultiIndex& theta, const RatFun& f);

/// Formal partial derivative, every derivative variable independent.
Poly partial(const Poly& f, const Var& v);
RatFun partial(const RatFun& f, const Var& v);

/// Indeterminate index -> replacement. Indeterminates not in the map are left
/// alone. Substitution is simultaneous and derivative-consistent: theta x_i
/// becomes theta(sigma(x_i)).
using Substitution = std::map<std::uint32_t, RatFun>;

/// Throws Error(DivisionByZero) if a denominator vanishes under sigma.
RatFun substitute(const FieldDescriptor& field, const RatFun& f, const Substitution& sigma);
std::vector<RatFun> substitute(const FieldDescriptor& field, const std::vector<RatFun>& fs,
                               const Substitution& sigma);

/// Builds {coords[k] -> values[k]}; throws Error(DimensionMismatch).
Substitution make_substitution(const std::vector<std::uint32_t>& coords, const std::vector<RatFun>& values);

/// The single ranking supported: orderly, reverse-lexicographic on the
/// multi-index, then by indeterminate index.
enum class Ranking { Orderly };

std::strong_ordering rank_compare(const Var& u, const Var& v, Ranking rk);

struct LeaderData {
  Var leader;
  std::uint32_t degree = 0;
  Poly initial;
  Poly separant;
};

/// Throws Error(ConstantPolynomial) if f has no derivative variable.
LeaderData leader_initial_separant(const Poly& f, Ranking rk = Ranking::Orderly);

/// Highest-ranked derivative variable of f, if any.
std::optional<Var> leader(const Poly& f);

/// Largest derivative order over all derivative variables of f, counting
/// only derivations in `mask`.
int differential_order(const RatFun& f, DerivationMask mask);

/// True when every derivative variable uses derivations from `mask` only.
bool uses_only(const RatFun& f, DerivationMask mask);

}  // namespace reldiff
