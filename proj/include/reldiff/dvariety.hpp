#pragma once

// Relative D-varieties (V, s): section validation, integrability, sharp
// points and D-subvarieties.

#include <string>
#include <vector>

#include "reldiff/prolong.hpp"
#include "reldiff/reduce.hpp"

namespace reldiff {

enum class Verdict { Pass, Fail, Inconclusive };
const char* verdict_name(Verdict v);
int verdict_exit_code(Verdict v);

struct ResidualCheck {
  std::string label;
  RatFun residual;
  Membership membership = Membership::InIdeal;
  ReductionCertificate certificate;
};

struct CheckReport {
  Verdict verdict = Verdict::Pass;
  std::vector<ResidualCheck> checks;

  /// Folds a membership result into the verdict: any NotInIdeal fails, any
  /// Unknown makes an otherwise passing report inconclusive.
  void add(ResidualCheck c);
  void merge(const CheckReport& other);
};

/// Runs membership on `residual` and records it.
ResidualCheck check_residual(const FieldDescriptor& field, std::string label, const RatFun& residual,
                             const AutoreducedSet& ideal);

/// An affine Delta-variety given by a characteristic set of I(V/K)_Delta.
struct Variety {
  std::vector<std::uint32_t> coords;
  AutoreducedSet ideal;

  /// Throws Error(NotAutoreduced) / Error(Semantic) when an equation uses
  /// lifted derivations.
  static Variety make(const FieldDescriptor& field, std::vector<std::uint32_t> coords,
                      std::vector<RatFun> equations, bool prime);

  std::vector<RatFun> equations() const;
};

struct DVariety {
  Variety V;
  /// section[i] = s_i, one tuple per lifted derivation.
  std::vector<std::vector<RatFun>> section;

  /// Largest base-derivation order occurring in s.
  int section_order(const FieldDescriptor& field) const;
  /// max(1, section_order).
  int mu(const FieldDescriptor& field) const;
};

/// Throws Error(DimensionMismatch) when the section does not fit V.
void check_section_shape(const FieldDescriptor& field, const DVariety& dv);

/// d_rel(D_i, f)(x, s_i(x)) mod V for every generator f and lifted D_i.
CheckReport validate_section(Ring& ring, const DVariety& dv);

/// d_rel(D_i, s_j)(x, s_i(x)) - d_rel(D_j, s_i)(x, s_j(x)) mod V for i < j.
CheckReport check_integrability(Ring& ring, const DVariety& dv);

/// Section value at a point: (a; s_1(a), ..., s_r(a)).
TauPoint section_at(const FieldDescriptor& field, const DVariety& dv, const std::vector<RatFun>& a);

struct SharpResult {
  bool sharp = true;
  /// differences[i][j] = s_i(a)_j - D_i a_j
  std::vector<std::vector<RatFun>> differences;
};

/// Throws Error(NotOnVariety) unless every equation vanishes at a.
SharpResult sharp_member(const FieldDescriptor& field, const DVariety& dv, const std::vector<RatFun>& a);

/// Every equation of V and every component of s - s_W reduces to 0 mod W.
CheckReport subdvariety_report(const FieldDescriptor& field, const DVariety& w, const DVariety& v);
bool is_subdvariety(const FieldDescriptor& field, const DVariety& w, const DVariety& v);

}  // namespace reldiff
