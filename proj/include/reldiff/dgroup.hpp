#pragma once

// Relative D-groups: the group law on tau G, logarithmic derivative,
// adjoint action, crossed homomorphisms, integrable points and the linear
// (GL_n, zero section) specialization.

#include <string>
#include <vector>

#include "reldiff/dvariety.hpp"

namespace reldiff {

/// Group law on G given by rational tuples. `x` are G's coordinates, `y` a
/// second copy used for the right factor of `mul`.
struct GroupLaw {
  std::vector<std::uint32_t> x;
  std::vector<std::uint32_t> y;
  std::vector<RatFun> mul;       // in x and y
  std::vector<RatFun> inv;       // in x
  std::vector<RatFun> identity;  // field elements
};

struct DGroup {
  DVariety dv;
  GroupLaw law;

  const Variety& G() const { return dv.V; }
  const std::vector<std::uint32_t>& coords() const { return dv.V.coords; }
};

/// Presentation of I(G x G): G's equations in x together with their copies
/// in y. With `all_derivations` the set reduces along every derivation, as
/// needed for identities involving nabla.
AutoreducedSet product_ideal(const FieldDescriptor& field, const DGroup& g, bool all_derivations);
AutoreducedSet group_ideal(const FieldDescriptor& field, const DGroup& g, bool all_derivations);

/// Identity, inverse (and optionally associativity) laws of the rational
/// group law, as residuals mod I(G) / I(G x G).
CheckReport check_group_law(Ring& ring, const DGroup& g, bool check_assoc);

/// (g, u) * (h, v) from the explicit formula.
TauPoint tau_mul(Ring& ring, const GroupLaw& law, const TauPoint& a, const TauPoint& b);

/// (g, u)^{-1} from the explicit formula.
TauPoint tau_inv(Ring& ring, const GroupLaw& law, const TauPoint& a);

/// nabla(e).
TauPoint tau_identity(const FieldDescriptor& field, const GroupLaw& law);

/// Substitutes `y` -> `b` and `x` -> `a` into the multiplication.
std::vector<RatFun> group_mul(const FieldDescriptor& field, const GroupLaw& law, const std::vector<RatFun>& a,
                              const std::vector<RatFun>& b);
std::vector<RatFun> group_inv(const FieldDescriptor& field, const GroupLaw& law, const std::vector<RatFun>& a);

/// s(g) as a point of tau G.
TauPoint section_point(const FieldDescriptor& field, const DGroup& g, const std::vector<RatFun>& a);

/// l_s(a) = nabla(a) * s(a)^{-1}.
TauPoint log_derivative(Ring& ring, const DGroup& g, const std::vector<RatFun>& a);

/// g * alpha = tau(C_g)(alpha) for alpha over the identity.
TauPoint adjoint(Ring& ring, const DGroup& g, const std::vector<RatFun>& a, const TauPoint& alpha);

/// s(a) * alpha * s(a)^{-1}.
TauPoint adjoint_oracle(Ring& ring, const DGroup& g, const std::vector<RatFun>& a, const TauPoint& alpha);

/// Componentwise difference of two points as residuals mod `ideal`.
CheckReport compare_points(const FieldDescriptor& field, const std::string& label, const TauPoint& lhs,
                           const TauPoint& rhs, const AutoreducedSet& ideal);

/// tau p(s(x), s(y)) = s(p(x, y)) mod I(G x G).
CheckReport check_section_hom(Ring& ring, const DGroup& g);

/// tau p(nabla x, nabla y) = nabla p(x, y) mod I(G x G).
CheckReport check_nabla_hom(Ring& ring, const DGroup& g);

/// l(p(x, y)) = l(x) * (x * l(y)) mod I(G x G).
CheckReport check_crossed_hom(Ring& ring, const DGroup& g);

/// Twisted section x -> alpha * s(x).
DVariety twisted(Ring& ring, const DGroup& g, const TauPoint& alpha);

/// Definitional path: the twisted section is a section and integrable.
CheckReport integrable_point_check(Ring& ring, const DGroup& g, const TauPoint& alpha);

/// Witness path: a lies on G and l_s(a) = alpha.
CheckReport integrable_by_witness(Ring& ring, const DGroup& g, const TauPoint& alpha,
                                  const std::vector<RatFun>& witness);

// ---------------------------------------------------------------- linear

using Matrix = std::vector<std::vector<RatFun>>;

Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_sub(const Matrix& a, const Matrix& b);
Matrix mat_derive(const FieldDescriptor& field, std::size_t derivation, const Matrix& a);

struct LinearPairResidual {
  std::size_t i;
  std::size_t j;
  Matrix residual;  // D_i A_j - D_j A_i - [A_i, A_j]
  bool zero;
};

struct LinearReport {
  Verdict verdict = Verdict::Pass;
  std::vector<LinearPairResidual> pairs;
};

/// One square matrix per lifted derivation. Throws Error(DimensionMismatch).
LinearReport linear_integrability(const FieldDescriptor& field, const std::vector<Matrix>& a);

}  // namespace reldiff
