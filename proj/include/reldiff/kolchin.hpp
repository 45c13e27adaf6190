#pragma once

// Numerical polynomials in the binomial basis and dimension polynomials of
// leader sets.

#include <string>
#include <utility>
#include <vector>

#include "reldiff/dvariety.hpp"

namespace reldiff {

/// sum_i d_i * C(h + i, i). Trailing zero coefficients are trimmed, so the
/// representation is unique and the zero polynomial has no coefficients.
class NumericalPolynomial {
public:
  NumericalPolynomial() = default;
  explicit NumericalPolynomial(std::vector<Integer> coeffs);

  const std::vector<Integer>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Integer operator()(long h) const;
  std::string str() const;

  bool operator==(const NumericalPolynomial&) const = default;

private:
  std::vector<Integer> coeffs_;
};

/// C(n, k) for any integer n (polynomial in n), k >= 0.
Integer binomial(const Integer& n, unsigned k);

/// Sign of a - b under eventual domination.
int compare_eventual(const NumericalPolynomial& a, const NumericalPolynomial& b);

/// (Pi-type, typical Pi-dimension); the zero polynomial gives (0, 0).
std::pair<int, Integer> type_and_dim(const NumericalPolynomial& w);

/// One antichain of multi-indices in N^m per indeterminate.
struct LeaderSet {
  std::size_t m = 0;
  std::vector<std::vector<MultiIndex>> leaders;

  /// Removes duplicates and leaders that dominate another one.
  void normalize();
  int max_order() const;
};

NumericalPolynomial dim_poly(const LeaderSet& l);

/// Smallest h0 >= max_order() from which dim_poly(l)(h) equals the count
/// for every h >= h0: max(max_order, |join of an antichain| - m).
long exact_from(const LeaderSet& l);
Integer brute_force_count(const LeaderSet& l, long h);

/// Leaders of a characteristic set in the given coordinates, projected onto
/// the derivations selected by `mask` (positions renumbered consecutively).
LeaderSet leaders_of(const AutoreducedSet& a, const std::vector<std::uint32_t>& coords, DerivationMask mask);

/// Leaders of the sharp system: the base leaders of V plus every order-one
/// derivative along a lifted derivation, in N^{|Pi|}.
LeaderSet sharp_leaders(const FieldDescriptor& field, const DVariety& dv);

struct SharpBoundRow {
  long h;
  Integer sharp;
  Integer bound;
  bool ok;
};

struct SharpBoundReport {
  int mu = 1;
  LeaderSet v_leaders;
  LeaderSet sharp_leaders;
  NumericalPolynomial omega_v;
  NumericalPolynomial omega_sharp;
  std::pair<int, Integer> type_v;
  std::pair<int, Integer> type_sharp;
  std::vector<SharpBoundRow> rows;
  bool pass = true;
};

/// omega_sharp(h) <= omega_V(mu h) for h = 0..max_h by enumeration, and
/// equality of the Delta-type of V with the Pi-type of the sharp set.
SharpBoundReport sharp_bound_check(const FieldDescriptor& field, const DVariety& dv, long max_h);

}  // namespace reldiff
