#pragma once

#include "reldiff/poly.hpp"

namespace reldiff {

/// Reduced fraction of polynomials. Canonical form: gcd(num, den) = 1 and
/// den is monic (leading coefficient 1 in the ranking's lex order); zero is
/// 0/1. Two values are equal iff their canonical forms are identical.
///
/// One type serves three roles: field elements (only generator variables),
/// differential polynomials (denominator free of derivative variables) and
/// differential rational functions.
class RatFun {
public:
  RatFun() : den_(1) {}
  RatFun(long c) : num_(c), den_(1) {}
  RatFun(const Rational& c) : num_(c), den_(1) {}
  RatFun(Poly p) : num_(std::move(p)), den_(1) {}
  /// Throws Error(DivisionByZero) when den is zero.
  RatFun(Poly num, Poly den);

  static RatFun variable(const Var& v) { return RatFun(Poly::variable(v)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  /// True when the denominator involves generators only, i.e. the value is a
  /// differential polynomial over the coefficient field.
  bool is_diff_polynomial() const { return !den_.has_indeterminates(); }
  bool has_indeterminates() const { return num_.has_indeterminates() || den_.has_indeterminates(); }
  bool contains(const Var& v) const { return num_.contains(v) || den_.contains(v); }
  std::vector<Var> variables() const;

  RatFun inverse() const;
  RatFun pow(int e) const;
  RatFun partial(const Var& v) const;

  RatFun operator-() const;
  RatFun& operator+=(const RatFun& o);
  RatFun& operator-=(const RatFun& o);
  RatFun& operator*=(const RatFun& o);
  RatFun& operator/=(const RatFun& o);
  friend RatFun operator+(RatFun a, const RatFun& b) { return a += b; }
  friend RatFun operator-(RatFun a, const RatFun& b) { return a -= b; }
  friend RatFun operator*(RatFun a, const RatFun& b) { return a *= b; }
  friend RatFun operator/(RatFun a, const RatFun& b) { return a /= b; }

  bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }

private:
  struct Reduced {};
  RatFun(Poly num, Poly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  Poly num_;
  Poly den_;
};

}  // namespace reldiff
