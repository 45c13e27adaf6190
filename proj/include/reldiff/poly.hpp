#pragma once

// Sparse multivariate polynomials over Q.
//
// Two kinds of variables share one polynomial ring: generators of the
// coefficient field (t, w, E, ...) and derivative variables theta*x_i of the
// differential indeterminates. Keeping both in the same ring lets field
// elements, differential polynomials and differential rational functions use
// a single exact arithmetic and a single gcd.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace reldiff {

using Rational = mpq_class;
using Integer = mpz_class;

inline constexpr std::size_t kMaxDerivations = 6;

/// Exponent vector of a derivative operator theta = d_1^{e_1} ... d_m^{e_m},
/// indexed by declaration order of the derivations.
using MultiIndex = std::array<std::uint16_t, kMaxDerivations>;

int total_order(const MultiIndex& e);
bool dominates(const MultiIndex& big, const MultiIndex& small);

struct Var {
  enum class Kind : std::uint8_t { Generator = 0, Indeterminate = 1 };

  Kind kind = Kind::Generator;
  std::uint32_t index = 0;
  MultiIndex orders{};

  static Var generator(std::uint32_t i) { return Var{Kind::Generator, i, {}}; }
  static Var indeterminate(std::uint32_t i, const MultiIndex& e = {})
  {
    return Var{Kind::Indeterminate, i, e};
  }

  bool is_generator() const { return kind == Kind::Generator; }
  bool is_indeterminate() const { return kind == Kind::Indeterminate; }
  int order() const { return total_order(orders); }
  Var derived(std::size_t derivation, int times = 1) const;

  bool operator==(const Var&) const = default;
};

/// The orderly ranking used everywhere: generators sit below every
/// derivative variable (earlier-declared generators rank higher); derivative
/// variables compare by total order, then reverse-lexicographically on the
/// multi-index (last derivation first), then by indeterminate index.
std::strong_ordering rank_compare(const Var& a, const Var& b);

struct VarGreater {
  bool operator()(const Var& a, const Var& b) const { return rank_compare(a, b) > 0; }
};

struct Factor {
  Var var;
  std::uint32_t exp = 0;
  bool operator==(const Factor&) const = default;
};

/// Product of powers of variables, stored with the highest-ranked variable
/// first. The empty monomial is 1.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(Var v, std::uint32_t e = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  std::uint32_t degree(const Var& v) const;
  std::uint32_t total_degree() const;

  Monomial operator*(const Monomial& other) const;
  /// nullopt unless `divisor` divides this monomial.
  std::optional<Monomial> divide(const Monomial& divisor) const;
  bool divisible_by(const Monomial& divisor) const;
  Monomial without(const Var& v) const;

  bool operator==(const Monomial&) const = default;

private:
  std::vector<Factor> factors_;
};

/// Lexicographic order induced by the ranking.
int compare(const Monomial& a, const Monomial& b);

struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
};

class Poly {
public:
  using Terms = std::map<Monomial, Rational, MonomialGreater>;

  Poly() = default;
  Poly(long c);
  Poly(const Rational& c);
  static Poly variable(const Var& v, std::uint32_t e = 1);
  static Poly term(const Rational& c, Monomial m);

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  bool is_monomial() const { return terms_.size() == 1; }
  /// Constant term value; only meaningful when is_constant().
  Rational constant_value() const;

  const Monomial& leading_monomial() const;
  const Rational& leading_coefficient() const;
  /// Highest-ranked variable occurring; nullopt for constants.
  std::optional<Var> top_variable() const;

  std::uint32_t degree(const Var& v) const;
  /// Coefficient of v^k, as a polynomial free of v.
  Poly coefficient(const Var& v, std::uint32_t k) const;
  bool contains(const Var& v) const;
  /// All variables occurring, highest-ranked first.
  std::vector<Var> variables() const;
  bool has_indeterminates() const;

  Poly partial(const Var& v) const;
  Poly pow(unsigned e) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }

  /// this += c * m * b, in place.
  void add_scaled(const Poly& b, const Rational& c, const Monomial& m);

  bool operator==(const Poly& o) const;

private:
  void add_term(const Monomial& m, const Rational& c);
  Terms terms_;
};

/// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);
/// Remainder of lc_v(b)^k * a modulo b with respect to v, for some k.
Poly pseudo_remainder(const Poly& a, const Poly& b, const Var& v);
/// Scales so the leading coefficient is 1. Zero stays zero.
Poly make_monic(const Poly& p);
/// Monic greatest common divisor over Q. gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
/// Monic gcd of the coefficients of p viewed as a polynomial in v.
Poly content(const Poly& p, const Var& v);

}  // namespace reldiff
