#include "reldiff/poly.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace reldiff {

int total_order(const MultiIndex& e)
{
  int s = 0;
  for (auto x : e)
    s += x;
  return s;
}

bool dominates(const MultiIndex& big, const MultiIndex& small)
{
  for (std::size_t i = 0; i < kMaxDerivations; ++i)
    if (big[i] < small[i])
      return false;
  return true;
}

Var Var::derived(std::size_t derivation, int times) const
{
  if (derivation >= kMaxDerivations)
    throw std::out_of_range("derivation index out of range");
  Var v = *this;
  v.orders[derivation] = static_cast<std::uint16_t>(v.orders[derivation] + times);
  return v;
}

std::strong_ordering rank_compare(const Var& a, const Var& b)
{
  if (a.kind != b.kind)
    return a.kind <=> b.kind;
  if (a.is_generator())
    return b.index <=> a.index;
  if (auto c = a.order() <=> b.order(); c != 0)
    return c;
  for (std::size_t i = kMaxDerivations; i-- > 0;)
    if (auto c = a.orders[i] <=> b.orders[i]; c != 0)
      return c;
  return a.index <=> b.index;
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(Var v, std::uint32_t e)
{
  if (e > 0)
    factors_.push_back({v, e});
}

std::uint32_t Monomial::degree(const Var& v) const
{
  for (const auto& f : factors_)
    if (f.var == v)
      return f.exp;
  return 0;
}

std::uint32_t Monomial::total_degree() const
{
  std::uint32_t d = 0;
  for (const auto& f : factors_)
    d += f.exp;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const
{
  Monomial r;
  r.factors_.reserve(factors_.size() + o.factors_.size());
  std::size_t i = 0, j = 0;
  while (i < factors_.size() && j < o.factors_.size()) {
    auto c = rank_compare(factors_[i].var, o.factors_[j].var);
    if (c > 0)
      r.factors_.push_back(factors_[i++]);
    else if (c < 0)
      r.factors_.push_back(o.factors_[j++]);
    else {
      r.factors_.push_back({factors_[i].var, factors_[i].exp + o.factors_[j].exp});
      ++i;
      ++j;
    }
  }
  for (; i < factors_.size(); ++i)
    r.factors_.push_back(factors_[i]);
  for (; j < o.factors_.size(); ++j)
    r.factors_.push_back(o.factors_[j]);
  return r;
}

bool Monomial::divisible_by(const Monomial& d) const
{
  std::size_t i = 0;
  for (const auto& f : d.factors_) {
    while (i < factors_.size() && rank_compare(factors_[i].var, f.var) > 0)
      ++i;
    if (i == factors_.size() || !(factors_[i].var == f.var) || factors_[i].exp < f.exp)
      return false;
    ++i;
  }
  return true;
}

std::optional<Monomial> Monomial::divide(const Monomial& d) const
{
  if (!divisible_by(d))
    return std::nullopt;
  Monomial r;
  std::size_t j = 0;
  for (const auto& f : factors_) {
    if (j < d.factors_.size() && d.factors_[j].var == f.var) {
      if (f.exp > d.factors_[j].exp)
        r.factors_.push_back({f.var, f.exp - d.factors_[j].exp});
      ++j;
    } else {
      r.factors_.push_back(f);
    }
  }
  return r;
}

Monomial Monomial::without(const Var& v) const
{
  Monomial r;
  for (const auto& f : factors_)
    if (!(f.var == v))
      r.factors_.push_back(f);
  return r;
}

int compare(const Monomial& a, const Monomial& b)
{
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  for (; i < fa.size() && i < fb.size(); ++i) {
    auto c = rank_compare(fa[i].var, fb[i].var);
    if (c != 0)
      return c > 0 ? 1 : -1;
    if (fa[i].exp != fb[i].exp)
      return fa[i].exp > fb[i].exp ? 1 : -1;
  }
  if (i < fa.size())
    return 1;
  if (i < fb.size())
    return -1;
  return 0;
}

// -------------------------------------------------------------------- Poly

Poly::Poly(long c)
{
  if (c != 0)
    terms_.emplace(Monomial{}, Rational(c));
}

Poly::Poly(const Rational& c)
{
  if (c != 0)
    terms_.emplace(Monomial{}, c);
}

Poly Poly::variable(const Var& v, std::uint32_t e)
{
  return term(Rational(1), Monomial(v, e));
}

Poly Poly::term(const Rational& c, Monomial m)
{
  Poly p;
  if (c != 0)
    p.terms_.emplace(std::move(m), c);
  return p;
}

bool Poly::is_constant() const
{
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

bool Poly::is_one() const
{
  return terms_.size() == 1 && terms_.begin()->first.is_one() && terms_.begin()->second == 1;
}

Rational Poly::constant_value() const
{
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

const Monomial& Poly::leading_monomial() const
{
  if (terms_.empty())
    throw std::logic_error("leading monomial of zero polynomial");
  return terms_.begin()->first;
}

const Rational& Poly::leading_coefficient() const
{
  if (terms_.empty())
    throw std::logic_error("leading coefficient of zero polynomial");
  return terms_.begin()->second;
}

std::optional<Var> Poly::top_variable() const
{
  if (terms_.empty() || terms_.begin()->first.is_one())
    return std::nullopt;
  return terms_.begin()->first.factors().front().var;
}

std::uint32_t Poly::degree(const Var& v) const
{
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_)
    d = std::max(d, m.degree(v));
  return d;
}

Poly Poly::coefficient(const Var& v, std::uint32_t k) const
{
  Poly r;
  for (const auto& [m, c] : terms_)
    if (m.degree(v) == k)
      r.add_term(m.without(v), c);
  return r;
}

bool Poly::contains(const Var& v) const
{
  for (const auto& [m, c] : terms_)
    if (m.degree(v) > 0)
      return true;
  return false;
}

std::vector<Var> Poly::variables() const
{
  std::vector<Var> out;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors())
      if (std::find(out.begin(), out.end(), f.var) == out.end())
        out.push_back(f.var);
  std::sort(out.begin(), out.end(), VarGreater{});
  return out;
}

bool Poly::has_indeterminates() const
{
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors())
      if (f.var.is_indeterminate())
        return true;
  return false;
}

Poly Poly::partial(const Var& v) const
{
  Poly r;
  for (const auto& [m, c] : terms_) {
    auto e = m.degree(v);
    if (e == 0)
      continue;
    Monomial rest = m.without(v) * Monomial(v, e - 1);
    r.add_term(rest, c * e);
  }
  return r;
}

Poly Poly::pow(unsigned e) const
{
  Poly result(1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1u)
      result *= base;
    e >>= 1u;
    if (e > 0)
      base *= base;
  }
  return result;
}

void Poly::add_term(const Monomial& m, const Rational& c)
{
  if (c == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0)
      terms_.erase(it);
  }
}

Poly Poly::operator-() const
{
  Poly r = *this;
  for (auto& [m, c] : r.terms_)
    c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o)
{
  for (const auto& [m, c] : o.terms_)
    add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
  for (const auto& [m, c] : o.terms_)
    add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b)
{
  Poly r;
  if (a.is_zero() || b.is_zero())
    return r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_)
      r.add_term(ma * mb, ca * cb);
  return r;
}

Poly& Poly::operator*=(const Poly& o)
{
  *this = *this * o;
  return *this;
}

Poly& Poly::operator*=(const Rational& c)
{
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_)
    v *= c;
  return *this;
}

void Poly::add_scaled(const Poly& b, const Rational& c, const Monomial& m)
{
  if (c == 0)
    return;
  for (const auto& [mb, cb] : b.terms_)
    add_term(mb * m, cb * c);
}

bool Poly::operator==(const Poly& o) const
{
  if (terms_.size() != o.terms_.size())
    return false;
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  for (; i != terms_.end(); ++i, ++j)
    if (!(i->first == j->first) || i->second != j->second)
      return false;
  return true;
}

// ------------------------------------------------------- division and gcd

std::optional<Poly> divide_exact(const Poly& a, const Poly& b)
{
  if (b.is_zero())
    throw std::domain_error("division by zero polynomial");
  Poly q;
  Poly r = a;
  const Monomial& lb = b.leading_monomial();
  const Rational& cb = b.leading_coefficient();
  while (!r.is_zero()) {
    auto m = r.leading_monomial().divide(lb);
    if (!m)
      return std::nullopt;
    Rational c = r.leading_coefficient() / cb;
    q += Poly::term(c, *m);
    r.add_scaled(b, -c, *m);
  }
  return q;
}

Poly pseudo_remainder(const Poly& a, const Poly& b, const Var& v)
{
  const std::uint32_t d = b.degree(v);
  const Poly lcb = b.coefficient(v, d);
  Poly r = a;
  std::uint32_t e;
  while (!r.is_zero() && (e = r.degree(v)) >= d) {
    Poly lcr = r.coefficient(v, e);
    r = lcb * r - lcr * Poly::variable(v, e - d) * b;
  }
  return r;
}

Poly make_monic(const Poly& p)
{
  if (p.is_zero())
    return p;
  Rational inv = 1 / p.leading_coefficient();
  return p * inv;
}

namespace {

// Univariate images modulo a prime, dense by degree.
constexpr std::uint64_t kPrime = 2147483647;
using Dense = std::vector<std::uint64_t>;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b)
{
  return a * b % kPrime;
}

std::uint64_t inv_mod(std::uint64_t a)
{
  std::uint64_t r = 1, e = kPrime - 2;
  for (; e; e >>= 1, a = mul_mod(a, a))
    if (e & 1)
      r = mul_mod(r, a);
  return r;
}

std::optional<std::uint64_t> reduce_mod(const Rational& c)
{
  const std::uint64_t d = mpz_fdiv_ui(c.get_den_mpz_t(), kPrime);
  if (d == 0)
    return std::nullopt;
  return mul_mod(mpz_fdiv_ui(c.get_num_mpz_t(), kPrime), inv_mod(d));
}

void trim(Dense& p)
{
  while (!p.empty() && p.back() == 0)
    p.pop_back();
}

std::optional<Dense> image(const Poly& p, const Var& v, const std::vector<std::pair<Var, std::uint64_t>>& at)
{
  Dense out(p.degree(v) + 1, 0);
  for (const auto& [m, c] : p.terms()) {
    auto t = reduce_mod(c);
    if (!t)
      return std::nullopt;
    std::uint32_t e = 0;
    for (const auto& f : m.factors()) {
      if (f.var == v) {
        e = f.exp;
        continue;
      }
      for (const auto& [w, x] : at)
        if (w == f.var) {
          for (std::uint32_t k = 0; k < f.exp; ++k)
            *t = mul_mod(*t, x);
          break;
        }
    }
    out[e] = (out[e] + *t) % kPrime;
  }
  trim(out);
  return out;
}

std::size_t gcd_degree(Dense a, Dense b)
{
  while (!b.empty()) {
    const std::uint64_t lb = inv_mod(b.back());
    while (a.size() >= b.size()) {
      const std::uint64_t q = mul_mod(a.back(), lb);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k)
        a[k + shift] = (a[k + shift] + kPrime - mul_mod(q, b[k])) % kPrime;
      trim(a);
      if (a.empty())
        break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// True when a modular evaluation image proves gcd(a, b) has degree 0 in v.
bool coprime_in(const Poly& a, const Poly& b, const Var& v, const std::vector<Var>& vars)
{
  std::minstd_rand rng(static_cast<unsigned>(a.size() * 131 + b.size()));
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<std::pair<Var, std::uint64_t>> at;
    for (const auto& w : vars)
      if (!(w == v))
        at.emplace_back(w, rng() % kPrime);
    auto ia = image(a, v, at);
    auto ib = image(b, v, at);
    if (!ia || !ib || ia->size() != a.degree(v) + 1 || ib->size() != b.degree(v) + 1)
      continue;
    return gcd_degree(std::move(*ia), std::move(*ib)) == 0;
  }
  return false;
}

// Heuristic gcd over Z: evaluate one variable at a large integer, recurse,
// rebuild from the xi-adic digits and confirm by trial division.

mpz_class integer_content(const Poly& p)
{
  mpz_class g = 0;
  for (const auto& [m, c] : p.terms())
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
  return g;
}

mpz_class max_norm(const Poly& p)
{
  mpz_class n = 0;
  for (const auto& [m, c] : p.terms())
    if (abs(c.get_num()) > n)
      n = abs(c.get_num());
  return n;
}

Poly evaluate_at(const Poly& p, const Var& v, const mpz_class& x)
{
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    Monomial rest;
    mpz_class k = 1;
    for (const auto& f : m.factors()) {
      if (f.var == v)
        mpz_pow_ui(k.get_mpz_t(), x.get_mpz_t(), f.exp);
      else
        rest = rest * Monomial(f.var, f.exp);
    }
    out += Poly::term(c * Rational(k), rest);
  }
  return out;
}

// Symmetric xi-adic expansion of the integer coefficients of h in v.
Poly interpolate(Poly h, const Var& v, const mpz_class& xi)
{
  Poly out;
  const mpz_class half = xi / 2;
  for (std::uint32_t e = 0; !h.is_zero(); ++e) {
    Poly digit;
    for (const auto& [m, c] : h.terms()) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), c.get_num_mpz_t(), xi.get_mpz_t());
      if (r > half)
        r -= xi;
      if (r != 0)
        digit += Poly::term(Rational(r), m);
    }
    if (!digit.is_zero())
      out += digit * Poly::variable(v, e);
    h -= digit;
    h *= Rational(1) / Rational(xi);
  }
  return out;
}

// Inputs have integer coefficients; the result is primitive with a
// positive leading coefficient.
std::optional<Poly> heuristic_gcd(const Poly& f, const Poly& g, std::vector<Var> vars)
{
  if (vars.empty()) {
    mpz_class r, cf = integer_content(f), cg = integer_content(g);
    mpz_gcd(r.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
    return Poly(Rational(r));
  }
  const Var v = vars.back();
  vars.pop_back();
  const mpz_class cf = integer_content(f), cg = integer_content(g);
  mpz_class c;
  mpz_gcd(c.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  const Poly pf = f * (Rational(1) / Rational(cf));
  const Poly pg = g * (Rational(1) / Rational(cg));
  const mpz_class nf = max_norm(pf), ng = max_norm(pg);
  const mpz_class b = 2 * std::min(nf, ng) + 29;
  mpz_class xi = b;
  for (int attempt = 0; attempt < 6; ++attempt) {
    Poly ef = evaluate_at(pf, v, xi), eg = evaluate_at(pg, v, xi);
    if (!ef.is_zero() && !eg.is_zero()) {
      auto h = heuristic_gcd(ef, eg, vars);
      if (!h)
        return std::nullopt;
      Poly cand = interpolate(*h, v, xi);
      if (!cand.is_zero()) {
        cand *= Rational(1) / Rational(integer_content(cand));
        if (cand.leading_coefficient() < 0)
          cand = -cand;
        if (divide_exact(pf, cand) && divide_exact(pg, cand))
          return cand * Rational(c);
      }
    }
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), xi.get_mpz_t());
    mpz_sqrt(s.get_mpz_t(), s.get_mpz_t());
    xi = xi * 73794 * s / 27011;
  }
  return std::nullopt;
}

Poly integral(const Poly& p)
{
  mpz_class l = 1;
  for (const auto& [m, c] : p.terms())
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return p * Rational(l);
}

Poly monomial_gcd(const Monomial& m, const Poly& p)
{
  Monomial g;
  for (const auto& f : m.factors()) {
    std::uint32_t e = f.exp;
    for (const auto& [pm, c] : p.terms()) {
      e = std::min(e, pm.degree(f.var));
      if (e == 0)
        break;
    }
    if (e > 0)
      g = g * Monomial(f.var, e);
  }
  return Poly::term(Rational(1), g);
}

Poly primitive_part(const Poly& p, const Var& v)
{
  Poly c = content(p, v);
  auto q = divide_exact(p, c);
  return make_monic(*q);
}

// Both inputs primitive with respect to v and of positive degree in v.
Poly primitive_prs(Poly a, Poly b, const Var& v)
{
  if (a.degree(v) < b.degree(v))
    std::swap(a, b);
  for (;;) {
    Poly r = pseudo_remainder(a, b, v);
    if (r.is_zero())
      return make_monic(b);
    if (r.degree(v) == 0)
      return Poly(1);
    a = std::move(b);
    b = primitive_part(r, v);
  }
}

}  // namespace

Poly content(const Poly& p, const Var& v)
{
  const std::uint32_t d = p.degree(v);
  Poly g;
  for (std::uint32_t k = 0; k <= d; ++k) {
    Poly c = p.coefficient(v, k);
    if (c.is_zero())
      continue;
    g = gcd(g, c);
    if (g.is_one())
      break;
  }
  return g;
}

Poly gcd(const Poly& a, const Poly& b)
{
  if (a.is_zero())
    return make_monic(b);
  if (b.is_zero())
    return make_monic(a);
  if (a.is_constant() || b.is_constant())
    return Poly(1);
  if (a.is_monomial())
    return monomial_gcd(a.leading_monomial(), b);
  if (b.is_monomial())
    return monomial_gcd(b.leading_monomial(), a);
  if (a.size() <= b.size()) {
    if (divide_exact(b, a))
      return make_monic(a);
  } else if (divide_exact(a, b)) {
    return make_monic(b);
  }

  std::vector<Var> va_all = a.variables(), vb_all = b.variables(), common;
  for (const auto& v : va_all)
    if (std::find(vb_all.begin(), vb_all.end(), v) != vb_all.end())
      common.push_back(v);
  if (common.empty())
    return Poly(1);
  std::vector<Var> all = va_all;
  for (const auto& v : vb_all)
    if (std::find(all.begin(), all.end(), v) == all.end())
      all.push_back(v);
  if (std::all_of(common.begin(), common.end(), [&](const Var& v) { return coprime_in(a, b, v, all); }))
    return Poly(1);

  if (auto h = heuristic_gcd(integral(a), integral(b), common))
    return make_monic(*h);

  Var va = *a.top_variable();
  Var vb = *b.top_variable();
  Var v = rank_compare(va, vb) >= 0 ? va : vb;
  const bool in_a = a.contains(v);
  const bool in_b = b.contains(v);
  if (!in_a || !in_b) {
    const Poly& with = in_a ? a : b;
    Poly g = in_a ? b : a;
    for (std::uint32_t k = 0, d = with.degree(v); k <= d; ++k) {
      Poly c = with.coefficient(v, k);
      if (c.is_zero())
        continue;
      g = gcd(g, c);
      if (g.is_one())
        break;
    }
    return make_monic(g);
  }
  Poly ca = content(a, v);
  Poly cb = content(b, v);
  Poly pa = *divide_exact(a, ca);
  Poly pb = *divide_exact(b, cb);
  Poly g = gcd(ca, cb) * primitive_prs(std::move(pa), std::move(pb), v);
  return make_monic(g);
}

}  // namespace reldiff
