#include "reldiff/diffpoly.hpp"

#include <algorithm>

#include "reldiff/error.hpp"

namespace reldiff {

// -------------------------------------------------------------------- Ring

Ring::Ring(std::shared_ptr<const FieldDescriptor> field, std::vector<std::string> indeterminates)
    : field_(std::move(field))
{
  for (auto& n : indeterminates)
    ensure_indeterminate(n);
}

std::optional<std::uint32_t> Ring::find_indeterminate(std::string_view name) const
{
  for (std::size_t i = 0; i < indeterminates_.size(); ++i)
    if (indeterminates_[i] == name)
      return static_cast<std::uint32_t>(i);
  return std::nullopt;
}

std::uint32_t Ring::indeterminate(std::string_view name) const
{
  if (auto i = find_indeterminate(name))
    return *i;
  throw Error(ErrorCode::UndefinedSymbol, "unknown indeterminate '" + std::string(name) + "'");
}

std::uint32_t Ring::ensure_indeterminate(const std::string& name)
{
  if (auto i = find_indeterminate(name))
    return *i;
  if (!is_identifier(name) || name == "d")
    throw Error(ErrorCode::Semantic, "invalid indeterminate name '" + name + "'");
  if (field_->find_generator(name) || field_->find_derivation(name))
    throw Error(ErrorCode::Semantic, "indeterminate '" + name + "' clashes with a field symbol");
  indeterminates_.push_back(name);
  return static_cast<std::uint32_t>(indeterminates_.size() - 1);
}

RatFun Ring::symbol(std::string_view name) const
{
  return RatFun::variable(var(name));
}

RatFun Ring::parse(std::string_view text, ParseOptions opts) const
{
  const FieldDescriptor& f = *field_;
  Deriver d = [&f](std::size_t i, const RatFun& r) { return reldiff::derive(f, i, r); };
  return parse_expression(text, names(), d, opts);
}

// -------------------------------------------------------------- derivation

namespace {

bool frozen_index(const std::vector<std::uint32_t>& frozen, std::uint32_t i)
{
  return std::find(frozen.begin(), frozen.end(), i) != frozen.end();
}

RatFun derive_poly(const FieldDescriptor& field, std::size_t d, const Poly& p,
                   const std::vector<std::uint32_t>* frozen, bool all_frozen)
{
  Poly ind;
  if (!all_frozen) {
    for (const auto& [m, c] : p.terms()) {
      for (const auto& f : m.factors()) {
        if (!f.var.is_indeterminate())
          continue;
        if (frozen && frozen_index(*frozen, f.var.index))
          continue;
        Monomial rest = *m.divide(Monomial(f.var)) * Monomial(f.var.derived(d));
        ind += Poly::term(c * f.exp, std::move(rest));
      }
    }
  }
  RatFun gen = derive_generator_part(field, d, p);
  if (gen.is_zero())
    return RatFun(std::move(ind));
  return RatFun(std::move(ind)) + gen;
}

RatFun derive_impl(const FieldDescriptor& field, std::size_t d, const RatFun& f,
                   const std::vector<std::uint32_t>* frozen, bool all_frozen)
{
  if (d >= field.derivation_count())
    throw Error(ErrorCode::UndefinedSymbol, "unknown derivation index " + std::to_string(d));
  RatFun dn = derive_poly(field, d, f.num(), frozen, all_frozen);
  if (f.den().is_one())
    return dn;
  RatFun dd = derive_poly(field, d, f.den(), frozen, all_frozen);
  if (dd.is_zero())
    return dn / RatFun(f.den());
  RatFun den(f.den());
  return (dn * den - RatFun(f.num()) * dd) / (den * den);
}

}  // namespace

RatFun derive(const FieldDescriptor& field, std::size_t d, const RatFun& f)
{
  return derive_impl(field, d, f, nullptr, false);
}

RatFun derive_holding(const FieldDescriptor& field, std::size_t d, const RatFun& f,
                      const std::vector<std::uint32_t>& frozen)
{
  return derive_impl(field, d, f, &frozen, false);
}

RatFun derive_coefficients(const FieldDescriptor& field, std::size_t d, const RatFun& f)
{
  return derive_impl(field, d, f, nullptr, true);
}

RatFun apply_theta(const FieldDescriptor& field, const MultiIndex& theta, const RatFun& f)
{
  RatFun r = f;
  for (std::size_t d = 0; d < kMaxDerivations; ++d)
    for (int k = 0; k < theta[d]; ++k)
      r = derive(field, d, r);
  return r;
}

Poly partial(const Poly& f, const Var& v)
{
  return f.partial(v);
}

RatFun partial(const RatFun& f, const Var& v)
{
  return f.partial(v);
}

// ------------------------------------------------------------ substitution

namespace {

struct VarLess {
  bool operator()(const Var& a, const Var& b) const { return rank_compare(a, b) < 0; }
};

class Substituter {
public:
  Substituter(const FieldDescriptor& field, const Substitution& sigma) : field_(field), sigma_(sigma) {}

  const RatFun* value(const Var& v)
  {
    if (!v.is_indeterminate())
      return nullptr;
    auto s = sigma_.find(v.index);
    if (s == sigma_.end())
      return nullptr;
    return &compute(v, s->second);
  }

  Poly numerator_of(const Poly& p, Poly& den_out)
  {
    // Common denominator: product over substituted vars of den^maxdeg.
    std::map<Var, std::uint32_t, VarLess> maxdeg;
    for (const auto& [m, c] : p.terms())
      for (const auto& f : m.factors())
        if (const RatFun* val = value(f.var); val && !val->den().is_one()) {
          auto& e = maxdeg[f.var];
          e = std::max(e, f.exp);
        }
    Poly den(1);
    for (const auto& [v, e] : maxdeg)
      den *= value(v)->den().pow(e);

    Poly num;
    for (const auto& [m, c] : p.terms()) {
      Poly t = Poly(c);
      Monomial kept;
      for (const auto& f : m.factors()) {
        const RatFun* val = value(f.var);
        if (!val) {
          kept = kept * Monomial(f.var, f.exp);
          continue;
        }
        t *= power(f.var, val->num(), f.exp);
        auto it = maxdeg.find(f.var);
        if (it != maxdeg.end() && it->second > f.exp)
          t *= val->den().pow(it->second - f.exp);
      }
      for (const auto& [v, e] : maxdeg)
        if (m.degree(v) == 0)
          t *= value(v)->den().pow(e);
      num.add_scaled(t, Rational(1), kept);
    }
    den_out = std::move(den);
    return num;
  }

private:
  const RatFun& compute(const Var& v, const RatFun& base)
  {
    auto it = cache_.find(v);
    if (it != cache_.end())
      return it->second;
    RatFun r;
    std::size_t d = kMaxDerivations;
    for (std::size_t i = 0; i < kMaxDerivations; ++i)
      if (v.orders[i] > 0) {
        d = i;
        break;
      }
    if (d == kMaxDerivations) {
      r = base;
    } else {
      Var lower = v;
      --lower.orders[d];
      r = derive(field_, d, compute(lower, base));
    }
    return cache_.emplace(v, std::move(r)).first->second;
  }

  Poly power(const Var& v, const Poly& p, std::uint32_t e)
  {
    if (e == 1)
      return p;
    auto key = std::make_pair(v, e);
    auto it = powers_.find(key);
    if (it != powers_.end())
      return it->second;
    return powers_.emplace(key, p.pow(e)).first->second;
  }

  struct PowLess {
    bool operator()(const std::pair<Var, std::uint32_t>& a, const std::pair<Var, std::uint32_t>& b) const
    {
      auto c = rank_compare(a.first, b.first);
      if (c != 0)
        return c < 0;
      return a.second < b.second;
    }
  };

  const FieldDescriptor& field_;
  const Substitution& sigma_;
  std::map<Var, RatFun, VarLess> cache_;
  std::map<std::pair<Var, std::uint32_t>, Poly, PowLess> powers_;
};

}  // namespace

RatFun substitute(const FieldDescriptor& field, const RatFun& f, const Substitution& sigma)
{
  if (sigma.empty())
    return f;
  Substituter s(field, sigma);
  Poly nd, dd;
  Poly n = s.numerator_of(f.num(), nd);
  if (f.den().is_one())
    return RatFun(std::move(n), std::move(nd));
  Poly d = s.numerator_of(f.den(), dd);
  if (d.is_zero())
    throw Error(ErrorCode::DivisionByZero, "denominator vanishes under substitution");
  // (n/nd) / (d/dd)
  return RatFun(n * dd, nd * d);
}

std::vector<RatFun> substitute(const FieldDescriptor& field, const std::vector<RatFun>& fs,
                               const Substitution& sigma)
{
  std::vector<RatFun> out;
  out.reserve(fs.size());
  for (const auto& f : fs)
    out.push_back(substitute(field, f, sigma));
  return out;
}

Substitution make_substitution(const std::vector<std::uint32_t>& coords, const std::vector<RatFun>& values)
{
  if (coords.size() != values.size())
    throw Error(ErrorCode::DimensionMismatch,
                "expected a tuple of length " + std::to_string(coords.size()) + ", got " +
                    std::to_string(values.size()));
  Substitution s;
  for (std::size_t i = 0; i < coords.size(); ++i)
    s[coords[i]] = values[i];
  return s;
}

// ----------------------------------------------------------------- ranking

std::strong_ordering rank_compare(const Var& u, const Var& v, Ranking)
{
  return rank_compare(u, v);
}

std::optional<Var> leader(const Poly& f)
{
  auto top = f.top_variable();
  if (!top || !top->is_indeterminate())
    return std::nullopt;
  return top;
}

LeaderData leader_initial_separant(const Poly& f, Ranking)
{
  auto u = leader(f);
  if (!u)
    throw Error(ErrorCode::ConstantPolynomial, "polynomial has no derivative variable");
  LeaderData out;
  out.leader = *u;
  out.degree = f.degree(*u);
  out.initial = f.coefficient(*u, out.degree);
  out.separant = f.partial(*u);
  return out;
}

int differential_order(const RatFun& f, DerivationMask mask)
{
  int best = 0;
  for (const auto& v : f.variables()) {
    if (!v.is_indeterminate())
      continue;
    int o = 0;
    for (std::size_t d = 0; d < kMaxDerivations; ++d)
      if (mask & (1u << d))
        o += v.orders[d];
    best = std::max(best, o);
  }
  return best;
}

bool uses_only(const RatFun& f, DerivationMask mask)
{
  for (const auto& v : f.variables()) {
    if (!v.is_indeterminate())
      continue;
    for (std::size_t d = 0; d < kMaxDerivations; ++d)
      if (v.orders[d] > 0 && !(mask & (1u << d)))
        return false;
  }
  return true;
}

}  // namespace reldiff
