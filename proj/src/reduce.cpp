#include "reldiff/reduce.hpp"

#include <algorithm>
#include <stdexcept>

#include "reldiff/error.hpp"

namespace reldiff {

bool is_proper_derivative(const Var& v, const Var& u, DerivationMask mask)
{
  if (!v.is_indeterminate() || !u.is_indeterminate() || v.index != u.index || v == u)
    return false;
  for (std::size_t d = 0; d < kMaxDerivations; ++d) {
    if (v.orders[d] < u.orders[d])
      return false;
    if (v.orders[d] > u.orders[d] && !(mask & (1u << d)))
      return false;
  }
  return true;
}

namespace {

std::optional<Var> offending_against(const Poly& p, const LeaderData& l, DerivationMask mask)
{
  for (const auto& v : p.variables()) {
    if (!v.is_indeterminate())
      break;  // generators rank below every derivative variable
    if (is_proper_derivative(v, l.leader, mask))
      return v;
    if (v == l.leader && p.degree(v) >= l.degree)
      return v;
  }
  return std::nullopt;
}

MultiIndex difference(const MultiIndex& big, const MultiIndex& small)
{
  MultiIndex out{};
  for (std::size_t d = 0; d < kMaxDerivations; ++d)
    out[d] = static_cast<std::uint16_t>(big[d] - small[d]);
  return out;
}

}  // namespace

std::optional<AutoreducedWitness> check_autoreduced(const std::vector<Poly>& elements, DerivationMask mask)
{
  std::vector<LeaderData> ls;
  ls.reserve(elements.size());
  for (const auto& e : elements)
    ls.push_back(leader_initial_separant(e));
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = 0; j < elements.size(); ++j) {
      if (i == j)
        continue;
      if (auto v = offending_against(elements[j], ls[i], mask))
        return AutoreducedWitness{i, j, *v};
    }
  return std::nullopt;
}

AutoreducedSet::AutoreducedSet(std::vector<RatFun> elements, DerivationMask mask, bool prime)
    : mask_(mask), prime_(prime)
{
  std::vector<Poly> polys;
  for (auto& e : elements) {
    if (e.is_zero())
      continue;
    polys.push_back(e.num());
  }
  for (const auto& p : polys)
    if (!leader(p))
      throw Error(ErrorCode::ConstantPolynomial, "characteristic set element has no derivative variable");
  std::stable_sort(polys.begin(), polys.end(), [](const Poly& a, const Poly& b) {
    return rank_compare(*leader(a), *leader(b)) < 0;
  });
  if (auto w = check_autoreduced(polys, mask))
    throw Error(ErrorCode::NotAutoreduced, "element " + std::to_string(w->reduced + 1) +
                                               " is not reduced with respect to element " +
                                               std::to_string(w->reducer + 1));
  elements_ = std::move(polys);
  for (const auto& p : elements_)
    leaders_.push_back(leader_initial_separant(p));
}

AutoreducedSet AutoreducedSet::with_mask(DerivationMask mask) const
{
  std::vector<RatFun> es(elements_.begin(), elements_.end());
  return AutoreducedSet(std::move(es), mask, prime_);
}

Poly ReductionCertificate::multiplier(const AutoreducedSet& a) const
{
  Poly h = unit;
  for (std::size_t k = 0; k < exponents.size(); ++k) {
    if (exponents[k].first)
      h *= a.leaders()[k].initial.pow(exponents[k].first);
    if (exponents[k].second)
      h *= a.leaders()[k].separant.pow(exponents[k].second);
  }
  return h;
}

ReductionCertificate ritt_reduce(const FieldDescriptor& field, const Poly& f, const AutoreducedSet& a)
{
  ReductionCertificate cert;
  cert.input = f;
  cert.elements = a.elements();
  cert.exponents.assign(a.size(), {0, 0});
  Poly r = f;

  auto scale_all = [&](const Poly& m, unsigned s) {
    if (s == 0 || m.is_one())
      return;
    Poly ms = m.pow(s);
    for (auto& [key, c] : cert.combination)
      c *= ms;
  };
  auto add_cofactor = [&](std::size_t k, const MultiIndex& theta, const Poly& q) {
    auto& slot = cert.combination[{k, theta}];
    slot += q;
    if (slot.is_zero())
      cert.combination.erase({k, theta});
  };

  for (;;) {
    std::optional<Var> v;
    std::size_t k = 0;
    bool proper = false;
    for (const auto& w : r.variables()) {
      if (!w.is_indeterminate())
        break;
      for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& l = a.leaders()[i];
        if (is_proper_derivative(w, l.leader, a.mask())) {
          v = w, k = i, proper = true;
          break;
        }
        if (w == l.leader && r.degree(w) >= l.degree) {
          v = w, k = i, proper = false;
          break;
        }
      }
      if (v)
        break;
    }
    if (!v)
      break;

    const auto& l = a.leaders()[k];
    Poly q;
    unsigned steps = 0;
    if (proper) {
      MultiIndex theta = difference(v->orders, l.leader.orders);
      RatFun t = apply_theta(field, theta, RatFun(a.elements()[k]));
      const Poly& b = t.num();
      if (b.degree(*v) != 1)
        throw std::logic_error("derivative of a characteristic set element is not linear in its leader");
      Poly lc = b.coefficient(*v, 1);
      auto u = divide_exact(lc, l.separant);
      if (!u || u->has_indeterminates())
        throw std::logic_error("unexpected leading coefficient of a derived element");
      while (r.degree(*v) >= 1) {
        std::uint32_t e = r.degree(*v);
        Poly c = r.coefficient(*v, e);
        Poly shift = c * Poly::variable(*v, e - 1);
        r = lc * r - shift * b;
        q = lc * q + shift;
        ++steps;
      }
      scale_all(lc, steps);
      add_cofactor(k, theta, q * t.den());
      cert.exponents[k].second += steps;
      if (!u->is_one())
        cert.unit *= u->pow(steps);
    } else {
      const Poly& ak = a.elements()[k];
      while (r.degree(*v) >= l.degree) {
        std::uint32_t e = r.degree(*v);
        Poly c = r.coefficient(*v, e);
        Poly shift = e > l.degree ? c * Poly::variable(*v, e - l.degree) : c;
        r = l.initial * r - shift * ak;
        q = l.initial * q + shift;
        ++steps;
      }
      scale_all(l.initial, steps);
      add_cofactor(k, MultiIndex{}, q);
      cert.exponents[k].first += steps;
    }
  }
  cert.remainder = std::move(r);
  if (!verify_certificate(field, a, cert))
    throw std::logic_error("reduction certificate failed to verify");
  return cert;
}

bool verify_certificate(const FieldDescriptor& field, const AutoreducedSet& a, const ReductionCertificate& c)
{
  if (c.exponents.size() != a.size())
    return false;
  RatFun lhs(c.multiplier(a) * c.input);
  RatFun rhs(c.remainder);
  for (const auto& [key, cof] : c.combination) {
    RatFun t = apply_theta(field, key.second, RatFun(a.elements().at(key.first)));
    rhs += RatFun(cof) * t;
  }
  return (lhs - rhs).is_zero();
}

bool is_reduced(const Poly& r, const AutoreducedSet& a)
{
  for (const auto& l : a.leaders())
    if (offending_against(r, l, a.mask()))
      return false;
  return true;
}

const char* membership_name(Membership m)
{
  switch (m) {
  case Membership::InIdeal: return "InIdeal";
  case Membership::NotInIdeal: return "NotInIdeal";
  case Membership::Unknown: return "Unknown";
  }
  return "?";
}

MembershipResult membership_verdict(const FieldDescriptor& field, const RatFun& f, const AutoreducedSet& a)
{
  MembershipResult out{Membership::Unknown, ritt_reduce(field, f.num(), a)};
  if (out.certificate.remainder.is_zero())
    out.verdict = Membership::InIdeal;
  else if (a.prime() || a.empty())
    out.verdict = Membership::NotInIdeal;
  return out;
}

}  // namespace reldiff
