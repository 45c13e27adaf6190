#include "reldiff/kolchin.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "reldiff/error.hpp"

namespace reldiff {

Integer binomial(const Integer& n, unsigned k)
{
  Integer num = 1, den = 1;
  for (unsigned i = 0; i < k; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return num / den;
}

NumericalPolynomial::NumericalPolynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs))
{
  while (!coeffs_.empty() && coeffs_.back() == 0)
    coeffs_.pop_back();
}

Integer NumericalPolynomial::operator()(long h) const
{
  Integer v = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    v += coeffs_[i] * binomial(Integer(h) + static_cast<long>(i), static_cast<unsigned>(i));
  return v;
}

std::string NumericalPolynomial::str() const
{
  if (coeffs_.empty())
    return "0";
  std::ostringstream os;
  for (int i = degree(); i >= 0; --i) {
    const Integer& c = coeffs_[i];
    if (i == degree())
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    Integer a = abs(c);
    if (i == 0)
      os << a.get_str();
    else
      os << a.get_str() << "*C(h+" << i << "," << i << ")";
  }
  return os.str();
}

int compare_eventual(const NumericalPolynomial& a, const NumericalPolynomial& b)
{
  const auto& ca = a.coefficients();
  const auto& cb = b.coefficients();
  const std::size_t n = std::max(ca.size(), cb.size());
  for (std::size_t k = n; k-- > 0;) {
    Integer x = k < ca.size() ? ca[k] : Integer(0);
    Integer y = k < cb.size() ? cb[k] : Integer(0);
    if (x != y)
      return x < y ? -1 : 1;
  }
  return 0;
}

std::pair<int, Integer> type_and_dim(const NumericalPolynomial& w)
{
  if (w.is_zero())
    return {0, Integer(0)};
  return {w.degree(), w.coefficients().back()};
}

void LeaderSet::normalize()
{
  for (auto& l : leaders) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    std::vector<MultiIndex> kept;
    for (const auto& a : l) {
      bool redundant = std::any_of(l.begin(), l.end(), [&](const MultiIndex& b) {
        return b != a && dominates(a, b);
      });
      if (!redundant)
        kept.push_back(a);
    }
    l = std::move(kept);
  }
}

int LeaderSet::max_order() const
{
  int o = 0;
  for (const auto& l : leaders)
    for (const auto& e : l)
      o = std::max(o, total_order(e));
  return o;
}

long exact_from(const LeaderSet& l)
{
  long h0 = l.max_order();
  for (const auto& ls : l.leaders) {
    if (ls.empty())
      continue;
    MultiIndex join{};
    for (const auto& e : ls)
      for (std::size_t d = 0; d < kMaxDerivations; ++d)
        join[d] = std::max(join[d], e[d]);
    h0 = std::max(h0, static_cast<long>(total_order(join)) - static_cast<long>(l.m));
  }
  return h0;
}

NumericalPolynomial dim_poly(const LeaderSet& l)
{
  const unsigned m = static_cast<unsigned>(l.m);
  // Values of the inclusion-exclusion polynomial at h = -1, ..., -1-m.
  std::vector<Integer> values(m + 1, 0);
  for (const auto& ls : l.leaders) {
    const std::size_t k = ls.size();
    if (k > 20)
      throw Error(ErrorCode::Semantic, "too many leaders for inclusion-exclusion");
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << k); ++s) {
      MultiIndex join{};
      int bits = 0;
      for (std::size_t i = 0; i < k; ++i)
        if (s & (std::uint64_t{1} << i)) {
          ++bits;
          for (std::size_t d = 0; d < kMaxDerivations; ++d)
            join[d] = std::max(join[d], ls[i][d]);
        }
      const long w = total_order(join);
      for (unsigned p = 0; p <= m; ++p) {
        const long h = -1 - static_cast<long>(p);
        Integer b = binomial(Integer(h - w + static_cast<long>(m)), m);
        if (bits % 2)
          values[p] -= b;
        else
          values[p] += b;
      }
    }
  }
  std::vector<Integer> d(m + 1, 0);
  for (unsigned j = 0; j <= m; ++j)
    for (unsigned q = 0; q <= j; ++q) {
      Integer t = binomial(Integer(j), q) * values[q];
      if (q % 2)
        d[j] -= t;
      else
        d[j] += t;
    }
  return NumericalPolynomial(std::move(d));
}

Integer brute_force_count(const LeaderSet& l, long h)
{
  Integer total = 0;
  if (h < 0)
    return total;
  MultiIndex e{};
  for (const auto& ls : l.leaders) {
    long count = 0;
    std::function<void(std::size_t, long)> walk = [&](std::size_t pos, long left) {
      if (pos == l.m) {
        for (const auto& a : ls)
          if (dominates(e, a))
            return;
        ++count;
        return;
      }
      for (long v = 0; v <= left; ++v) {
        e[pos] = static_cast<std::uint16_t>(v);
        walk(pos + 1, left - v);
      }
      e[pos] = 0;
    };
    walk(0, h);
    total += count;
  }
  return total;
}

LeaderSet leaders_of(const AutoreducedSet& a, const std::vector<std::uint32_t>& coords, DerivationMask mask)
{
  LeaderSet out;
  std::vector<std::size_t> positions;
  for (std::size_t d = 0; d < kMaxDerivations; ++d)
    if (mask & (1u << d))
      positions.push_back(d);
  out.m = positions.size();
  out.leaders.resize(coords.size());
  for (const auto& ld : a.leaders()) {
    auto it = std::find(coords.begin(), coords.end(), ld.leader.index);
    if (it == coords.end())
      throw Error(ErrorCode::Semantic, "leader outside the variety's coordinates");
    MultiIndex e{};
    for (std::size_t p = 0; p < positions.size(); ++p)
      e[p] = ld.leader.orders[positions[p]];
    out.leaders[it - coords.begin()].push_back(e);
  }
  out.normalize();
  return out;
}

LeaderSet sharp_leaders(const FieldDescriptor& field, const DVariety& dv)
{
  LeaderSet out = leaders_of(dv.V.ideal, dv.V.coords, field.all_mask());
  for (auto& l : out.leaders)
    for (auto d : field.lifted()) {
      MultiIndex e{};
      e[d] = 1;
      l.push_back(e);
    }
  out.normalize();
  return out;
}

SharpBoundReport sharp_bound_check(const FieldDescriptor& field, const DVariety& dv, long max_h)
{
  SharpBoundReport rep;
  rep.mu = dv.mu(field);
  rep.v_leaders = leaders_of(dv.V.ideal, dv.V.coords, field.base_mask());
  rep.sharp_leaders = sharp_leaders(field, dv);
  rep.omega_v = dim_poly(rep.v_leaders);
  rep.omega_sharp = dim_poly(rep.sharp_leaders);
  rep.type_v = type_and_dim(rep.omega_v);
  rep.type_sharp = type_and_dim(rep.omega_sharp);
  for (long h = 0; h <= max_h; ++h) {
    SharpBoundRow row{h, brute_force_count(rep.sharp_leaders, h), brute_force_count(rep.v_leaders, rep.mu * h),
                      false};
    row.ok = row.sharp <= row.bound;
    rep.pass = rep.pass && row.ok;
    rep.rows.push_back(std::move(row));
  }
  rep.pass = rep.pass && rep.type_v.first == rep.type_sharp.first;
  return rep;
}

}  // namespace reldiff
