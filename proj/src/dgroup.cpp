#include "reldiff/dgroup.hpp"

#include "reldiff/error.hpp"

namespace reldiff {

namespace {

std::vector<RatFun> symbols(const std::vector<std::uint32_t>& coords)
{
  std::vector<RatFun> out;
  out.reserve(coords.size());
  for (auto c : coords)
    out.push_back(RatFun::variable(Var::indeterminate(c)));
  return out;
}

std::vector<std::uint32_t> scratch(Ring& ring, const std::string& prefix, std::size_t n)
{
  std::vector<std::uint32_t> out;
  for (std::size_t k = 0; k < n; ++k)
    out.push_back(ring.ensure_indeterminate(prefix + std::to_string(k + 1)));
  return out;
}

Substitution pair_substitution(const GroupLaw& law, const std::vector<RatFun>& a, const std::vector<RatFun>& b)
{
  Substitution s = make_substitution(law.x, a);
  for (auto& [k, v] : make_substitution(law.y, b))
    s[k] = v;
  return s;
}

std::vector<RatFun> copy_equations(const FieldDescriptor& field, const std::vector<RatFun>& eqs,
                                   const std::vector<std::uint32_t>& from, const std::vector<std::uint32_t>& to)
{
  return substitute(field, eqs, make_substitution(from, symbols(to)));
}

std::vector<RatFun> difference(const std::vector<RatFun>& a, const std::vector<RatFun>& b)
{
  if (a.size() != b.size())
    throw Error(ErrorCode::DimensionMismatch, "tuples of different length");
  std::vector<RatFun> out;
  for (std::size_t k = 0; k < a.size(); ++k)
    out.push_back(a[k] - b[k]);
  return out;
}

void add_tuple(CheckReport& rep, const FieldDescriptor& field, const std::string& label,
               const std::vector<RatFun>& residuals, const AutoreducedSet& ideal)
{
  for (std::size_t k = 0; k < residuals.size(); ++k)
    rep.add(check_residual(field, label + " component " + std::to_string(k + 1), residuals[k], ideal));
}

}  // namespace

AutoreducedSet product_ideal(const FieldDescriptor& field, const DGroup& g, bool all_derivations)
{
  auto eqs = g.G().equations();
  auto copy = copy_equations(field, eqs, g.law.x, g.law.y);
  eqs.insert(eqs.end(), copy.begin(), copy.end());
  return AutoreducedSet(std::move(eqs), all_derivations ? field.all_mask() : field.base_mask(),
                        g.G().ideal.prime());
}

AutoreducedSet group_ideal(const FieldDescriptor& field, const DGroup& g, bool all_derivations)
{
  return g.G().ideal.with_mask(all_derivations ? field.all_mask() : field.base_mask());
}

std::vector<RatFun> group_mul(const FieldDescriptor& field, const GroupLaw& law, const std::vector<RatFun>& a,
                              const std::vector<RatFun>& b)
{
  return substitute(field, law.mul, pair_substitution(law, a, b));
}

std::vector<RatFun> group_inv(const FieldDescriptor& field, const GroupLaw& law, const std::vector<RatFun>& a)
{
  return substitute(field, law.inv, make_substitution(law.x, a));
}

CheckReport check_group_law(Ring& ring, const DGroup& g, bool check_assoc)
{
  const FieldDescriptor& field = ring.field();
  const auto& law = g.law;
  auto x = symbols(law.x);
  auto y = symbols(law.y);
  auto gx = group_ideal(field, g, false);
  CheckReport rep;
  add_tuple(rep, field, "p(x, e) - x", difference(group_mul(field, law, x, law.identity), x), gx);
  add_tuple(rep, field, "p(e, x) - x", difference(group_mul(field, law, law.identity, x), x), gx);
  add_tuple(rep, field, "p(x, inv(x)) - e",
            difference(group_mul(field, law, x, group_inv(field, law, x)), law.identity), gx);
  add_tuple(rep, field, "p(inv(x), x) - e",
            difference(group_mul(field, law, group_inv(field, law, x), x), law.identity), gx);
  if (check_assoc) {
    auto w = scratch(ring, "__w", law.x.size());
    auto eqs = g.G().equations();
    auto ey = copy_equations(field, eqs, law.x, law.y);
    auto ew = copy_equations(field, eqs, law.x, w);
    eqs.insert(eqs.end(), ey.begin(), ey.end());
    eqs.insert(eqs.end(), ew.begin(), ew.end());
    AutoreducedSet triple(std::move(eqs), field.base_mask(), g.G().ideal.prime());
    auto z = symbols(w);
    auto lhs = group_mul(field, law, group_mul(field, law, x, y), z);
    auto rhs = group_mul(field, law, x, group_mul(field, law, y, z));
    add_tuple(rep, field, "associativity", difference(lhs, rhs), triple);
  }
  return rep;
}

TauPoint tau_mul(Ring& ring, const GroupLaw& law, const TauPoint& a, const TauPoint& b)
{
  const FieldDescriptor& field = ring.field();
  const auto lifted = field.lifted();
  if (a.fibers.size() != lifted.size() || b.fibers.size() != lifted.size())
    throw Error(ErrorCode::DimensionMismatch, "points of tau G need one fiber per lifted derivation");
  Substitution at = pair_substitution(law, a.base, b.base);
  TauPoint out;
  out.base = substitute(field, law.mul, at);
  for (std::size_t i = 0; i < lifted.size(); ++i) {
    std::vector<RatFun> row;
    for (const auto& p : law.mul) {
      RatFun v = linearize(field, p, law.y, at, b.fibers[i]);
      v += linearize(field, p, law.x, at, a.fibers[i]);
      v += substitute(field, derive_coefficients(field, lifted[i], p), at);
      row.push_back(std::move(v));
    }
    out.fibers.push_back(std::move(row));
  }
  return out;
}

TauPoint tau_inv(Ring& ring, const GroupLaw& law, const TauPoint& a)
{
  const FieldDescriptor& field = ring.field();
  const auto lifted = field.lifted();
  if (a.fibers.size() != lifted.size())
    throw Error(ErrorCode::DimensionMismatch, "points of tau G need one fiber per lifted derivation");
  auto z = scratch(ring, "__z", law.x.size());
  auto zs = symbols(z);
  TauPoint out;
  out.base = group_inv(field, law, a.base);
  // lambda^{g^-1} o rho^{g^-1} as a map in z
  auto inner = group_mul(field, law, zs, out.base);
  auto f = group_mul(field, law, out.base, inner);
  Substitution at = make_substitution(z, a.base);
  for (std::size_t i = 0; i < lifted.size(); ++i) {
    std::vector<RatFun> w;
    for (std::size_t k = 0; k < a.base.size(); ++k)
      w.push_back(derive(field, lifted[i], a.base[k]) - a.fibers[i][k]);
    std::vector<RatFun> row;
    for (std::size_t k = 0; k < f.size(); ++k)
      row.push_back(linearize(field, f[k], z, at, w) + derive(field, lifted[i], out.base[k]));
    out.fibers.push_back(std::move(row));
  }
  return out;
}

TauPoint tau_identity(const FieldDescriptor& field, const GroupLaw& law)
{
  return nabla(field, law.identity);
}

TauPoint section_point(const FieldDescriptor& field, const DGroup& g, const std::vector<RatFun>& a)
{
  return section_at(field, g.dv, a);
}

TauPoint log_derivative(Ring& ring, const DGroup& g, const std::vector<RatFun>& a)
{
  const FieldDescriptor& field = ring.field();
  return tau_mul(ring, g.law, nabla(field, a), tau_inv(ring, g.law, section_point(field, g, a)));
}

TauPoint adjoint(Ring& ring, const DGroup& g, const std::vector<RatFun>& a, const TauPoint& alpha)
{
  const FieldDescriptor& field = ring.field();
  const auto lifted = field.lifted();
  auto z = scratch(ring, "__z", g.law.x.size());
  auto conj = group_mul(field, g.law, group_mul(field, g.law, a, symbols(z)), group_inv(field, g.law, a));
  Substitution at = make_substitution(z, alpha.base);
  TauPoint out;
  out.base = substitute(field, conj, at);
  for (std::size_t i = 0; i < lifted.size(); ++i) {
    std::vector<RatFun> row;
    for (const auto& c : conj)
      row.push_back(linearize(field, c, z, at, alpha.fibers.at(i)) +
                    substitute(field, derive_holding(field, lifted[i], c, z), at));
    out.fibers.push_back(std::move(row));
  }
  return out;
}

TauPoint adjoint_oracle(Ring& ring, const DGroup& g, const std::vector<RatFun>& a, const TauPoint& alpha)
{
  TauPoint u = section_point(ring.field(), g, a);
  return tau_mul(ring, g.law, u, tau_mul(ring, g.law, alpha, tau_inv(ring, g.law, u)));
}

CheckReport compare_points(const FieldDescriptor& field, const std::string& label, const TauPoint& lhs,
                           const TauPoint& rhs, const AutoreducedSet& ideal)
{
  if (lhs.fibers.size() != rhs.fibers.size())
    throw Error(ErrorCode::DimensionMismatch, "points with different fiber counts");
  CheckReport rep;
  add_tuple(rep, field, label + " base", difference(lhs.base, rhs.base), ideal);
  const auto lifted = field.lifted();
  for (std::size_t i = 0; i < lhs.fibers.size(); ++i)
    add_tuple(rep, field, label + " d[" + field.derivation(lifted.at(i)).name + "]",
              difference(lhs.fibers[i], rhs.fibers[i]), ideal);
  return rep;
}

CheckReport check_section_hom(Ring& ring, const DGroup& g)
{
  const FieldDescriptor& field = ring.field();
  auto x = symbols(g.law.x);
  auto y = symbols(g.law.y);
  TauPoint lhs = tau_mul(ring, g.law, section_point(field, g, x), section_point(field, g, y));
  TauPoint rhs = section_point(field, g, group_mul(field, g.law, x, y));
  return compare_points(field, "s hom", lhs, rhs, product_ideal(field, g, false));
}

CheckReport check_nabla_hom(Ring& ring, const DGroup& g)
{
  const FieldDescriptor& field = ring.field();
  auto x = symbols(g.law.x);
  auto y = symbols(g.law.y);
  TauPoint lhs = tau_mul(ring, g.law, nabla(field, x), nabla(field, y));
  TauPoint rhs = nabla(field, group_mul(field, g.law, x, y));
  return compare_points(field, "nabla hom", lhs, rhs, product_ideal(field, g, true));
}

CheckReport check_crossed_hom(Ring& ring, const DGroup& g)
{
  const FieldDescriptor& field = ring.field();
  auto x = symbols(g.law.x);
  auto y = symbols(g.law.y);
  TauPoint lhs = log_derivative(ring, g, group_mul(field, g.law, x, y));
  TauPoint rhs = tau_mul(ring, g.law, log_derivative(ring, g, x), adjoint(ring, g, x, log_derivative(ring, g, y)));
  return compare_points(field, "crossed hom", lhs, rhs, product_ideal(field, g, true));
}

DVariety twisted(Ring& ring, const DGroup& g, const TauPoint& alpha)
{
  const FieldDescriptor& field = ring.field();
  if (alpha.base != g.law.identity)
    throw Error(ErrorCode::Semantic, "alpha must lie over the identity");
  TauPoint t = tau_mul(ring, g.law, alpha, section_point(field, g, symbols(g.coords())));
  return DVariety{g.dv.V, t.fibers};
}

CheckReport integrable_point_check(Ring& ring, const DGroup& g, const TauPoint& alpha)
{
  DVariety t = twisted(ring, g, alpha);
  CheckReport rep = validate_section(ring, t);
  rep.merge(check_integrability(ring, t));
  return rep;
}

CheckReport integrable_by_witness(Ring& ring, const DGroup& g, const TauPoint& alpha,
                                  const std::vector<RatFun>& witness)
{
  const FieldDescriptor& field = ring.field();
  Substitution at = make_substitution(g.coords(), witness);
  for (const auto& e : g.G().equations())
    if (!substitute(field, e, at).is_zero())
      throw Error(ErrorCode::NotOnGroup, "witness does not lie on the group");
  return compare_points(field, "l_s(witness) - alpha", log_derivative(ring, g, witness), alpha,
                        AutoreducedSet{});
}

// ---------------------------------------------------------------- linear

Matrix mat_mul(const Matrix& a, const Matrix& b)
{
  const auto n = a.size();
  Matrix out(n, std::vector<RatFun>(b.empty() ? 0 : b[0].size()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < out[i].size(); ++j)
      for (std::size_t k = 0; k < b.size(); ++k)
        out[i][j] += a[i][k] * b[k][j];
  return out;
}

Matrix mat_sub(const Matrix& a, const Matrix& b)
{
  Matrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      out[i][j] -= b[i][j];
  return out;
}

Matrix mat_derive(const FieldDescriptor& field, std::size_t derivation, const Matrix& a)
{
  Matrix out = a;
  for (auto& row : out)
    for (auto& e : row)
      e = derive(field, derivation, e);
  return out;
}

LinearReport linear_integrability(const FieldDescriptor& field, const std::vector<Matrix>& a)
{
  const auto lifted = field.lifted();
  if (a.size() != lifted.size())
    throw Error(ErrorCode::DimensionMismatch, "need one matrix per lifted derivation");
  const auto n = a.empty() ? 0 : a[0].size();
  for (const auto& m : a) {
    if (m.size() != n)
      throw Error(ErrorCode::DimensionMismatch, "matrices must share one size");
    for (const auto& row : m)
      if (row.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "matrices must be square");
  }
  LinearReport rep;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      Matrix r = mat_sub(mat_sub(mat_derive(field, lifted[i], a[j]), mat_derive(field, lifted[j], a[i])),
                         mat_sub(mat_mul(a[i], a[j]), mat_mul(a[j], a[i])));
      bool zero = true;
      for (const auto& row : r)
        for (const auto& e : row)
          zero = zero && e.is_zero();
      if (!zero)
        rep.verdict = Verdict::Fail;
      rep.pairs.push_back({i, j, std::move(r), zero});
    }
  return rep;
}

}  // namespace reldiff
