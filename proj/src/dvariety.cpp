#include "reldiff/dvariety.hpp"

#include <algorithm>

#include "reldiff/error.hpp"

namespace reldiff {

const char* verdict_name(Verdict v)
{
  switch (v) {
  case Verdict::Pass: return "pass";
  case Verdict::Fail: return "fail";
  case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

int verdict_exit_code(Verdict v)
{
  switch (v) {
  case Verdict::Pass: return 0;
  case Verdict::Fail: return 1;
  case Verdict::Inconclusive: return 2;
  }
  return 3;
}

void CheckReport::add(ResidualCheck c)
{
  if (c.membership == Membership::NotInIdeal)
    verdict = Verdict::Fail;
  else if (c.membership == Membership::Unknown && verdict == Verdict::Pass)
    verdict = Verdict::Inconclusive;
  checks.push_back(std::move(c));
}

void CheckReport::merge(const CheckReport& other)
{
  for (const auto& c : other.checks)
    add(c);
  if (other.verdict == Verdict::Fail)
    verdict = Verdict::Fail;
  else if (other.verdict == Verdict::Inconclusive && verdict == Verdict::Pass)
    verdict = Verdict::Inconclusive;
}

ResidualCheck check_residual(const FieldDescriptor& field, std::string label, const RatFun& residual,
                             const AutoreducedSet& ideal)
{
  ResidualCheck c;
  c.label = std::move(label);
  c.residual = residual;
  auto m = membership_verdict(field, residual, ideal);
  c.membership = m.verdict;
  c.certificate = std::move(m.certificate);
  return c;
}

Variety Variety::make(const FieldDescriptor& field, std::vector<std::uint32_t> coords,
                      std::vector<RatFun> equations, bool prime)
{
  for (const auto& e : equations) {
    if (!uses_only(e, field.base_mask()))
      throw Error(ErrorCode::Semantic, "variety equations may only use base derivations");
    for (const auto& v : e.variables())
      if (v.is_indeterminate() && std::find(coords.begin(), coords.end(), v.index) == coords.end())
        throw Error(ErrorCode::Semantic, "variety equation mentions a symbol outside its coordinates");
  }
  return Variety{std::move(coords), AutoreducedSet(std::move(equations), field.base_mask(), prime)};
}

std::vector<RatFun> Variety::equations() const
{
  return std::vector<RatFun>(ideal.elements().begin(), ideal.elements().end());
}

int DVariety::section_order(const FieldDescriptor& field) const
{
  int o = 0;
  for (const auto& row : section)
    for (const auto& c : row)
      o = std::max(o, differential_order(c, field.base_mask()));
  return o;
}

int DVariety::mu(const FieldDescriptor& field) const
{
  return std::max(1, section_order(field));
}

void check_section_shape(const FieldDescriptor& field, const DVariety& dv)
{
  const auto r = field.lifted().size();
  if (dv.section.size() != r)
    throw Error(ErrorCode::DimensionMismatch, "section has " + std::to_string(dv.section.size()) +
                                                  " tuples but there are " + std::to_string(r) +
                                                  " lifted derivations");
  for (const auto& row : dv.section) {
    if (row.size() != dv.V.coords.size())
      throw Error(ErrorCode::DimensionMismatch, "section tuple has length " + std::to_string(row.size()) +
                                                    ", expected " + std::to_string(dv.V.coords.size()));
    for (const auto& c : row)
      if (!uses_only(c, field.base_mask()))
        throw Error(ErrorCode::Semantic, "section entries may only use base derivations");
  }
}

CheckReport validate_section(Ring& ring, const DVariety& dv)
{
  const FieldDescriptor& field = ring.field();
  check_section_shape(field, dv);
  const auto lifted = field.lifted();
  auto fib = fiber_variables(ring, dv.V.coords.size(), "__v");
  auto eqs = dv.V.equations();
  CheckReport rep;
  for (std::size_t i = 0; i < lifted.size(); ++i) {
    Substitution at = make_substitution(fib[i], dv.section[i]);
    for (std::size_t k = 0; k < eqs.size(); ++k) {
      RatFun res = substitute(field, d_rel(field, lifted[i], eqs[k], dv.V.coords, fib[i]), at);
      rep.add(check_residual(field, "d[" + field.derivation(lifted[i]).name + "] eq" + std::to_string(k + 1),
                             res, dv.V.ideal));
    }
  }
  return rep;
}

CheckReport check_integrability(Ring& ring, const DVariety& dv)
{
  const FieldDescriptor& field = ring.field();
  check_section_shape(field, dv);
  const auto lifted = field.lifted();
  const auto n = dv.V.coords.size();
  auto fib = fiber_variables(ring, n, "__v");
  CheckReport rep;
  for (std::size_t i = 0; i < lifted.size(); ++i)
    for (std::size_t j = i + 1; j < lifted.size(); ++j) {
      Substitution at_i = make_substitution(fib[i], dv.section[i]);
      Substitution at_j = make_substitution(fib[j], dv.section[j]);
      for (std::size_t k = 0; k < n; ++k) {
        RatFun a = substitute(field, d_rel(field, lifted[i], dv.section[j][k], dv.V.coords, fib[i]), at_i);
        RatFun b = substitute(field, d_rel(field, lifted[j], dv.section[i][k], dv.V.coords, fib[j]), at_j);
        rep.add(check_residual(field,
                               "[" + field.derivation(lifted[i]).name + "," + field.derivation(lifted[j]).name +
                                   "] component " + std::to_string(k + 1),
                               a - b, dv.V.ideal));
      }
    }
  return rep;
}

TauPoint section_at(const FieldDescriptor& field, const DVariety& dv, const std::vector<RatFun>& a)
{
  Substitution at = make_substitution(dv.V.coords, a);
  TauPoint p;
  p.base = a;
  for (const auto& row : dv.section)
    p.fibers.push_back(substitute(field, row, at));
  return p;
}

SharpResult sharp_member(const FieldDescriptor& field, const DVariety& dv, const std::vector<RatFun>& a)
{
  check_section_shape(field, dv);
  Substitution at = make_substitution(dv.V.coords, a);
  for (const auto& e : dv.V.equations())
    if (!substitute(field, e, at).is_zero())
      throw Error(ErrorCode::NotOnVariety, "point does not satisfy the variety's equations");
  TauPoint s = section_at(field, dv, a);
  TauPoint d = nabla(field, a);
  SharpResult out;
  for (std::size_t i = 0; i < s.fibers.size(); ++i) {
    std::vector<RatFun> row;
    for (std::size_t j = 0; j < a.size(); ++j) {
      row.push_back(s.fibers[i][j] - d.fibers[i][j]);
      if (!row.back().is_zero())
        out.sharp = false;
    }
    out.differences.push_back(std::move(row));
  }
  return out;
}

CheckReport subdvariety_report(const FieldDescriptor& field, const DVariety& w, const DVariety& v)
{
  if (w.V.coords != v.V.coords)
    throw Error(ErrorCode::DimensionMismatch, "subvariety must live in the same coordinates");
  check_section_shape(field, w);
  check_section_shape(field, v);
  CheckReport rep;
  auto eqs = v.V.equations();
  for (std::size_t k = 0; k < eqs.size(); ++k)
    rep.add(check_residual(field, "eq" + std::to_string(k + 1), eqs[k], w.V.ideal));
  for (std::size_t i = 0; i < v.section.size(); ++i)
    for (std::size_t j = 0; j < v.section[i].size(); ++j)
      rep.add(check_residual(field, "s" + std::to_string(i + 1) + " component " + std::to_string(j + 1),
                             v.section[i][j] - w.section[i][j], w.V.ideal));
  return rep;
}

bool is_subdvariety(const FieldDescriptor& field, const DVariety& w, const DVariety& v)
{
  return subdvariety_report(field, w, v).verdict == Verdict::Pass;
}

}  // namespace reldiff
