#include "reldiff/prolong.hpp"

#include "reldiff/error.hpp"

namespace reldiff {

RatFun linearize(const FieldDescriptor& field, const RatFun& f, const std::vector<std::uint32_t>& coords,
                 const Substitution& at, const std::vector<RatFun>& direction)
{
  if (coords.size() != direction.size())
    throw Error(ErrorCode::DimensionMismatch, "direction has the wrong length");
  RatFun out;
  for (const auto& v : f.variables()) {
    if (!v.is_indeterminate())
      continue;
    std::size_t k = 0;
    while (k < coords.size() && coords[k] != v.index)
      ++k;
    if (k == coords.size())
      continue;
    RatFun df = f.partial(v);
    if (!at.empty())
      df = substitute(field, df, at);
    if (df.is_zero())
      continue;
    out += df * apply_theta(field, v.orders, direction[k]);
  }
  return out;
}

RatFun d_lin(const FieldDescriptor& field, const RatFun& f, const std::vector<std::uint32_t>& coords,
             const std::vector<std::uint32_t>& fiber)
{
  std::vector<RatFun> dir;
  dir.reserve(fiber.size());
  for (auto u : fiber)
    dir.push_back(RatFun::variable(Var::indeterminate(u)));
  return linearize(field, f, coords, {}, dir);
}

RatFun d_rel(const FieldDescriptor& field, std::size_t derivation, const RatFun& f,
             const std::vector<std::uint32_t>& coords, const std::vector<std::uint32_t>& fiber)
{
  if (derivation >= field.derivation_count() || field.derivation(derivation).cls != DerivationClass::Lifted)
    throw Error(ErrorCode::Semantic, "d_rel needs a lifted derivation");
  if (!uses_only(f, field.base_mask()))
    throw Error(ErrorCode::Semantic, "d_rel is defined on the base-derivation subring only");
  return d_lin(field, f, coords, fiber) + derive_coefficients(field, derivation, f);
}

std::string fiber_name(std::size_t i, std::size_t j)
{
  return "u" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

std::vector<std::vector<std::uint32_t>> fiber_variables(Ring& ring, std::size_t n, const std::string& prefix)
{
  std::vector<std::vector<std::uint32_t>> out;
  const auto r = ring.field().lifted().size();
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<std::uint32_t> row;
    for (std::size_t j = 0; j < n; ++j)
      row.push_back(ring.ensure_indeterminate(prefix + std::to_string(i + 1) + "_" + std::to_string(j + 1)));
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<RatFun> ProlongationPresentation::all_generators() const
{
  std::vector<RatFun> out = base;
  for (const auto& l : lifted)
    out.insert(out.end(), l.begin(), l.end());
  return out;
}

ProlongationPresentation prolongation_gens(Ring& ring, const std::vector<RatFun>& generators,
                                           const std::vector<std::uint32_t>& coords)
{
  return prolongation_gens(ring.field(), generators, coords, fiber_variables(ring, coords.size()));
}

ProlongationPresentation prolongation_gens(const FieldDescriptor& field, const std::vector<RatFun>& generators,
                                           const std::vector<std::uint32_t>& coords,
                                           std::vector<std::vector<std::uint32_t>> fibers)
{
  ProlongationPresentation p;
  p.coords = coords;
  p.base = generators;
  const auto lifted = field.lifted();
  if (fibers.size() != lifted.size())
    throw Error(ErrorCode::DimensionMismatch, "one fiber tuple per lifted derivation is required");
  for (const auto& f : fibers)
    if (f.size() != coords.size())
      throw Error(ErrorCode::DimensionMismatch, "fiber tuple length differs from the number of coordinates");
  p.fibers = std::move(fibers);
  for (std::size_t i = 0; i < lifted.size(); ++i) {
    std::vector<RatFun> row;
    for (const auto& f : generators)
      row.push_back(d_rel(field, lifted[i], f, coords, p.fibers[i]));
    p.lifted.push_back(std::move(row));
  }
  return p;
}

TauPoint nabla(const FieldDescriptor& field, const std::vector<RatFun>& a)
{
  TauPoint p;
  p.base = a;
  for (auto d : field.lifted()) {
    std::vector<RatFun> row;
    row.reserve(a.size());
    for (const auto& c : a)
      row.push_back(derive(field, d, c));
    p.fibers.push_back(std::move(row));
  }
  return p;
}

TauPoint tau_apply(Ring& ring, const std::vector<RatFun>& f, const std::vector<std::uint32_t>& coords,
                   const TauPoint& p)
{
  const auto lifted = ring.field().lifted();
  if (p.base.size() != coords.size() || p.fibers.size() != lifted.size())
    throw Error(ErrorCode::DimensionMismatch, "point does not match the map's domain");
  auto scratch = fiber_variables(ring, coords.size(), "__u");
  const FieldDescriptor& field = ring.field();

  TauPoint out;
  Substitution at = make_substitution(coords, p.base);
  out.base = substitute(field, f, at);
  for (std::size_t i = 0; i < lifted.size(); ++i) {
    if (p.fibers[i].size() != coords.size())
      throw Error(ErrorCode::DimensionMismatch, "fiber has the wrong length");
    Substitution sigma = at;
    for (std::size_t j = 0; j < coords.size(); ++j)
      sigma[scratch[i][j]] = p.fibers[i][j];
    std::vector<RatFun> row;
    for (const auto& c : f)
      row.push_back(substitute(field, d_rel(field, lifted[i], c, coords, scratch[i]), sigma));
    out.fibers.push_back(std::move(row));
  }
  return out;
}

std::vector<RatFun> evaluate_presentation(const FieldDescriptor& field, const ProlongationPresentation& pres,
                                          const TauPoint& p)
{
  if (p.base.size() != pres.coords.size() || p.fibers.size() != pres.fibers.size())
    throw Error(ErrorCode::DimensionMismatch, "point does not match the presentation");
  Substitution base = make_substitution(pres.coords, p.base);
  std::vector<RatFun> out = substitute(field, pres.base, base);
  for (std::size_t i = 0; i < pres.lifted.size(); ++i) {
    Substitution sigma = base;
    for (std::size_t j = 0; j < pres.coords.size(); ++j)
      sigma[pres.fibers[i][j]] = p.fibers[i][j];
    auto vals = substitute(field, pres.lifted[i], sigma);
    out.insert(out.end(), vals.begin(), vals.end());
  }
  return out;
}

}  // namespace reldiff
