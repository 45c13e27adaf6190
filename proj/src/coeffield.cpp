#include "reldiff/coeffield.hpp"

#include <algorithm>
#include <set>

#include "reldiff/error.hpp"
#include "reldiff/expr.hpp"

namespace reldiff {

namespace {

void check_generators_only(const RatFun& f, std::size_t generator_count, const std::string& where)
{
  for (const auto& v : f.variables()) {
    if (v.is_indeterminate() || v.index >= generator_count)
      throw Error(ErrorCode::UndefinedSymbol, where + ": entry mentions a symbol that is not a generator");
  }
}

}  // namespace

FieldDescriptor FieldDescriptor::declare(std::vector<DerivationName> derivations,
                                         std::vector<std::string> generators, Table table)
{
  FieldDescriptor f = declare_unchecked(std::move(derivations), std::move(generators), std::move(table));
  if (auto bad = find_noncommuting(f)) {
    std::vector<std::string> none;
    NameTable names{f.derivations_, f.generators_, none};
    throw Error(ErrorCode::NonCommutingTable,
                "derivations " + f.derivations_[bad->first].name + " and " +
                    f.derivations_[bad->second].name + " do not commute on " +
                    f.generators_[bad->generator] +
                    "; residual = " + format_ratfun(bad->residual, names));
  }
  return f;
}

FieldDescriptor FieldDescriptor::declare_unchecked(std::vector<DerivationName> derivations,
                                                   std::vector<std::string> generators, Table table)
{
  if (derivations.size() > kMaxDerivations)
    throw Error(ErrorCode::Semantic, "at most " + std::to_string(kMaxDerivations) + " derivations are supported");
  std::set<std::string> seen;
  for (const auto& d : derivations)
    if (!is_identifier(d.name) || !seen.insert(d.name).second)
      throw Error(ErrorCode::Semantic, "invalid or duplicate derivation name '" + d.name + "'");
  for (const auto& g : generators)
    if (!is_identifier(g) || !seen.insert(g).second)
      throw Error(ErrorCode::Semantic, "invalid or duplicate generator name '" + g + "'");

  table.resize(derivations.size());
  for (std::size_t d = 0; d < derivations.size(); ++d) {
    table[d].resize(generators.size());
    for (std::size_t g = 0; g < generators.size(); ++g)
      check_generators_only(table[d][g], generators.size(),
                            "d[" + derivations[d].name + "](" + generators[g] + ")");
  }

  FieldDescriptor f;
  f.derivations_ = std::move(derivations);
  f.generators_ = std::move(generators);
  f.table_ = std::move(table);
  return f;
}

FieldDescriptor FieldDescriptor::declare(
    std::vector<DerivationName> derivations, std::vector<std::string> generators,
    const std::map<std::pair<std::string, std::string>, std::string>& entries)
{
  std::vector<std::string> none;
  NameTable names{derivations, generators, none};
  Deriver no_derivatives = [](std::size_t, const RatFun&) -> RatFun {
    throw Error(ErrorCode::Semantic, "derivatives are not allowed inside table entries");
  };
  Table table(derivations.size(), std::vector<RatFun>(generators.size()));
  for (const auto& [key, text] : entries) {
    auto di = std::find_if(derivations.begin(), derivations.end(),
                           [&](const DerivationName& d) { return d.name == key.first; });
    auto gi = std::find(generators.begin(), generators.end(), key.second);
    if (di == derivations.end())
      throw Error(ErrorCode::UndefinedSymbol, "unknown derivation '" + key.first + "'");
    if (gi == generators.end())
      throw Error(ErrorCode::UndefinedSymbol, "unknown generator '" + key.second + "'");
    table[di - derivations.begin()][gi - generators.begin()] =
        parse_expression(text, names, no_derivatives);
  }
  return declare(std::move(derivations), std::move(generators), std::move(table));
}

std::optional<std::size_t> FieldDescriptor::find_derivation(std::string_view name) const
{
  for (std::size_t i = 0; i < derivations_.size(); ++i)
    if (derivations_[i].name == name)
      return i;
  return std::nullopt;
}

std::optional<std::size_t> FieldDescriptor::find_generator(std::string_view name) const
{
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i] == name)
      return i;
  return std::nullopt;
}

std::size_t FieldDescriptor::derivation_index(std::string_view name) const
{
  if (auto i = find_derivation(name))
    return *i;
  throw Error(ErrorCode::UndefinedSymbol, "unknown derivation '" + std::string(name) + "'");
}

DerivationMask FieldDescriptor::base_mask() const
{
  DerivationMask m = 0;
  for (std::size_t i = 0; i < derivations_.size(); ++i)
    if (derivations_[i].cls == DerivationClass::Base)
      m |= 1u << i;
  return m;
}

DerivationMask FieldDescriptor::lifted_mask() const
{
  return all_mask() & ~base_mask();
}

DerivationMask FieldDescriptor::all_mask() const
{
  return derivations_.empty() ? 0u : ((1u << derivations_.size()) - 1u);
}

std::vector<std::size_t> FieldDescriptor::lifted() const
{
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < derivations_.size(); ++i)
    if (derivations_[i].cls == DerivationClass::Lifted)
      out.push_back(i);
  return out;
}

std::vector<std::size_t> FieldDescriptor::base() const
{
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < derivations_.size(); ++i)
    if (derivations_[i].cls == DerivationClass::Base)
      out.push_back(i);
  return out;
}

RatFun derive_generator_part(const FieldDescriptor& field, std::size_t d, const Poly& p)
{
  RatFun out;
  for (const auto& v : p.variables()) {
    if (!v.is_generator())
      continue;
    const RatFun& dv = field.table(d, v.index);
    if (dv.is_zero())
      continue;
    out += RatFun(p.partial(v)) * dv;
  }
  return out;
}

FieldElement coeff_derive(const FieldDescriptor& field, std::size_t d, const FieldElement& a)
{
  if (d >= field.derivation_count())
    throw Error(ErrorCode::UndefinedSymbol, "unknown derivation index");
  if (a.has_indeterminates())
    throw Error(ErrorCode::Semantic, "coeff_derive applied to a non-field element");
  RatFun dn = derive_generator_part(field, d, a.num());
  if (a.den().is_one())
    return dn;
  RatFun dd = derive_generator_part(field, d, a.den());
  RatFun den(a.den());
  return (dn * den - RatFun(a.num()) * dd) / (den * den);
}

std::optional<BracketResidual> find_noncommuting(const FieldDescriptor& field)
{
  const auto n = field.derivation_count();
  for (std::size_t g = 0; g < field.generator_count(); ++g)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        RatFun a = coeff_derive(field, i, field.table(j, g));
        RatFun b = coeff_derive(field, j, field.table(i, g));
        RatFun r = a - b;
        if (!r.is_zero())
          return BracketResidual{g, i, j, r};
      }
  return std::nullopt;
}

FieldElement normalize(const Poly& num, const Poly& den)
{
  return RatFun(num, den);
}

}  // namespace reldiff
