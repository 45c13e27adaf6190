#pragma once

#include <memory>
#include <string>
#include <vector>

#include "reldiff/diffpoly.hpp"

namespace testing {

using namespace reldiff;

/// Q(t, w) with d_t t = 1, d_w w = 1; the listed derivations are partials.
/// `classes` gives one entry per derivation: 't' or 'w' for the coordinate
/// and 'b'/'l' for base/lifted, e.g. {"tb", "wl"}.
inline std::shared_ptr<FieldDescriptor> tw_field(const std::vector<std::string>& spec)
{
  std::vector<DerivationName> ds;
  FieldDescriptor::Table table;
  for (const auto& s : spec) {
    ds.push_back({std::string("d") + s[0], s[1] == 'b' ? DerivationClass::Base : DerivationClass::Lifted});
    table.push_back({RatFun(s[0] == 't' ? 1 : 0), RatFun(s[0] == 'w' ? 1 : 0)});
  }
  return std::make_shared<FieldDescriptor>(FieldDescriptor::declare(ds, {"t", "w"}, table));
}

inline std::vector<int> tw_dirs(const std::vector<std::string>& spec)
{
  std::vector<int> out;
  for (const auto& s : spec)
    out.push_back(s[0] == 't' ? 0 : 1);
  return out;
}

inline std::vector<RatFun> parse_all(const Ring& r, const std::vector<std::string>& texts)
{
  std::vector<RatFun> out;
  for (const auto& t : texts)
    out.push_back(r.parse(t));
  return out;
}

inline std::vector<RatFun> vars(const Ring& r, const std::vector<std::string>& names)
{
  std::vector<RatFun> out;
  for (const auto& n : names)
    out.push_back(r.symbol(n));
  return out;
}

}  // namespace testing
