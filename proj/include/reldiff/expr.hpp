#pragma once

// Shared expression grammar:
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' ['-'] integer)?
//   atom   := integer | identifier | '(' expr ')'
//           | 'd' '[' derivation ']' ('^' integer)? '(' expr ')'
//
// `d[dt](x)` is the derivative of x along dt; `d[dt]^2(x)` iterates it and
// `d[dt](d[dw](x))` mixes derivations. Derivatives apply to arbitrary
// expressions and are evaluated by the supplied callback.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "reldiff/coeffield.hpp"

namespace reldiff {

struct NameTable {
  const std::vector<DerivationName>& derivations;
  const std::vector<std::string>& generators;
  const std::vector<std::string>& indeterminates;
};

using Deriver = std::function<RatFun(std::size_t derivation, const RatFun& f)>;

struct ParseOptions {
  int line = 1;    // position of text[0], for error messages
  int column = 1;
};

/// Throws ParseError (with line/column) on syntax errors and on unknown
/// identifiers.
RatFun parse_expression(std::string_view text, const NameTable& names, const Deriver& derive,
                        ParseOptions opts = {});

/// Canonical, deterministic, re-parseable rendering.
std::string format_var(const Var& v, const NameTable& names);
std::string format_poly(const Poly& p, const NameTable& names);
std::string format_ratfun(const RatFun& f, const NameTable& names);

bool is_identifier(std::string_view s);

}  // namespace reldiff
