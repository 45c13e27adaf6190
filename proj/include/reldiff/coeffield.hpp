#pragma once

// Finitely presented differential coefficient fields: Q(g_1, ..., g_k) with
// commuting derivations given by a table of derivatives of the generators.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reldiff/ratfun.hpp"

namespace reldiff {

/// Base derivations form Delta; lifted derivations form DD = {D_1..D_r}.
enum class DerivationClass { Base, Lifted };

struct DerivationName {
  std::string name;
  DerivationClass cls = DerivationClass::Base;
};

/// Bit i set <=> derivation i participates.
using DerivationMask = std::uint32_t;

/// A field element is a RatFun whose variables are all generators.
using FieldElement = RatFun;

class FieldDescriptor {
public:
  using Table = std::vector<std::vector<RatFun>>;  // [derivation][generator]

  /// Validates the table and checks that every pair of derivations commutes
  /// on every generator. Throws Error(NonCommutingTable) or
  /// Error(UndefinedSymbol).
  static FieldDescriptor declare(std::vector<DerivationName> derivations,
                                 std::vector<std::string> generators, Table table);

  /// Same validation without the commutation check, for reporting on
  /// invalid tables.
  static FieldDescriptor declare_unchecked(std::vector<DerivationName> derivations,
                                           std::vector<std::string> generators, Table table);

  /// Same, with table entries given as expression strings keyed by
  /// (derivation, generator). Missing entries are zero.
  static FieldDescriptor declare(
      std::vector<DerivationName> derivations, std::vector<std::string> generators,
      const std::map<std::pair<std::string, std::string>, std::string>& entries);

  std::size_t derivation_count() const { return derivations_.size(); }
  std::size_t generator_count() const { return generators_.size(); }
  const DerivationName& derivation(std::size_t i) const { return derivations_.at(i); }
  const std::vector<DerivationName>& derivations() const { return derivations_; }
  const std::string& generator(std::size_t i) const { return generators_.at(i); }
  const std::vector<std::string>& generators() const { return generators_; }
  std::optional<std::size_t> find_derivation(std::string_view name) const;
  std::optional<std::size_t> find_generator(std::string_view name) const;
  /// Throws Error(UndefinedSymbol).
  std::size_t derivation_index(std::string_view name) const;

  const RatFun& table(std::size_t derivation, std::size_t generator) const
  {
    return table_.at(derivation).at(generator);
  }

  DerivationMask base_mask() const;
  DerivationMask lifted_mask() const;
  DerivationMask all_mask() const;
  /// Indices of the lifted derivations D_1..D_r in declaration order.
  std::vector<std::size_t> lifted() const;
  std::vector<std::size_t> base() const;

private:
  FieldDescriptor() = default;
  std::vector<DerivationName> derivations_;
  std::vector<std::string> generators_;
  Table table_;
};

/// Bracket residual d_i(d_j g) - d_j(d_i g) for i < j, or nullopt when the
/// table commutes everywhere.
struct BracketResidual {
  std::size_t generator;
  std::size_t first;
  std::size_t second;
  RatFun residual;
};
std::optional<BracketResidual> find_noncommuting(const FieldDescriptor& field);

/// Derivative of a polynomial's generator dependence: sum over generators g
/// of (dP/dg) * table(d, g). Indeterminates are treated as constants.
RatFun derive_generator_part(const FieldDescriptor& field, std::size_t derivation, const Poly& p);

/// Applies derivation d to a field element via the Leibniz and quotient rules.
/// Throws Error(Semantic) if `a` involves indeterminates.
FieldElement coeff_derive(const FieldDescriptor& field, std::size_t derivation, const FieldElement& a);

/// Canonical reduced form of num/den; Error(DivisionByZero) when den = 0.
FieldElement normalize(const Poly& num, const Poly& den);

}  // namespace reldiff
