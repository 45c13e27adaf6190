#pragma once

// Ritt reduction modulo an autoreduced set, with an exact certificate
//
//   unit * prod I_k^a_k S_k^b_k * f = sum c_{k,theta} * theta(A_k) + R
//
// where `unit` is a nonzero polynomial in the field generators only.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reldiff/diffpoly.hpp"

namespace reldiff {

class AutoreducedSet {
public:
  AutoreducedSet() = default;

  /// Elements are brought to numerator form and sorted by increasing leader.
  /// `mask` selects the derivations whose proper derivatives are eliminated
  /// (Delta for I(V/K)_Delta). Throws Error(NotAutoreduced) or
  /// Error(ConstantPolynomial).
  AutoreducedSet(std::vector<RatFun> elements, DerivationMask mask, bool prime = false);

  const std::vector<Poly>& elements() const { return elements_; }
  const std::vector<LeaderData>& leaders() const { return leaders_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  DerivationMask mask() const { return mask_; }
  bool prime() const { return prime_; }
  void set_prime(bool p) { prime_ = p; }

  /// Same elements, derivations in `mask` instead.
  AutoreducedSet with_mask(DerivationMask mask) const;

private:
  std::vector<Poly> elements_;
  std::vector<LeaderData> leaders_;
  DerivationMask mask_ = 0;
  bool prime_ = false;
};

struct AutoreducedWitness {
  std::size_t reducer;   // index into the input list
  std::size_t reduced;   // element not reduced w.r.t. `reducer`
  Var offending;
};

/// nullopt when pairwise autoreduced; otherwise the offending pair.
std::optional<AutoreducedWitness> check_autoreduced(const std::vector<Poly>& elements, DerivationMask mask);
inline bool is_autoreduced(const std::vector<Poly>& elements, DerivationMask mask)
{
  return !check_autoreduced(elements, mask).has_value();
}

struct ReductionCertificate {
  Poly input;
  std::vector<Poly> elements;  // the reducing set, in its sorted order
  Poly unit{1};
  std::vector<std::pair<std::uint32_t, std::uint32_t>> exponents;  // (initial, separant) per element
  std::map<std::pair<std::size_t, MultiIndex>, Poly> combination;
  Poly remainder;

  Poly multiplier(const AutoreducedSet& a) const;
};

/// True when `v` is theta(u) for a nonidentity theta built from `mask`.
bool is_proper_derivative(const Var& v, const Var& u, DerivationMask mask);

/// Partial and full reduction. The certificate is verified before returning;
/// a failed verification throws std::logic_error.
ReductionCertificate ritt_reduce(const FieldDescriptor& field, const Poly& f, const AutoreducedSet& a);

/// Expands the certificate identity exactly.
bool verify_certificate(const FieldDescriptor& field, const AutoreducedSet& a, const ReductionCertificate& c);

/// Remainder is reduced: no proper derivative of a leader, leader degrees
/// below the element degrees.
bool is_reduced(const Poly& r, const AutoreducedSet& a);

enum class Membership { InIdeal, NotInIdeal, Unknown };
const char* membership_name(Membership m);

struct MembershipResult {
  Membership verdict;
  ReductionCertificate certificate;
};

/// Reduces the numerator of f.
MembershipResult membership_verdict(const FieldDescriptor& field, const RatFun& f, const AutoreducedSet& a);

}  // namespace reldiff
