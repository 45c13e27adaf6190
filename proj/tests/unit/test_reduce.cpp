#include "doctest.h"

#include "../oracle.hpp"
#include "helpers.hpp"
#include "reldiff/error.hpp"
#include "reldiff/reduce.hpp"

using namespace reldiff;
using oracle::Jet;

namespace {

struct Setup {
  std::vector<std::string> spec{"tb", "wl"};
  std::shared_ptr<FieldDescriptor> field = testing::tw_field(spec);
  Ring ring{field, {"x", "y"}};
  std::vector<std::uint32_t> xs{0, 1};

  AutoreducedSet gm(bool prime = true) const
  {
    return AutoreducedSet(testing::parse_all(ring, {"x*y - 1", "x*d[dt]^2(x) - d[dt](x)^2"}), field->base_mask(),
                          prime);
  }
};

// Evaluates both sides of the certificate identity on jets, differentiating
// the jet of each element directly instead of using the engine's derive.
bool identity_on_jets(const Setup& s, const AutoreducedSet& a, const ReductionCertificate& c, oracle::Random& rnd)
{
  oracle::Evaluator ev({0, 1}, testing::tw_dirs(s.spec), rnd.rational(), rnd.nonzero_rational(), 8);
  for (auto x : s.xs)
    ev.set(x, ev.field(rnd.field_element(2, false)));
  Jet lhs = ev(c.multiplier(a)) * ev(c.input);
  Jet rhs = ev(c.remainder);
  for (const auto& [key, coeff] : c.combination) {
    Jet th = ev(a.elements().at(key.first));
    for (std::size_t d = 0; d < kMaxDerivations; ++d)
      for (int k = 0; k < key.second[d]; ++k)
        th = th.derivative(d == 0 ? 0 : 1);
    rhs = rhs + ev(coeff) * th;
  }
  return lhs.agrees(rhs);
}

}  // namespace

TEST_SUITE("reduce")
{
  TEST_CASE("certificate identity holds on jets")
  {
    Setup s;
    oracle::Random rnd(41);
    AutoreducedSet a = s.gm();
    for (int i = 0; i < 25; ++i) {
      Poly f = rnd.diff_poly(2, s.xs, s.field->base_mask(), 3, 3).num();
      ReductionCertificate c = ritt_reduce(*s.field, f, a);
      CHECK(c.input == f);
      CHECK(verify_certificate(*s.field, a, c));
      CHECK(is_reduced(c.remainder, a));
      CHECK(identity_on_jets(s, a, c, rnd));
    }
  }

  TEST_CASE("combinations of derivatives of the set are members")
  {
    Setup s;
    oracle::Random rnd(42);
    AutoreducedSet a = s.gm(false);
    for (int i = 0; i < 15; ++i) {
      RatFun f;
      for (std::size_t k = 0; k < a.size(); ++k) {
        MultiIndex th{};
        th[0] = rnd.integer(0, 2);
        f += rnd.diff_poly(2, s.xs, s.field->base_mask(), 1, 2) *
             apply_theta(*s.field, th, RatFun(a.elements()[k]));
      }
      MembershipResult m = membership_verdict(*s.field, f, a);
      CHECK(m.verdict == Membership::InIdeal);
      CHECK(m.certificate.remainder.is_zero());
    }
  }

  TEST_CASE("nonzero remainders need primality to conclude")
  {
    Setup s;
    RatFun f = s.ring.parse("x*y*d[dt](x)");
    CHECK(membership_verdict(*s.field, f, s.gm(true)).verdict == Membership::NotInIdeal);
    CHECK(membership_verdict(*s.field, f, s.gm(false)).verdict == Membership::Unknown);
    CHECK(membership_verdict(*s.field, s.ring.parse("(x*y - 1)/(x + t)"), s.gm(false)).verdict ==
          Membership::InIdeal);
  }

  TEST_CASE("empty set")
  {
    Setup s;
    AutoreducedSet empty({}, s.field->base_mask(), true);
    MembershipResult m = membership_verdict(*s.field, s.ring.parse("x + t"), empty);
    CHECK(m.verdict == Membership::NotInIdeal);
    CHECK(m.certificate.remainder == s.ring.parse("x + t").num());
    CHECK(membership_verdict(*s.field, RatFun(), empty).verdict == Membership::InIdeal);
  }

  TEST_CASE("lifted derivatives are not eliminated under the base mask")
  {
    Setup s;
    AutoreducedSet a(testing::parse_all(s.ring, {"d[dt](x) - x"}), s.field->base_mask(), true);
    CHECK(membership_verdict(*s.field, s.ring.parse("d[dt]^2(x) - x"), a).verdict == Membership::InIdeal);
    CHECK(membership_verdict(*s.field, s.ring.parse("d[dw](d[dt](x)) - d[dw](x)"), a).verdict ==
          Membership::NotInIdeal);
    AutoreducedSet all = a.with_mask(s.field->all_mask());
    CHECK(membership_verdict(*s.field, s.ring.parse("d[dw](d[dt](x)) - d[dw](x)"), all).verdict ==
          Membership::InIdeal);
  }

  TEST_CASE("tampered certificates are rejected")
  {
    Setup s;
    AutoreducedSet a = s.gm();
    ReductionCertificate c = ritt_reduce(*s.field, s.ring.parse("x^2*y*d[dt]^2(x)").num(), a);
    REQUIRE(verify_certificate(*s.field, a, c));
    ReductionCertificate bad = c;
    bad.remainder += Poly(1);
    CHECK(!verify_certificate(*s.field, a, bad));
    bad = c;
    bad.unit *= Rational(2);
    CHECK(!verify_certificate(*s.field, a, bad));
  }

  TEST_CASE("autoreduced preconditions")
  {
    Setup s;
    auto code = [&](const std::vector<std::string>& eqs) {
      try {
        AutoreducedSet(testing::parse_all(s.ring, eqs), s.field->base_mask());
      } catch (const Error& e) {
        return static_cast<int>(e.code());
      }
      return 0;
    };
    CHECK(code({"x*y - 1", "y^2 - x"}) == static_cast<int>(ErrorCode::NotAutoreduced));
    CHECK(code({"d[dt](x) - x", "x*d[dt]^2(x) - 1"}) == static_cast<int>(ErrorCode::NotAutoreduced));
    CHECK(code({"t + 1"}) == static_cast<int>(ErrorCode::ConstantPolynomial));
    CHECK(code({"d[dt](x) - x", "d[dw](y) - y"}) == 0);

    auto w = check_autoreduced({s.ring.parse("d[dt](x)").num(), s.ring.parse("d[dt]^2(x)^2").num()},
                               s.field->base_mask());
    REQUIRE(w);
    CHECK(w->reducer == 0);
    CHECK(w->reduced == 1);
    CHECK(s.ring.str(w->offending) == "d[dt]^2(x)");
  }

  TEST_CASE("elements are sorted by leader")
  {
    Setup s;
    AutoreducedSet a(testing::parse_all(s.ring, {"x*d[dt]^2(x) - d[dt](x)^2", "x*y - 1"}), s.field->base_mask());
    CHECK(s.ring.str(a.leaders()[0].leader) == "y");
    CHECK(s.ring.str(a.leaders()[1].leader) == "d[dt]^2(x)");
  }

  TEST_CASE("proper derivatives")
  {
    Setup s;
    Var x = s.ring.var("x");
    CHECK(is_proper_derivative(x.derived(0), x, s.field->base_mask()));
    CHECK(!is_proper_derivative(x, x, s.field->base_mask()));
    CHECK(!is_proper_derivative(x.derived(1), x, s.field->base_mask()));
    CHECK(is_proper_derivative(x.derived(1).derived(0), x.derived(1), s.field->all_mask()));
  }
}
