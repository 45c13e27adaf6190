#include "doctest.h"

#include "../oracle.hpp"
#include "helpers.hpp"
#include "reldiff/error.hpp"
#include "reldiff/prolong.hpp"

using namespace reldiff;
using oracle::Jet;

namespace {

struct Setup {
  std::vector<std::string> spec{"tb", "wl"};
  std::shared_ptr<FieldDescriptor> field = testing::tw_field(spec);
  Ring ring{field, {"x", "y"}};
  std::vector<std::uint32_t> xs{0, 1};
  std::vector<std::uint32_t> us = fiber_variables(ring, 2)[0];
};

}  // namespace

TEST_SUITE("prolong")
{
  TEST_CASE("d_rel agrees with its definition on jets")
  {
    Setup s;
    oracle::Random rnd(31);
    int checked = 0;
    for (int i = 0; i < 30; ++i) {
      RatFun f = rnd.diff_poly(2, s.xs, s.field->base_mask(), 2, 3);
      RatFun rel = d_rel(*s.field, 1, f, s.xs, s.us);
      std::vector<RatFun> a{rnd.field_element(2), rnd.field_element(2)};
      std::vector<RatFun> b{rnd.field_element(2), rnd.field_element(2)};
      oracle::Evaluator ev({0, 1}, testing::tw_dirs(s.spec), rnd.rational(), rnd.nonzero_rational(), 5);
      try {
        std::vector<Jet> ja, jb;
        for (std::size_t k = 0; k < 2; ++k) {
          ja.push_back(ev.field(a[k]));
          jb.push_back(ev.field(b[k]));
        }
        Jet expected = oracle::d_rel_oracle(ev, f, s.xs, ja, jb, 1);
        for (std::size_t k = 0; k < 2; ++k) {
          ev.set(s.xs[k], ja[k]);
          ev.set(s.us[k], jb[k]);
        }
        CHECK(ev(rel).agrees(expected));
        ++checked;
      } catch (const std::domain_error&) {
      }
    }
    CHECK(checked > 15);
  }

  TEST_CASE("specialization identity")
  {
    Setup s;
    oracle::Random rnd(32);
    for (int i = 0; i < 20; ++i) {
      RatFun f = rnd.diff_poly(2, s.xs, s.field->base_mask(), 2, 3);
      std::vector<RatFun> a{rnd.field_element(2), rnd.field_element(2)};
      try {
        RatFun lhs = derive(*s.field, 1, substitute(*s.field, f, make_substitution(s.xs, a)));
        Substitution at = make_substitution(s.xs, a);
        for (std::size_t k = 0; k < 2; ++k)
          at[s.us[k]] = derive(*s.field, 1, a[k]);
        CHECK(lhs == substitute(*s.field, d_rel(*s.field, 1, f, s.xs, s.us), at));
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DivisionByZero);
      }
    }
  }

  TEST_CASE("worked example")
  {
    auto f = std::make_shared<FieldDescriptor>(FieldDescriptor::declare(
        {{"d", DerivationClass::Base}, {"D", DerivationClass::Lifted}}, {"alpha", "alpha1"},
        std::map<std::pair<std::string, std::string>, std::string>{{{"d", "alpha"}, "alpha1"}}));
    Ring r(f, {"x", "y", "u", "v"});
    auto p = prolongation_gens(*f, testing::parse_all(r, {"x*y - 1", "x*d[d]^2(x) - d[d](x)^2"}), {0, 1}, {{2, 3}});
    REQUIRE(p.lifted.size() == 1);
    CHECK(p.lifted[0][0] == r.parse("y*u + x*v"));
    CHECK(p.lifted[0][1] == r.parse("d[d]^2(x)*u - 2*d[d](x)*d[d](u) + x*d[d]^2(u)"));
  }

  TEST_CASE("coefficient term appears for non-constant coefficients")
  {
    Setup s;
    RatFun f = s.ring.parse("w*x^2 + t*d[dt](y)");
    CHECK(d_rel(*s.field, 1, f, s.xs, s.us) ==
          s.ring.parse("2*w*x*u1_1 + t*d[dt](u1_2) + x^2"));
  }

  TEST_CASE("d_rel preconditions")
  {
    Setup s;
    CHECK_THROWS_AS(d_rel(*s.field, 0, s.ring.parse("x"), s.xs, s.us), Error);
    CHECK_THROWS_AS(d_rel(*s.field, 1, s.ring.parse("d[dw](x)"), s.xs, s.us), Error);
  }

  TEST_CASE("functoriality")
  {
    Setup s;
    Ring& r = s.ring;
    auto zs = std::vector<std::uint32_t>{r.ensure_indeterminate("z1"), r.ensure_indeterminate("z2")};
    auto vs = std::vector<std::uint32_t>{r.ensure_indeterminate("v1"), r.ensure_indeterminate("v2")};
    oracle::Random rnd(33);
    for (int i = 0; i < 15; ++i) {
      std::vector<RatFun> fmap{rnd.diff_poly(2, s.xs, s.field->base_mask(), 1, 2),
                               rnd.diff_poly(2, s.xs, s.field->base_mask(), 1, 2)};
      RatFun g = rnd.diff_poly(2, zs, s.field->base_mask(), 1, 2);
      RatFun gf = substitute(*s.field, g, make_substitution(zs, fmap));
      RatFun lhs = d_rel(*s.field, 1, gf, s.xs, s.us);
      Substitution at = make_substitution(zs, fmap);
      for (std::size_t k = 0; k < 2; ++k)
        at[vs[k]] = d_rel(*s.field, 1, fmap[k], s.xs, s.us);
      CHECK(lhs == substitute(*s.field, d_rel(*s.field, 1, g, zs, vs), at));
    }
  }

  TEST_CASE("nabla commutes with regular maps")
  {
    Setup s;
    oracle::Random rnd(34);
    for (int i = 0; i < 10; ++i) {
      std::vector<RatFun> fmap{rnd.diff_poly(2, s.xs, s.field->base_mask(), 1, 2),
                               rnd.diff_poly(2, s.xs, s.field->base_mask(), 1, 2)};
      std::vector<RatFun> a{rnd.field_element(2), rnd.field_element(2)};
      try {
        auto fa = substitute(*s.field, fmap, make_substitution(s.xs, a));
        CHECK(nabla(*s.field, fa) == tau_apply(s.ring, fmap, s.xs, nabla(*s.field, a)));
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DivisionByZero);
      }
    }
  }

  TEST_CASE("presentation evaluation")
  {
    Setup s;
    auto p = prolongation_gens(s.ring, testing::parse_all(s.ring, {"x*y - 1"}), s.xs);
    TauPoint on{{s.ring.parse("w"), s.ring.parse("1/w")}, {{s.ring.parse("1"), s.ring.parse("-1/w^2")}}};
    for (const auto& v : evaluate_presentation(*s.field, p, on))
      CHECK(v.is_zero());
    TauPoint off{{s.ring.parse("w"), s.ring.parse("1/w")}, {{s.ring.parse("1"), s.ring.parse("0")}}};
    auto vals = evaluate_presentation(*s.field, p, off);
    CHECK(!vals[1].is_zero());
  }

  TEST_CASE("fiber names")
  {
    CHECK(fiber_name(0, 0) == "u1_1");
    CHECK(fiber_name(1, 2) == "u2_3");
  }
}
