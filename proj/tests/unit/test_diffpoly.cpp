#include "doctest.h"

#include "../oracle.hpp"
#include "helpers.hpp"
#include "reldiff/error.hpp"

using namespace reldiff;
using oracle::Jet;

namespace {

struct Setup {
  std::vector<std::string> spec{"tb", "wl"};
  std::shared_ptr<FieldDescriptor> field = testing::tw_field(spec);
  Ring ring{field, {"x", "y"}};
  std::vector<std::uint32_t> xs{0, 1};
};

}  // namespace

TEST_SUITE("diffpoly")
{
  TEST_CASE("total derivative agrees with jet differentiation")
  {
    Setup s;
    oracle::Random rnd(21);
    int checked = 0;
    for (int i = 0; i < 40; ++i) {
      RatFun f = rnd.diff_poly(2, s.xs, s.field->all_mask(), 2, 3);
      if (rnd.integer(0, 1))
        f = f / (rnd.diff_poly(2, s.xs, s.field->all_mask(), 1, 2) + RatFun(1));
      oracle::Evaluator ev({0, 1}, testing::tw_dirs(s.spec), rnd.rational(), rnd.nonzero_rational(), 6);
      try {
        for (auto x : s.xs)
          ev.set(x, ev.field(rnd.field_element(2)));
        for (std::size_t d = 0; d < 2; ++d)
          CHECK(ev(derive(*s.field, d, f)).agrees(ev(f).derivative(d == 0 ? 0 : 1)));
        ++checked;
      } catch (const std::domain_error&) {
      }
    }
    CHECK(checked > 20);
  }

  TEST_CASE("substitution agrees with jet evaluation")
  {
    Setup s;
    oracle::Random rnd(22);
    int checked = 0;
    for (int i = 0; i < 30; ++i) {
      RatFun f = rnd.diff_poly(2, s.xs, s.field->all_mask(), 2, 3);
      std::vector<RatFun> a{rnd.field_element(2), rnd.field_element(2)};
      oracle::Evaluator ev({0, 1}, testing::tw_dirs(s.spec), rnd.rational(), rnd.nonzero_rational(), 4);
      try {
        for (std::size_t k = 0; k < 2; ++k)
          ev.set(s.xs[k], ev.field(a[k]));
        RatFun fa = substitute(*s.field, f, make_substitution(s.xs, a));
        CHECK(!fa.has_indeterminates());
        CHECK(ev.field(fa).agrees(ev(f)));
        ++checked;
      } catch (const std::domain_error&) {
      }
    }
    CHECK(checked > 15);
  }

  TEST_CASE("coefficient derivative")
  {
    Setup s;
    oracle::Random rnd(23);
    for (int i = 0; i < 20; ++i) {
      RatFun f = rnd.diff_poly(2, s.xs, s.field->base_mask(), 2, 3);
      RatFun fd = derive_coefficients(*s.field, 1, f);
      CHECK(fd == derive_holding(*s.field, 1, f, s.xs));
      // f^D = D f - sum df/d(theta x) * D theta x
      RatFun lin;
      for (const auto& v : f.variables())
        if (v.is_indeterminate())
          lin += partial(f, v) * RatFun::variable(v.derived(1));
      CHECK(fd == derive(*s.field, 1, f) - lin);
    }
    CHECK(derive_coefficients(*s.field, 1, s.ring.parse("t*w*x")) == s.ring.parse("t*x"));
  }

  TEST_CASE("mixed derivatives commute")
  {
    Setup s;
    RatFun f = s.ring.parse("t*x^2*d[dt](y)/w");
    CHECK(derive(*s.field, 0, derive(*s.field, 1, f)) == derive(*s.field, 1, derive(*s.field, 0, f)));
    MultiIndex th{};
    th[0] = 2;
    th[1] = 1;
    CHECK(apply_theta(*s.field, th, f) == derive(*s.field, 1, derive(*s.field, 0, derive(*s.field, 0, f))));
  }

  TEST_CASE("leader, initial and separant")
  {
    auto f = testing::tw_field({"tb", "wl"});
    Ring r(f, {"x", "y"});
    Poly g = r.parse("x*d[dt]^2(x) - d[dt](x)^2").num();
    LeaderData ld = leader_initial_separant(g);
    CHECK(r.str(ld.leader) == "d[dt]^2(x)");
    CHECK(ld.degree == 1);
    CHECK(ld.initial == r.parse("x").num());
    CHECK(ld.separant == r.parse("x").num());
    Poly h = r.parse("y^2*x + y + t").num();
    LeaderData lh = leader_initial_separant(h);
    CHECK(r.str(lh.leader) == "y");
    CHECK(lh.degree == 2);
    CHECK(lh.separant == r.parse("2*x*y + 1").num());
    CHECK_THROWS_AS(leader_initial_separant(r.parse("t + 1").num()), Error);
  }

  TEST_CASE("ranking is orderly with the last derivation first")
  {
    auto f = testing::tw_field({"tb", "wl"});
    Ring r(f, {"x", "y"});
    auto v = [&](const char* s) { return *leader(r.parse(s).num()); };
    CHECK(rank_compare(v("d[dt](x)"), v("y")) > 0);
    CHECK(rank_compare(v("y"), v("x")) > 0);
    CHECK(rank_compare(v("d[dw](x)"), v("d[dt](y)")) > 0);
    CHECK(rank_compare(v("d[dt]^2(x)"), v("d[dw](y)")) > 0);
    CHECK(rank_compare(v("x"), Var::generator(0)) > 0);
  }

  TEST_CASE("orders and masks")
  {
    auto f = testing::tw_field({"tb", "wl"});
    Ring r(f, {"x"});
    RatFun g = r.parse("d[dt]^2(x) + d[dw](x)*t");
    CHECK(differential_order(g, f->base_mask()) == 2);
    CHECK(differential_order(g, f->lifted_mask()) == 1);
    CHECK(!uses_only(g, f->base_mask()));
    CHECK(uses_only(r.parse("d[dt](x)"), f->base_mask()));
  }

  TEST_CASE("substitution errors")
  {
    Setup s;
    RatFun f = s.ring.parse("1/(x - t)");
    CHECK_THROWS_AS(substitute(*s.field, f, make_substitution({0}, {s.ring.parse("t")})), Error);
    CHECK_THROWS_AS(make_substitution({0, 1}, {s.ring.parse("t")}), Error);
  }

  TEST_CASE("indeterminate names")
  {
    auto f = testing::tw_field({"tb"});
    Ring r(f);
    CHECK_THROWS_AS(r.ensure_indeterminate("t"), Error);
    CHECK_THROWS_AS(r.ensure_indeterminate("d"), Error);
    CHECK_THROWS_AS(r.ensure_indeterminate("9x"), Error);
    CHECK(r.ensure_indeterminate("x") == r.ensure_indeterminate("x"));
  }
}
