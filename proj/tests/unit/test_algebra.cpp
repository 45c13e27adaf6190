#include "doctest.h"

#include "../oracle.hpp"
#include "helpers.hpp"
#include "reldiff/error.hpp"

using namespace reldiff;
using testing::tw_field;

namespace {

Rational eval(const Poly& p, const std::vector<Rational>& at)
{
  Rational sum = 0;
  for (const auto& [m, c] : p.terms()) {
    Rational t = c;
    for (const auto& f : m.factors())
      for (std::uint32_t k = 0; k < f.exp; ++k)
        t *= at.at(f.var.index);
    sum += t;
  }
  return sum;
}

Poly gen(std::uint32_t i, std::uint32_t e = 1)
{
  return Poly::variable(Var::generator(i), e);
}

}  // namespace

TEST_SUITE("poly")
{
  TEST_CASE("arithmetic agrees with pointwise evaluation")
  {
    oracle::Random rnd(11);
    for (int i = 0; i < 40; ++i) {
      Poly a = rnd.generator_poly(3, 3, 4), b = rnd.generator_poly(3, 2, 3);
      std::vector<Rational> at{rnd.rational(), rnd.rational(), rnd.rational()};
      CHECK(eval(a + b, at) == eval(a, at) + eval(b, at));
      CHECK(eval(a - b, at) == eval(a, at) - eval(b, at));
      CHECK(eval(a * b, at) == eval(a, at) * eval(b, at));
      CHECK(eval(a.pow(3), at) == eval(a, at) * eval(a, at) * eval(a, at));
    }
  }

  TEST_CASE("exact division and gcd")
  {
    oracle::Random rnd(12);
    for (int i = 0; i < 25; ++i) {
      Poly a = rnd.generator_poly(2, 2, 3), b = rnd.generator_poly(2, 2, 2), c = rnd.generator_poly(2, 1, 2);
      if (a.is_zero() || b.is_zero() || c.is_zero())
        continue;
      auto q = divide_exact(a * c, c);
      REQUIRE(q.has_value());
      CHECK(*q == a);
      Poly g = gcd(a * c, b * c);
      CHECK(divide_exact(g, make_monic(c)).has_value());
      CHECK(divide_exact(a * c, g).has_value());
      CHECK(divide_exact(b * c, g).has_value());
    }
  }

  TEST_CASE("gcd of coprime polynomials is one")
  {
    Poly t = gen(0), w = gen(1);
    CHECK(gcd(t * t + Poly(1), t * w - Poly(1)) == Poly(1));
    CHECK(gcd(Poly(0), Poly(0)).is_zero());
    CHECK(gcd(t * Poly(6), Poly(0)) == t);
  }

  TEST_CASE("pseudo remainder")
  {
    Poly x = gen(0), y = gen(1);
    Poly a = x * x * y + Poly(1), b = x * y - Poly(1);
    Poly r = pseudo_remainder(a, b, Var::generator(0));
    CHECK(r.degree(Var::generator(0)) == 0);
    // b vanishes at x = 1/y, so r equals lc(b)^k * a there.
    const Rational yv(5, 3);
    const std::vector<Rational> at{Rational(1) / yv, yv};
    bool matched = false;
    for (unsigned k = 0; k <= 2; ++k)
      matched = matched || eval(r, at) == eval(a * y.pow(k), at);
    CHECK(matched);
  }
}

TEST_SUITE("ratfun")
{
  TEST_CASE("canonical form")
  {
    Poly t = gen(0);
    RatFun f(t * t - Poly(1), (t - Poly(1)) * Poly(3));
    CHECK(f.den() == Poly(1));
    CHECK(f.num() == (t + Poly(1)) * Rational(1, 3));
    RatFun g(Poly(2), t * Poly(4));
    CHECK(g.den() == t);
    CHECK(g.num() == Poly(Rational(1, 2)));
    CHECK((g - g).is_zero());
  }

  TEST_CASE("division by zero")
  {
    CHECK_THROWS_AS(RatFun(Poly(1), Poly(0)), Error);
    CHECK_THROWS_AS(RatFun(0).inverse(), Error);
  }

  TEST_CASE("field operations agree with evaluation")
  {
    oracle::Random rnd(13);
    for (int i = 0; i < 30; ++i) {
      RatFun a = rnd.field_element(2), b = rnd.field_element(2);
      std::vector<Rational> at{rnd.rational(7), rnd.rational(7)};
      auto v = [&](const RatFun& f) -> Rational { return eval(f.num(), at) / eval(f.den(), at); };
      if (eval(a.den(), at) == 0 || eval(b.den(), at) == 0 || eval(b.num(), at) == 0)
        continue;
      CHECK(v(a * b) == v(a) * v(b));
      CHECK(v(a / b) == v(a) / v(b));
      CHECK(v(a + b) == v(a) + v(b));
    }
  }
}

TEST_SUITE("expr")
{
  TEST_CASE("parse and format round trip")
  {
    auto f = tw_field({"tb", "wl"});
    Ring r(f, {"x", "y"});
    for (const char* s : {"x*y - 1", "d[dt]^2(x)*x - d[dt](x)^2", "t/w + 1/(x - t)", "d[dt](d[dw](x))", "-3/4*x^2",
                          "(x + 1)^-2", "d[dw](t*x)"}) {
      RatFun a = r.parse(s);
      CHECK(r.parse(r.str(a)) == a);
    }
    CHECK(r.str(r.parse("d[dw](t*x)")) == "d[dw](x)*t");
    CHECK(r.parse("d[dt](d[dw](x))") == r.parse("d[dw](d[dt](x))"));
  }

  TEST_CASE("parse errors carry positions")
  {
    auto f = tw_field({"tb"});
    Ring r(f, {"x"});
    try {
      r.parse("x + + ");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
      CHECK(e.column() >= 5);
    }
    CHECK_THROWS_AS(r.parse("z"), ParseError);
    CHECK_THROWS_AS(r.parse("d[dq](x)"), ParseError);
    CHECK_THROWS_AS(r.parse("x^"), ParseError);
    CHECK_THROWS_AS(r.parse("1/0"), Error);
  }
}

TEST_SUITE("coeffield")
{
  TEST_CASE("commuting table is accepted")
  {
    std::map<std::pair<std::string, std::string>, std::string> entries{
        {{"dt", "t"}, "1"}, {{"dw", "w"}, "1"}, {{"dt", "E"}, "2*w*E"}, {{"dw", "E"}, "(2*t + 2*w)*E"}};
    auto f = FieldDescriptor::declare({{"dt", DerivationClass::Lifted}, {"dw", DerivationClass::Lifted}},
                                      {"t", "w", "E"}, entries);
    CHECK(f.lifted().size() == 2);
    CHECK(f.base().empty());
    CHECK(!find_noncommuting(f));
  }

  TEST_CASE("non-commuting table is rejected with its residual")
  {
    std::map<std::pair<std::string, std::string>, std::string> entries{{{"d1", "a"}, "a"}, {{"d2", "a"}, "a^2"}};
    std::vector<DerivationName> ds{{"d1", DerivationClass::Base}, {"d2", DerivationClass::Lifted}};
    CHECK_THROWS_AS(FieldDescriptor::declare(ds, {"a"}, entries), Error);
    try {
      FieldDescriptor::declare(ds, {"a"}, entries);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonCommutingTable);
    }
    // d1(d2 a) - d2(d1 a) = 2a * a - a^2 = a^2
    FieldDescriptor::Table table{{RatFun(gen(0))}, {RatFun(gen(0, 2))}};
    auto f = FieldDescriptor::declare_unchecked(ds, {"a"}, table);
    auto res = find_noncommuting(f);
    REQUIRE(res);
    CHECK(res->residual == RatFun(gen(0, 2)));
  }

  TEST_CASE("declaration errors")
  {
    std::vector<DerivationName> ds{{"d", DerivationClass::Base}};
    CHECK_THROWS_AS(FieldDescriptor::declare(ds, {"t"}, std::map<std::pair<std::string, std::string>, std::string>{
                                                            {{"d", "q"}, "1"}}),
                    Error);
    CHECK_THROWS_AS(FieldDescriptor::declare({{"d", DerivationClass::Base}, {"d", DerivationClass::Lifted}}, {},
                                             FieldDescriptor::Table(2)),
                    Error);
  }

  TEST_CASE("masks")
  {
    auto f = tw_field({"tb", "wl"});
    CHECK(f->base_mask() == 1u);
    CHECK(f->lifted_mask() == 2u);
    CHECK(f->all_mask() == 3u);
  }
}
