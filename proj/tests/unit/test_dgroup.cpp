#include "doctest.h"

#include "../oracle.hpp"
#include "helpers.hpp"
#include "reldiff/dgroup.hpp"
#include "reldiff/error.hpp"
#include "reldiff/prolong.hpp"

using namespace reldiff;

namespace {

std::shared_ptr<FieldDescriptor> field()
{
  return testing::tw_field({"tb", "wl"});
}

struct GroupSetup {
  std::shared_ptr<FieldDescriptor> f = field();
  Ring ring;
  DGroup g;

  GroupSetup(const std::vector<std::string>& x, const std::vector<std::string>& y,
             const std::vector<std::string>& eqs, const std::vector<std::string>& mul,
             const std::vector<std::string>& inv, const std::vector<std::string>& identity,
             const std::vector<std::string>& section)
      : ring(f, x)
  {
    std::vector<std::uint32_t> xs, ys;
    for (const auto& n : x)
      xs.push_back(ring.indeterminate(n));
    for (const auto& n : y)
      ys.push_back(ring.ensure_indeterminate(n));
    Variety v = Variety::make(*f, xs, testing::parse_all(ring, eqs), true);
    g = DGroup{DVariety{v, {testing::parse_all(ring, section)}},
               GroupLaw{xs, ys, testing::parse_all(ring, mul), testing::parse_all(ring, inv),
                        testing::parse_all(ring, identity)}};
  }

  std::vector<RatFun> parse(const std::vector<std::string>& t) const { return testing::parse_all(ring, t); }
};

GroupSetup ga(const std::string& s = "0")
{
  return GroupSetup({"x"}, {"x2"}, {}, {"x + x2"}, {"-x"}, {"0"}, {s});
}

GroupSetup gm(const std::string& a = "0")
{
  return GroupSetup({"x", "z"}, {"x2", "z2"}, {"x*z - 1"}, {"x*x2", "z*z2"}, {"z", "x"}, {"1", "1"},
                    {"(" + a + ")*d[dt](x)", "(" + a + ")*d[dt](z)"});
}

GroupSetup gl2()
{
  return GroupSetup({"a", "b", "c", "e", "z"}, {"a2", "b2", "c2", "e2", "z2"}, {"z*(a*e - b*c) - 1"},
                    {"a*a2 + b*c2", "a*b2 + b*e2", "c*a2 + e*c2", "c*b2 + e*e2", "z*z2"},
                    {"e*z", "-b*z", "-c*z", "a*z", "a*e - b*c"}, {"1", "0", "0", "1", "1"},
                    {"0", "0", "0", "0", "0"});
}

RatFun nonzero(oracle::Random& rnd)
{
  RatFun r;
  while (r.is_zero())
    r = rnd.field_element(2);
  return r;
}

// A random point of tau G for each group: base on G, fiber tangent to it.
TauPoint gm_point(oracle::Random& rnd)
{
  RatFun x = nonzero(rnd), u = rnd.field_element(2);
  RatFun z = x.inverse();
  return TauPoint{{x, z}, {{u, -u * z * z}}};
}

TauPoint gl2_point(oracle::Random& rnd)
{
  std::vector<RatFun> m, u;
  RatFun det;
  do {
    m = {rnd.field_element(2), rnd.field_element(2), rnd.field_element(2), rnd.field_element(2)};
    det = m[0] * m[3] - m[1] * m[2];
  } while (det.is_zero());
  for (int k = 0; k < 4; ++k)
    u.push_back(rnd.field_element(2));
  RatFun z = det.inverse();
  RatFun ddet = u[0] * m[3] + m[0] * u[3] - u[1] * m[2] - m[1] * u[2];
  std::vector<RatFun> base = m, fiber = u;
  base.push_back(z);
  fiber.push_back(-z * z * ddet);
  return TauPoint{base, {fiber}};
}

TauPoint concat(const TauPoint& a, const TauPoint& b)
{
  TauPoint out = a;
  out.base.insert(out.base.end(), b.base.begin(), b.base.end());
  for (std::size_t i = 0; i < out.fibers.size(); ++i)
    out.fibers[i].insert(out.fibers[i].end(), b.fibers[i].begin(), b.fibers[i].end());
  return out;
}

std::vector<std::uint32_t> both(const GroupLaw& law)
{
  std::vector<std::uint32_t> out = law.x;
  out.insert(out.end(), law.y.begin(), law.y.end());
  return out;
}

void check_tau_law(GroupSetup& s, TauPoint (*point)(oracle::Random&), unsigned seed)
{
  oracle::Random rnd(seed);
  for (int i = 0; i < 10; ++i) {
    TauPoint p = point(rnd), q = point(rnd);
    CHECK(tau_mul(s.ring, s.g.law, p, q) == tau_apply(s.ring, s.g.law.mul, both(s.g.law), concat(p, q)));
    CHECK(tau_inv(s.ring, s.g.law, p) == tau_apply(s.ring, s.g.law.inv, s.g.law.x, p));
    TauPoint e = tau_identity(*s.f, s.g.law);
    CHECK(tau_mul(s.ring, s.g.law, p, tau_inv(s.ring, s.g.law, p)) == e);
    CHECK(tau_mul(s.ring, s.g.law, e, p) == p);
  }
}

using Matrix2 = std::vector<std::vector<RatFun>>;

Matrix2 inverse2(const Matrix2& m)
{
  RatFun det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  RatFun i = det.inverse();
  return {{m[1][1] * i, -m[0][1] * i}, {-m[1][0] * i, m[0][0] * i}};
}

}  // namespace

TEST_SUITE("dgroup")
{
  TEST_CASE("group laws")
  {
    for (auto s : {ga(), gm("t"), gl2()})
      CHECK(check_group_law(s.ring, s.g, true).verdict == Verdict::Pass);
    auto bad = GroupSetup({"x"}, {"x2"}, {}, {"x + x2 + 1"}, {"-x"}, {"0"}, {"0"});
    CHECK(check_group_law(bad.ring, bad.g, false).verdict == Verdict::Fail);
  }

  TEST_CASE("explicit tau group law agrees with the induced maps")
  {
    GroupSetup m = gm("t");
    check_tau_law(m, gm_point, 51);
    GroupSetup l = gl2();
    check_tau_law(l, gl2_point, 52);
  }

  TEST_CASE("homomorphism checks")
  {
    for (auto s : {ga(), ga("t*w*x"), ga("d[dt](x)"), gm(), gm("w^2 + t"), gl2()}) {
      CHECK(check_section_hom(s.ring, s.g).verdict == Verdict::Pass);
      CHECK(check_nabla_hom(s.ring, s.g).verdict == Verdict::Pass);
      CHECK(check_crossed_hom(s.ring, s.g).verdict == Verdict::Pass);
    }
    // x -> (x^2, -1) is a section of Gm but not a homomorphism.
    auto s = GroupSetup({"x", "z"}, {"x2", "z2"}, {"x*z - 1"}, {"x*x2", "z*z2"}, {"z", "x"}, {"1", "1"},
                        {"x^2", "-1"});
    CHECK(validate_section(s.ring, s.g.dv).verdict == Verdict::Pass);
    CHECK(check_section_hom(s.ring, s.g).verdict == Verdict::Fail);
  }

  TEST_CASE("logarithmic derivative on Gm")
  {
    GroupSetup s = gm("t");
    TauPoint l = log_derivative(s.ring, s.g, s.parse({"t*w", "1/(t*w)"}));
    CHECK(l.base == s.parse({"1", "1"}));
    // l(g) = (Dg - a d_t g)/g at the identity.
    CHECK(l.fibers[0] == s.parse({"(1 - w)/w", "(w - 1)/w"}));
  }

  TEST_CASE("logarithmic derivative on GL2 is (Dg) g^-1")
  {
    GroupSetup s = gl2();
    oracle::Random rnd(53);
    for (int i = 0; i < 8; ++i) {
      TauPoint p = gl2_point(rnd);
      Matrix2 g{{p.base[0], p.base[1]}, {p.base[2], p.base[3]}};
      Matrix2 expect = mat_mul(mat_derive(*s.f, 1, g), inverse2(g));
      TauPoint l = log_derivative(s.ring, s.g, p.base);
      CHECK(l.fibers[0][0] == expect[0][0]);
      CHECK(l.fibers[0][1] == expect[0][1]);
      CHECK(l.fibers[0][2] == expect[1][0]);
      CHECK(l.fibers[0][3] == expect[1][1]);
      CHECK(l.fibers[0][4] == -(expect[0][0] + expect[1][1]));
    }
  }

  TEST_CASE("adjoint action agrees with conjugation")
  {
    GroupSetup s = gl2();
    oracle::Random rnd(54);
    for (int i = 0; i < 6; ++i) {
      TauPoint p = gl2_point(rnd);
      TauPoint alpha = gl2_point(rnd);
      alpha.base = s.g.law.identity;
      RatFun tr = alpha.fibers[0][0] + alpha.fibers[0][3];
      alpha.fibers[0][4] = -tr;
      CHECK(adjoint(s.ring, s.g, p.base, alpha) == adjoint_oracle(s.ring, s.g, p.base, alpha));
    }
  }

  TEST_CASE("integrable points")
  {
    GroupSetup s = gm("t");
    std::vector<RatFun> g = s.parse({"w^2", "1/w^2"});
    TauPoint alpha = log_derivative(s.ring, s.g, g);
    CHECK(integrable_by_witness(s.ring, s.g, alpha, g).verdict == Verdict::Pass);
    CHECK(integrable_point_check(s.ring, s.g, alpha).verdict == Verdict::Pass);
    TauPoint off = alpha;
    off.fibers[0][0] += RatFun(1);
    off.fibers[0][1] -= RatFun(1);
    CHECK(integrable_by_witness(s.ring, s.g, off, g).verdict == Verdict::Fail);
    DVariety tw = twisted(s.ring, s.g, alpha);
    CHECK(sharp_member(*s.f, tw, g).sharp);
  }

  TEST_CASE("flat connections are integrable")
  {
    auto f = testing::tw_field({"tl", "wl"});
    oracle::Random rnd(55);
    for (int i = 0; i < 8; ++i) {
      Matrix2 u;
      do
        u = {{rnd.field_element(2), rnd.field_element(2)}, {rnd.field_element(2), rnd.field_element(2)}};
      while ((u[0][0] * u[1][1] - u[0][1] * u[1][0]).is_zero());
      Matrix2 ui = inverse2(u);
      std::vector<Matrix> a{mat_mul(mat_derive(*f, 0, u), ui), mat_mul(mat_derive(*f, 1, u), ui)};
      LinearReport r = linear_integrability(*f, a);
      CHECK(r.verdict == Verdict::Pass);
      a[1][0][1] += RatFun(Poly::variable(Var::generator(0)));
      CHECK(linear_integrability(*f, a).verdict == Verdict::Fail);
    }
  }

  TEST_CASE("linear integrability edge cases")
  {
    auto one = testing::tw_field({"tb", "wl"});
    LinearReport r = linear_integrability(*one, {{{RatFun(3)}}});
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.pairs.empty());
    auto two = testing::tw_field({"tl", "wl"});
    CHECK_THROWS_AS(linear_integrability(*two, {{{RatFun(1)}}}), Error);
    CHECK_THROWS_AS(linear_integrability(*two, {{{RatFun(1)}}, {{RatFun(1), RatFun(0)}}}), Error);
  }
}
