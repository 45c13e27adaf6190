#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "reldiff/error.hpp"
#include "reldiff/session.hpp"

using namespace reldiff;

namespace {

const char* kField = R"(field
  derivation d base
  derivation D lifted
  generators t
  d[d](t) = 1
end
indeterminates x y
)";

struct Failure {
  ErrorCode code;
  int line;
  int column;
  std::string message;
};

Failure failure(const std::string& body)
{
  try {
    Session::parse(std::string(kField) + body);
  } catch (const ParseError& e) {
    return {e.code(), e.line(), e.column(), e.what()};
  } catch (const Error& e) {
    return {e.code(), 0, 0, e.what()};
  }
  FAIL("expected an error");
  return {};
}

std::vector<std::filesystem::path> session_files()
{
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(RELDIFF_SESSIONS_DIR))
    if (e.path().extension() == ".session")
      out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("session")
{
  TEST_CASE("print is a fixed point of parse")
  {
    auto files = session_files();
    REQUIRE(files.size() >= 5);
    for (const auto& f : files) {
      CAPTURE(f.string());
      Session a = Session::load(f.string());
      std::string once = a.print();
      std::string twice = Session::parse(once).print();
      CHECK(once == twice);
    }
  }

  TEST_CASE("syntax errors carry line and column")
  {
    Failure f = failure("bogus line\n");
    CHECK(f.code == ErrorCode::Parse);
    CHECK(f.line == 8);
    CHECK(f.column == 1);

    f = failure("variety V\n  coords x y\n  eq x*y - + 1\nend\n");
    CHECK(f.code == ErrorCode::Parse);
    CHECK(f.line == 10);
    CHECK(f.column == 12);

    f = failure("variety V\n  coords x y\n");
    CHECK(f.line == 8);
    CHECK(f.message.find("end") != std::string::npos);

    f = failure("point p = (1, 2\n");
    CHECK(f.code == ErrorCode::Parse);
    CHECK(f.line == 8);
  }

  TEST_CASE("semantic errors name the object")
  {
    Failure f = failure("variety V\n  coords x y\nend\ndvariety W\n  variety V\n  section D = (x)\nend\n");
    CHECK(f.code == ErrorCode::DimensionMismatch);
    CHECK(f.line == 13);
    CHECK(f.message.find("'W'") != std::string::npos);

    f = failure("variety V\n  coords x y\n  eq d[D](x)\nend\n");
    CHECK(f.code == ErrorCode::Semantic);
    CHECK(f.message.find("'V'") != std::string::npos);

    f = failure("variety V\n  coords x y\n  eq 1\nend\n");
    CHECK(f.code == ErrorCode::ConstantPolynomial);
    CHECK(f.message.find("'V'") != std::string::npos);

    f = failure("dvariety W\n  variety Nope\n  section D = (x)\nend\n");
    CHECK(f.code == ErrorCode::UndefinedSymbol);
    CHECK(f.message.find("Nope") != std::string::npos);

    f = failure("variety V\n  coords x y\nend\nvariety V\n  coords x\nend\n");
    CHECK(f.code == ErrorCode::Semantic);
    CHECK(f.line == 11);

    f = failure("variety V\n  coords x y\n  eq x*y - 1\n  eq y^2 - x\nend\n");
    CHECK(f.code == ErrorCode::NotAutoreduced);
    CHECK(f.message.find("'V'") != std::string::npos);
  }

  TEST_CASE("field table errors")
  {
    CHECK_THROWS_AS(Session::parse("field\n  derivation d base\n  generators t\n  d[d](t) = d[d](t)\nend\n"),
                    ParseError);
    CHECK_THROWS_AS(Session::parse("field\n  derivation d base\n  generators t\n  d[q](t) = 1\nend\n"),
                    ParseError);
    Session s = Session::parse(
        "field\n  derivation d1 base\n  derivation d2 lifted\n  generators a\n  d[d1](a) = a\n  d[d2](a) = "
        "a^2\nend\n");
    REQUIRE(s.noncommuting());
  }

  TEST_CASE("object lookup")
  {
    Session s = Session::parse(std::string(kField) +
                               "variety V\n  coords x y\n  eq x*y - 1\nend\n"
                               "dvariety W\n  variety V\n  section D = (t*x, -t*y)\nend\n"
                               "point p = (1, 1)\n"
                               "poly f = x*y - 1\n");
    CHECK(s.kind("V") == ObjectKind::Variety);
    CHECK(s.kind("W") == ObjectKind::DVariety);
    CHECK(!s.kind("nothing"));
    CHECK(s.variety_of("W") == "V");
    CHECK(s.point("p").size() == 2);
    CHECK(s.dvariety("W").section.size() == 1);
    CHECK(!s.variety("V").ideal.prime());
    s.assert_prime("V");
    CHECK(s.variety("V").ideal.prime());
    try {
      s.require("p", {ObjectKind::Variety});
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Semantic);
      CHECK(std::string(e.what()).find("'p'") != std::string::npos);
    }
    CHECK_THROWS_AS(s.require("q", {ObjectKind::Variety}), Error);
    CHECK_THROWS_AS(s.assert_prime("p"), Error);
  }

  TEST_CASE("field block is optional")
  {
    Session s = Session::parse("indeterminates x\npoly f = x^2 + 1\n");
    CHECK(s.field().derivations().empty());
    CHECK(s.print().find("poly f = x^2 + 1") != std::string::npos);
  }

  TEST_CASE("tuple splitting")
  {
    auto rows = split_tuple("(a, f(b, c); d)", '(', ')');
    REQUIRE(rows.size() == 2);
    REQUIRE(rows[0].size() == 2);
    CHECK(rows[0][1].text == "f(b, c)");
    CHECK(rows[1][0].text == "d");
    CHECK_THROWS_AS(split_tuple("(a, )", '(', ')'), ParseError);
    CHECK_THROWS_AS(split_tuple("a, b", '(', ')'), ParseError);
    CHECK_THROWS_AS(split_tuple("(a, (b)", '(', ')'), ParseError);
  }

  TEST_CASE("missing files")
  {
    CHECK_THROWS_AS(Session::load("/nonexistent/path.session"), Error);
  }
}
