#include "reldiff/expr.hpp"

#include <cctype>
#include <sstream>

#include "reldiff/error.hpp"

namespace reldiff {

bool is_identifier(std::string_view s)
{
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      return false;
  return true;
}

namespace {

class Parser {
public:
  Parser(std::string_view text, const NameTable& names, const Deriver& derive, ParseOptions opts)
      : text_(text), names_(names), derive_(derive), line_(opts.line), col_(opts.column)
  {
  }

  RatFun parse()
  {
    RatFun r = expr();
    skip_ws();
    if (pos_ < text_.size())
      fail(std::string("unexpected '") + text_[pos_] + "'");
    return r;
  }

private:
  [[noreturn]] void fail(const std::string& msg, ErrorCode code = ErrorCode::Parse) const
  {
    throw ParseError(msg, line_, col_, code);
  }

  void advance()
  {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws()
  {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      advance();
  }

  bool accept(char c)
  {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      advance();
      return true;
    }
    return false;
  }

  void expect(char c)
  {
    if (!accept(c))
      fail(std::string("expected '") + c + "'");
  }

  char peek()
  {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  std::string identifier()
  {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        advance();
    }
    if (start == pos_)
      fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  Integer integer()
  {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      advance();
    if (start == pos_)
      fail("expected integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  long small_integer()
  {
    Integer z = integer();
    if (!z.fits_slong_p() || z > 100000)
      fail("exponent too large");
    return z.get_si();
  }

  RatFun expr()
  {
    RatFun r = term();
    for (;;) {
      if (accept('+'))
        r += term();
      else if (accept('-'))
        r -= term();
      else
        return r;
    }
  }

  RatFun term()
  {
    RatFun r = unary();
    for (;;) {
      if (accept('*')) {
        r *= unary();
      } else if (accept('/')) {
        int l = line_, c = col_;
        RatFun d = unary();
        if (d.is_zero())
          throw ParseError("division by zero", l, c, ErrorCode::DivisionByZero);
        r /= d;
      } else {
        return r;
      }
    }
  }

  RatFun unary()
  {
    if (accept('-'))
      return -unary();
    return power();
  }

  RatFun power()
  {
    RatFun base = atom();
    if (accept('^')) {
      bool neg = accept('-');
      long e = small_integer();
      if (neg && base.is_zero())
        fail("negative power of zero", ErrorCode::DivisionByZero);
      return base.pow(neg ? -static_cast<int>(e) : static_cast<int>(e));
    }
    return base;
  }

  RatFun atom()
  {
    char c = peek();
    if (c == '(') {
      advance();
      RatFun r = expr();
      expect(')');
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return RatFun(Rational(integer()));
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      int l = line_, col = col_;
      std::string id = identifier();
      if (id == "d" && peek() == '[')
        return derivative();
      for (std::size_t i = 0; i < names_.generators.size(); ++i)
        if (names_.generators[i] == id)
          return RatFun::variable(Var::generator(static_cast<std::uint32_t>(i)));
      for (std::size_t i = 0; i < names_.indeterminates.size(); ++i)
        if (names_.indeterminates[i] == id)
          return RatFun::variable(Var::indeterminate(static_cast<std::uint32_t>(i)));
      throw ParseError("undefined symbol '" + id + "'", l, col, ErrorCode::UndefinedSymbol);
    }
    if (c == '\0')
      fail("unexpected end of expression");
    fail(std::string("unexpected '") + c + "'");
  }

  RatFun derivative()
  {
    expect('[');
    int l = line_, col = col_;
    std::string name = identifier();
    expect(']');
    std::size_t d = names_.derivations.size();
    for (std::size_t i = 0; i < names_.derivations.size(); ++i)
      if (names_.derivations[i].name == name)
        d = i;
    if (d == names_.derivations.size())
      throw ParseError("undefined derivation '" + name + "'", l, col, ErrorCode::UndefinedSymbol);
    long times = 1;
    if (accept('^'))
      times = small_integer();
    expect('(');
    RatFun r = expr();
    expect(')');
    for (long k = 0; k < times; ++k)
      r = derive_(d, r);
    return r;
  }

  std::string_view text_;
  const NameTable& names_;
  const Deriver& derive_;
  std::size_t pos_ = 0;
  int line_;
  int col_;
};

std::string format_rational(const Rational& q)
{
  return q.get_str();
}

}  // namespace

RatFun parse_expression(std::string_view text, const NameTable& names, const Deriver& derive,
                        ParseOptions opts)
{
  return Parser(text, names, derive, opts).parse();
}

std::string format_var(const Var& v, const NameTable& names)
{
  if (v.is_generator())
    return v.index < names.generators.size() ? names.generators[v.index]
                                             : "g" + std::to_string(v.index);
  std::string core = v.index < names.indeterminates.size() ? names.indeterminates[v.index]
                                                           : "x" + std::to_string(v.index);
  std::string prefix, suffix;
  for (std::size_t d = 0; d < kMaxDerivations; ++d) {
    if (v.orders[d] == 0)
      continue;
    std::string dn = d < names.derivations.size() ? names.derivations[d].name : "D" + std::to_string(d);
    prefix += "d[" + dn + "]";
    if (v.orders[d] > 1)
      prefix += "^" + std::to_string(v.orders[d]);
    prefix += "(";
    suffix += ")";
  }
  return prefix + core + suffix;
}

std::string format_poly(const Poly& p, const NameTable& names)
{
  if (p.is_zero())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational a = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    if (m.is_one()) {
      os << format_rational(a);
      continue;
    }
    bool need_star = false;
    if (a != 1) {
      os << format_rational(a);
      need_star = true;
    }
    for (const auto& f : m.factors()) {
      if (need_star)
        os << "*";
      os << format_var(f.var, names);
      if (f.exp > 1)
        os << "^" << f.exp;
      need_star = true;
    }
  }
  return os.str();
}

std::string format_ratfun(const RatFun& f, const NameTable& names)
{
  if (f.den().is_one())
    return format_poly(f.num(), names);
  std::string n = format_poly(f.num(), names);
  if (f.num().size() > 1)
    n = "(" + n + ")";
  std::string d = format_poly(f.den(), names);
  const bool simple_den = f.den().is_monomial() && f.den().leading_coefficient() == 1 &&
                          f.den().leading_monomial().factors().size() == 1;
  if (!simple_den)
    d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace reldiff
