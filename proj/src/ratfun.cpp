#include "reldiff/ratfun.hpp"

#include <algorithm>

#include "reldiff/error.hpp"

namespace reldiff {

const char* error_code_name(ErrorCode code)
{
  switch (code) {
  case ErrorCode::Parse: return "ParseError";
  case ErrorCode::UndefinedSymbol: return "UndefinedSymbol";
  case ErrorCode::NonCommutingTable: return "NonCommutingTable";
  case ErrorCode::DivisionByZero: return "DivisionByZero";
  case ErrorCode::ConstantPolynomial: return "ConstantPolynomial";
  case ErrorCode::NotAutoreduced: return "NotAutoreduced";
  case ErrorCode::NotInBaseRing: return "NotInBaseRing";
  case ErrorCode::DimensionMismatch: return "DimensionMismatch";
  case ErrorCode::NotOnVariety: return "NotOnVariety";
  case ErrorCode::NotOnGroup: return "NotOnGroup";
  case ErrorCode::Semantic: return "SemanticError";
  }
  return "Error";
}

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den))
{
  if (den_.is_zero())
    throw Error(ErrorCode::DivisionByZero, "zero denominator");
  normalize();
}

void RatFun::normalize()
{
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (!den_.is_constant()) {
    Poly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = *divide_exact(num_, g);
      den_ = *divide_exact(den_, g);
    }
  }
  Rational lc = den_.leading_coefficient();
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

std::vector<Var> RatFun::variables() const
{
  auto v = num_.variables();
  for (const auto& x : den_.variables())
    if (std::find(v.begin(), v.end(), x) == v.end())
      v.push_back(x);
  std::sort(v.begin(), v.end(), VarGreater{});
  return v;
}

RatFun RatFun::inverse() const
{
  if (num_.is_zero())
    throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  return RatFun(den_, num_);
}

RatFun RatFun::pow(int e) const
{
  if (e < 0)
    return inverse().pow(-e);
  return RatFun(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)), Reduced{});
}

RatFun RatFun::partial(const Var& v) const
{
  if (den_.is_one())
    return RatFun(num_.partial(v));
  if (!den_.contains(v))
    return RatFun(num_.partial(v), den_);
  return RatFun(num_.partial(v) * den_ - num_ * den_.partial(v), den_ * den_);
}

RatFun RatFun::operator-() const
{
  return RatFun(-num_, den_, Reduced{});
}

RatFun& RatFun::operator+=(const RatFun& o)
{
  if (o.is_zero())
    return *this;
  if (is_zero())
    return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    normalize();
    return *this;
  }
  if (den_.is_one()) {
    *this = RatFun(num_ * o.den_ + o.num_, o.den_);
    return *this;
  }
  if (o.den_.is_one()) {
    *this = RatFun(num_ + o.num_ * den_, den_);
    return *this;
  }
  Poly g = gcd(den_, o.den_);
  Poly a = *divide_exact(den_, g);
  Poly b = *divide_exact(o.den_, g);
  *this = RatFun(num_ * b + o.num_ * a, a * o.den_);
  return *this;
}

RatFun& RatFun::operator-=(const RatFun& o)
{
  return *this += -o;
}

RatFun& RatFun::operator*=(const RatFun& o)
{
  if (is_zero() || o.is_zero()) {
    *this = RatFun();
    return *this;
  }
  if (den_.is_one() && o.den_.is_one()) {
    num_ *= o.num_;
    normalize();
    return *this;
  }
  // Cross-cancel before multiplying to keep the gcd small.
  Poly g1 = gcd(num_, o.den_);
  Poly g2 = gcd(o.num_, den_);
  Poly n = *divide_exact(num_, g1) * *divide_exact(o.num_, g2);
  Poly d = *divide_exact(den_, g2) * *divide_exact(o.den_, g1);
  *this = RatFun(std::move(n), std::move(d), Reduced{});
  return *this;
}

RatFun& RatFun::operator/=(const RatFun& o)
{
  return *this *= o.inverse();
}

}  // namespace reldiff
