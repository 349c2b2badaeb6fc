#include "wbrst/scalar/rational_function.hpp"

#include <algorithm>

namespace wbrst {

RationalFunction::RationalFunction(const MultiPoly& num, const MultiPoly& den) : num_(num), den_(den) {
  normalize();
}

void RationalFunction::normalize() {
  if (den_.is_zero()) throw MathError("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = MultiPoly(1);
    return;
  }
  if (den_.is_constant()) {
    BigRational d = den_.constant_value();
    if (d != 1) num_ *= 1 / d;
    den_ = MultiPoly(1);
    return;
  }
  MultiPoly g = gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = num_.exact_div(g);
    den_ = den_.exact_div(g);
  }
  BigRational s = den_.content();
  if (s != 1) {
    num_ *= 1 / s;
    den_ *= 1 / s;
  }
  if (den_.is_constant()) den_ = MultiPoly(1);
}

BigRational RationalFunction::constant_value() const {
  if (!is_constant()) throw MathError("rational function is not constant: " + str());
  return num_.constant_value();
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (is_polynomial() && o.is_polynomial()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (is_zero() || o.is_zero()) return *this = RationalFunction();
  if (o.is_constant()) {
    num_ *= o.num_.constant_value();
    return *this;
  }
  if (is_polynomial() && o.is_polynomial()) {
    num_ *= o.num_;
    return *this;
  }
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw MathError("division by zero rational function");
  RationalFunction inv;
  inv.num_ = o.den_;
  inv.den_ = o.num_;
  inv.normalize();
  return *this *= inv;
}

RationalFunction RationalFunction::pow(int n) const {
  if (n < 0) return RationalFunction(1) / pow(-n);
  RationalFunction r;
  r.num_ = num_.pow(static_cast<unsigned>(n));
  r.den_ = den_.pow(static_cast<unsigned>(n));
  r.normalize();
  return r;
}

RationalFunction RationalFunction::eval(const std::map<ParamId, BigRational>& bindings) const {
  MultiPoly d = den_.eval(bindings);
  if (d.is_zero()) throw MathError("pole: denominator " + den_.str() + " vanishes at the given parameters");
  return RationalFunction(num_.eval(bindings), d);
}

RationalFunction RationalFunction::eval(const std::map<std::string, BigRational>& bindings) const {
  return eval(to_param_bindings(bindings));
}

std::vector<ParamId> RationalFunction::variables() const {
  auto a = num_.variables(), b = den_.variables();
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

std::string RationalFunction::str() const {
  if (is_polynomial()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

std::map<ParamId, BigRational> to_param_bindings(const std::map<std::string, BigRational>& named) {
  std::map<ParamId, BigRational> out;
  for (const auto& [k, v] : named) out.emplace(ParamRegistry::id(k), v);
  return out;
}

}  // namespace wbrst
