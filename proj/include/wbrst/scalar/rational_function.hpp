#pragma once

#include <map>
#include <string>

#include "wbrst/scalar/multi_poly.hpp"

namespace wbrst {

/// Normalized ratio of polynomials: gcd(num, den) = 1 and den is a primitive
/// integer polynomial with positive leading coefficient. Constants therefore
/// always have den == 1, and zero is 0/1.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(const BigRational& q) : num_(q), den_(1) {}  // NOLINT
  RationalFunction(long q) : num_(q), den_(1) {}  // NOLINT
  RationalFunction(const MultiPoly& p) : num_(p), den_(1) {}  // NOLINT
  RationalFunction(const MultiPoly& num, const MultiPoly& den);

  static RationalFunction param(const std::string& name) { return MultiPoly::variable(name); }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_constant() && num_.is_constant() && num_.constant_value() == 1; }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  BigRational constant_value() const;  // requires is_constant()

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  RationalFunction pow(int n) const;

  /// Partial substitution. Throws MathError when the denominator vanishes.
  RationalFunction eval(const std::map<ParamId, BigRational>& bindings) const;
  RationalFunction eval(const std::map<std::string, BigRational>& bindings) const;

  std::vector<ParamId> variables() const;

  /// Printed in the coefficient grammar; reparses to an equal value.
  std::string str() const;

 private:
  MultiPoly num_;
  MultiPoly den_;
  void normalize();
};

using RF = RationalFunction;

std::map<ParamId, BigRational> to_param_bindings(const std::map<std::string, BigRational>& named);

}  // namespace wbrst
