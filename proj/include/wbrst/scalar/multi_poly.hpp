#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wbrst/scalar/big_rational.hpp"
#include "wbrst/scalar/params.hpp"

namespace wbrst {

/// Sparse exponent vector: (parameter, exponent) pairs sorted by parameter id,
/// exponents strictly positive.
using PolyMonomial = std::vector<std::pair<ParamId, std::uint32_t>>;

unsigned total_degree(const PolyMonomial& m);

/// Graded lexicographic order; parameter 0 is the most significant variable.
/// Returns <0, 0, >0 like strcmp.
int grlex_compare(const PolyMonomial& a, const PolyMonomial& b);

/// Sparse multivariate polynomial over BigRational. Terms are kept sorted in
/// decreasing grlex order with no zero coefficients, so structural equality
/// is mathematical equality.
class MultiPoly {
 public:
  struct Term {
    PolyMonomial mono;
    BigRational coeff;
  };

  MultiPoly() = default;
  MultiPoly(const BigRational& constant);  // NOLINT(google-explicit-constructor)
  MultiPoly(long constant) : MultiPoly(BigRational(constant)) {}  // NOLINT
  static MultiPoly variable(ParamId id, std::uint32_t power = 1);
  static MultiPoly variable(const std::string& name, std::uint32_t power = 1);
  static MultiPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.empty()); }
  BigRational constant_value() const;  // requires is_constant()
  const Term& leading_term() const { return terms_.front(); }
  const BigRational& leading_coeff() const { return terms_.front().coeff; }
  unsigned total_degree() const;

  std::vector<ParamId> variables() const;
  unsigned degree_in(ParamId var) const;
  bool contains(ParamId var) const { return degree_in(var) > 0; }

  /// Coefficients of var^0, var^1, ... as polynomials free of var.
  std::vector<MultiPoly> coefficients_in(ParamId var) const;
  static MultiPoly from_coefficients(const std::vector<MultiPoly>& coeffs, ParamId var);

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const BigRational& s);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const BigRational& s) { return a *= s; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly pow(unsigned n) const;

  /// Exact quotient; throws MathError if divisor does not divide *this.
  MultiPoly exact_div(const MultiPoly& divisor) const;
  /// Quotient if divisor divides *this exactly, else nullopt.
  std::optional<MultiPoly> try_div(const MultiPoly& divisor) const;

  /// Substitutes the bound parameters; unbound ones stay symbolic.
  MultiPoly eval(const std::map<ParamId, BigRational>& bindings) const;
  /// Substitutes polynomials for parameters.
  MultiPoly substitute(const std::map<ParamId, MultiPoly>& images) const;

  /// Positive rational c with this/c having coprime integer coefficients and
  /// a positive leading coefficient (c carries the sign).
  BigRational content() const;
  MultiPoly primitive_integer_part() const;
  MultiPoly monic() const;

  /// Printed in the coefficient grammar, e.g. "5*c^2-3/2*g1+1".
  std::string str() const;

 private:
  std::vector<Term> terms_;
  void normalize_terms();
};

/// Greatest common divisor, normalized to leading coefficient 1 (gcd(0,0)=0).
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

/// Rational roots of a univariate polynomial (rational-root theorem on the
/// primitive integer form). Throws MathError for zero or multivariate input.
std::vector<BigRational> rational_roots(const MultiPoly& p);

}  // namespace wbrst
