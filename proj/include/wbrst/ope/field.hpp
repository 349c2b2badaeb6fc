#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wbrst/scalar/rational_function.hpp"

namespace wbrst::ope {

/// One factor d^k g of a normal product, packed as (generator index << 16) | k
/// so that integer order is the canonical factor order.
using Factor = std::uint32_t;

inline Factor make_factor(int gen, int deriv) {
  return (static_cast<std::uint32_t>(gen) << 16) | static_cast<std::uint32_t>(deriv);
}
inline int factor_gen(Factor f) { return static_cast<int>(f >> 16); }
inline int factor_deriv(Factor f) { return static_cast<int>(f & 0xffffu); }

/// Right-nested normal product N(f1, N(f2, ... fm)) with f1 <= f2 <= ... ;
/// the empty monomial is the unit field.
using Monomial = std::vector<Factor>;

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = m.size();
    for (Factor f : m) h ^= f + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

class FieldExpr {
 public:
  using Terms = std::map<Monomial, RF>;

  FieldExpr() = default;
  static FieldExpr unit(const RF& coeff = RF(1));
  static FieldExpr monomial(Monomial m, const RF& coeff = RF(1));

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Coefficient of a monomial (zero when absent).
  RF coeff(const Monomial& m) const;
  /// True when the expression is c * unit.
  bool is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
  RF scalar_value() const { return coeff({}); }

  void add(const Monomial& m, const RF& c);
  void add_scaled(const FieldExpr& o, const RF& c);

  FieldExpr operator-() const;
  FieldExpr& operator+=(const FieldExpr& o);
  FieldExpr& operator-=(const FieldExpr& o);
  FieldExpr& operator*=(const RF& s);
  friend FieldExpr operator+(FieldExpr a, const FieldExpr& b) { return a += b; }
  friend FieldExpr operator-(FieldExpr a, const FieldExpr& b) { return a -= b; }
  friend FieldExpr operator*(FieldExpr a, const RF& s) { return a *= s; }
  friend FieldExpr operator*(const RF& s, FieldExpr a) { return a *= s; }
  friend bool operator==(const FieldExpr& a, const FieldExpr& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const FieldExpr& a, const FieldExpr& b) { return !(a == b); }

  /// Applies f to every coefficient, dropping zeros.
  FieldExpr map_coeffs(const std::function<RF(const RF&)>& f) const;

 private:
  Terms terms_;
};

/// Singular part of an OPE: pole order n >= 1 -> field.
using PoleSeries = std::map<int, FieldExpr>;

/// Removes zero poles in place.
void prune(PoleSeries& p);
bool poles_equal(PoleSeries a, PoleSeries b);

}  // namespace wbrst::ope
