#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wbrst/scalar/rational_function.hpp"

namespace wbrst::qla {

/// Linear map V^{⊗low} -> V^{⊗up} with dim V = n.
///
/// Entries are stored row-major over the upper multi-index followed by the
/// lower multi-index, so sigma^{kl}_{ij} lives at ((k*n + l)*n + i)*n + j
/// (0-based). Products are written in the order the maps act:
/// (A*B)^K_I = sum_J A^J_I B^K_J, which is the order of the index formulas,
/// e.g. sigma12 * sigma23 * sigma12 for the braid relation.
class Tensor {
 public:
  Tensor() = default;
  Tensor(int n, int up, int low);
  static Tensor identity(int n, int factors);

  int n() const { return n_; }
  int up() const { return up_; }
  int low() const { return low_; }
  std::size_t upper_size() const { return upper_size_; }
  std::size_t lower_size() const { return lower_size_; }

  RF& operator()(std::size_t upper, std::size_t lower) { return entries_[upper * lower_size_ + lower]; }
  const RF& operator()(std::size_t upper, std::size_t lower) const { return entries_[upper * lower_size_ + lower]; }
  /// 0-based multi-indices.
  RF& at(const std::vector<int>& upper, const std::vector<int>& lower);
  const RF& at(const std::vector<int>& upper, const std::vector<int>& lower) const;
  const std::vector<RF>& entries() const { return entries_; }

  bool is_zero() const;
  bool same_shape(const Tensor& o) const { return n_ == o.n_ && up_ == o.up_ && low_ == o.low_; }

  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  Tensor& operator*=(const RF& s);
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(Tensor a, const RF& s) { return a *= s; }
  friend Tensor operator*(const RF& s, Tensor a) { return a *= s; }
  friend Tensor operator*(const Tensor& a, const Tensor& b);
  friend bool operator==(const Tensor& a, const Tensor& b) { return a.same_shape(b) && a.entries_ == b.entries_; }

  /// Splits a flat multi-index into its 0-based digits.
  std::vector<int> digits(std::size_t flat, int count) const;

  /// Nonzero entries formatted as "^{k l}_{i j} = value" with 1-based indices.
  std::vector<std::string> describe_nonzero(std::size_t limit = 8) const;

 private:
  int n_ = 0, up_ = 0, low_ = 0;
  std::size_t upper_size_ = 1, lower_size_ = 1;
  std::vector<RF> entries_;
  std::size_t flatten(const std::vector<int>& idx) const;
};

/// Written-order product: first a, then b.
Tensor compose(const Tensor& a, const Tensor& b);
Tensor kron(const Tensor& a, const Tensor& b);
/// op acting on the factors pos, pos+1, ... (1-based) of a product of
/// `factors` spaces counted on the input side.
Tensor embed(const Tensor& op, int pos, int factors);
/// Inverse of a map with up == low; throws MathError if singular.
Tensor inverse(const Tensor& t);

}  // namespace wbrst::qla
