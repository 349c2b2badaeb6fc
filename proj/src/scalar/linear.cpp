#include "wbrst/scalar/linear.hpp"

namespace wbrst {

Rref rref(RFMatrix m, std::size_t columns) {
  Rref out;
  std::size_t r = 0;
  for (std::size_t col = 0; col < columns && r < m.size(); ++col) {
    std::size_t p = r;
    while (p < m.size() && m[p][col].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    RF inv = RF(1) / m[r][col];
    for (std::size_t k = col; k < columns; ++k)
      if (!m[r][k].is_zero()) m[r][k] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][col].is_zero()) continue;
      RF f = m[i][col];
      for (std::size_t k = col; k < columns; ++k)
        if (!m[r][k].is_zero()) m[i][k] -= f * m[r][k];
    }
    out.pivots.push_back(static_cast<int>(col));
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

std::optional<std::vector<RF>> solve_linear(const RFMatrix& a, const std::vector<RF>& b) {
  std::size_t n = a.empty() ? 0 : a[0].size();
  RFMatrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  Rref red = rref(std::move(aug), n + 1);
  std::vector<RF> x(n);
  for (std::size_t i = 0; i < red.rows.size(); ++i) {
    if (static_cast<std::size_t>(red.pivots[i]) == n) return std::nullopt;
    x[static_cast<std::size_t>(red.pivots[i])] = red.rows[i][n];
  }
  return x;
}

RFMatrix invert(const RFMatrix& a) {
  std::size_t n = a.size();
  RFMatrix aug = a;
  for (std::size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n);
    aug[i][n + i] = RF(1);
  }
  Rref red = rref(std::move(aug), 2 * n);
  if (red.rows.size() < n || red.pivots[n - 1] >= static_cast<int>(n)) throw MathError("singular matrix");
  RFMatrix inv(n, std::vector<RF>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = red.rows[i][n + j];
  return inv;
}

}  // namespace wbrst
