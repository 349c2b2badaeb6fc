#include "wbrst/qla/tensor.hpp"

#include <stdexcept>

#include "wbrst/scalar/linear.hpp"

namespace wbrst::qla {
namespace {

std::size_t ipow(int n, int k) {
  std::size_t r = 1;
  for (int i = 0; i < k; ++i) r *= static_cast<std::size_t>(n);
  return r;
}

}  // namespace

Tensor::Tensor(int n, int up, int low)
    : n_(n), up_(up), low_(low), upper_size_(ipow(n, up)), lower_size_(ipow(n, low)),
      entries_(upper_size_ * lower_size_) {
  if (n <= 0 || up < 0 || low < 0) throw std::invalid_argument("bad tensor shape");
}

Tensor Tensor::identity(int n, int factors) {
  Tensor t(n, factors, factors);
  for (std::size_t i = 0; i < t.lower_size_; ++i) t(i, i) = RF(1);
  return t;
}

std::size_t Tensor::flatten(const std::vector<int>& idx) const {
  std::size_t f = 0;
  for (int i : idx) {
    if (i < 0 || i >= n_) throw std::out_of_range("tensor index out of range");
    f = f * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
  }
  return f;
}

RF& Tensor::at(const std::vector<int>& upper, const std::vector<int>& lower) {
  if (static_cast<int>(upper.size()) != up_ || static_cast<int>(lower.size()) != low_)
    throw std::invalid_argument("tensor index rank mismatch");
  return (*this)(flatten(upper), flatten(lower));
}

const RF& Tensor::at(const std::vector<int>& upper, const std::vector<int>& lower) const {
  return const_cast<Tensor*>(this)->at(upper, lower);
}

bool Tensor::is_zero() const {
  for (const auto& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

Tensor& Tensor::operator+=(const Tensor& o) {
  if (!same_shape(o)) throw std::invalid_argument("tensor shape mismatch in +");
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (!o.entries_[i].is_zero()) entries_[i] += o.entries_[i];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
  if (!same_shape(o)) throw std::invalid_argument("tensor shape mismatch in -");
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (!o.entries_[i].is_zero()) entries_[i] -= o.entries_[i];
  return *this;
}

Tensor& Tensor::operator*=(const RF& s) {
  for (auto& e : entries_)
    if (!e.is_zero()) e *= s;
  return *this;
}

Tensor operator*(const Tensor& a, const Tensor& b) { return compose(a, b); }

std::vector<int> Tensor::digits(std::size_t flat, int count) const {
  std::vector<int> d(static_cast<std::size_t>(count));
  for (int i = count - 1; i >= 0; --i) {
    d[static_cast<std::size_t>(i)] = static_cast<int>(flat % static_cast<std::size_t>(n_));
    flat /= static_cast<std::size_t>(n_);
  }
  return d;
}

std::vector<std::string> Tensor::describe_nonzero(std::size_t limit) const {
  std::vector<std::string> out;
  auto join = [](const std::vector<int>& d) {
    std::string s;
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? " " : "") + std::to_string(d[i] + 1);
    return s;
  };
  for (std::size_t u = 0; u < upper_size_ && out.size() < limit; ++u)
    for (std::size_t l = 0; l < lower_size_ && out.size() < limit; ++l) {
      const RF& e = (*this)(u, l);
      if (!e.is_zero()) out.push_back("^{" + join(digits(u, up_)) + "}_{" + join(digits(l, low_)) + "} = " + e.str());
    }
  return out;
}

Tensor compose(const Tensor& a, const Tensor& b) {
  if (a.n() != b.n() || a.up() != b.low()) throw std::invalid_argument("tensor composition shape mismatch");
  Tensor r(a.n(), b.up(), a.low());
  for (std::size_t i = 0; i < a.lower_size(); ++i)
    for (std::size_t j = 0; j < a.upper_size(); ++j) {
      const RF& x = a(j, i);
      if (x.is_zero()) continue;
      for (std::size_t k = 0; k < b.upper_size(); ++k) {
        const RF& y = b(k, j);
        if (!y.is_zero()) r(k, i) += x * y;
      }
    }
  return r;
}

Tensor kron(const Tensor& a, const Tensor& b) {
  if (a.n() != b.n()) throw std::invalid_argument("tensor dimension mismatch in kron");
  Tensor r(a.n(), a.up() + b.up(), a.low() + b.low());
  for (std::size_t ku = 0; ku < a.upper_size(); ++ku)
    for (std::size_t il = 0; il < a.lower_size(); ++il) {
      const RF& x = a(ku, il);
      if (x.is_zero()) continue;
      for (std::size_t ku2 = 0; ku2 < b.upper_size(); ++ku2)
        for (std::size_t il2 = 0; il2 < b.lower_size(); ++il2) {
          const RF& y = b(ku2, il2);
          if (!y.is_zero()) r(ku * b.upper_size() + ku2, il * b.lower_size() + il2) = x * y;
        }
    }
  return r;
}

Tensor embed(const Tensor& op, int pos, int factors) {
  int after = factors - (pos - 1) - op.low();
  if (pos < 1 || after < 0) throw std::invalid_argument("embedding does not fit");
  Tensor r = op;
  if (pos > 1) r = kron(Tensor::identity(op.n(), pos - 1), r);
  if (after > 0) r = kron(r, Tensor::identity(op.n(), after));
  return r;
}

Tensor inverse(const Tensor& t) {
  if (t.up() != t.low()) throw std::invalid_argument("inverse of a non-square tensor");
  std::size_t s = t.lower_size();
  RFMatrix m(s, std::vector<RF>(s));
  for (std::size_t l = 0; l < s; ++l)
    for (std::size_t u = 0; u < s; ++u) m[l][u] = t(u, l);
  RFMatrix inv = invert(m);
  Tensor r(t.n(), t.up(), t.low());
  for (std::size_t l = 0; l < s; ++l)
    for (std::size_t u = 0; u < s; ++u) r(u, l) = inv[l][u];
  return r;
}

}  // namespace wbrst::qla
