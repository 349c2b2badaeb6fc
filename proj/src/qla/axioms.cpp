#include "wbrst/qla/axioms.hpp"

#include <stdexcept>

#include "wbrst/scalar/linear.hpp"

namespace wbrst::qla {
namespace {

int sign(int exponent) { return exponent % 2 == 0 ? 1 : -1; }

}  // namespace

TwistData TwistData::from_phi(const Tensor& phi) { return {phi, inverse(phi)}; }

bool AxiomReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const CheckResult& AxiomReport::get(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw std::out_of_range("no check named " + name);
}

void AxiomReport::add(const std::string& name, const Tensor& residual, std::string note) {
  checks.push_back({name, residual.is_zero(), residual.describe_nonzero(), std::move(note)});
}

Tensor super_permutation(const Parities& p) {
  int n = static_cast<int>(p.size());
  Tensor s(n, 2, 2);
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2) s.at({i2, i1}, {i1, i2}) = RF(sign(p[i1] * p[i2]));
  return s;
}

std::pair<Tensor, Tensor> lie_super_twist(const Parities& p) {
  int n = static_cast<int>(p.size());
  Tensor phi(n, 2, 2), st(n, 2, 2);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) {
      phi.at({k, m}, {m, k}) = RF(sign(p[k] * (p[m] + 1)));
      st.at({k, m}, {m, k}) = RF(sign(p[m] * p[k] + p[m] + p[k]));
    }
  return {phi, st};
}

Tensor sigma_at(const Tensor& sigma, int j, int k) { return embed(sigma, j, k); }

std::optional<Tensor> solve_t(const Tensor& sigma, const Tensor& c) {
  int n = sigma.n();
  Tensor m = Tensor::identity(n, 2) - sigma;
  Tensor half = c * RF(BigRational(1, 2));
  if (m * half == c) return half;
  std::size_t s = m.lower_size();
  RFMatrix a(s, std::vector<RF>(s));
  for (std::size_t jk = 0; jk < s; ++jk)
    for (std::size_t lm = 0; lm < s; ++lm) a[jk][lm] = m(lm, jk);
  Tensor t(n, 1, 2);
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
    std::vector<RF> b(s);
    for (std::size_t jk = 0; jk < s; ++jk) b[jk] = c(i, jk);
    auto x = solve_linear(a, b);
    if (!x) return std::nullopt;
    for (std::size_t lm = 0; lm < s; ++lm) t(i, lm) = (*x)[lm];
  }
  return t;
}

AxiomReport check_qla_axioms(const QlaData& d) {
  AxiomReport r;
  const Tensor& s = d.sigma;
  const Tensor& c = d.c;
  int n = d.n;
  Tensor s1 = embed(s, 1, 3), s2 = embed(s, 2, 3);
  Tensor c1 = embed(c, 1, 3), c2 = embed(c, 2, 3);
  r.add("unitarity", s * s - Tensor::identity(n, 2));
  r.add("braid", s1 * s2 * s1 - s2 * s1 * s2);
  r.add("jacobi", c1 * c - s2 * c1 * c - c2 * c);
  r.add("sigma_c_1", c1 * s - s2 * s1 * c2);
  Tensor mixed = s2 * c1 + c2;
  r.add("sigma_c_2", mixed * s - s1 * mixed);
  r.add("antisymmetry", (Tensor::identity(n, 2) + s) * c);
  r.witness_t = solve_t(s, c);
  if (r.witness_t) {
    r.add("t_exists", c - (Tensor::identity(n, 2) - s) * *r.witness_t);
  } else {
    r.checks.push_back({"t_exists", false, {}, "c = (1 - sigma) t has no solution"});
  }
  return r;
}

Tensor sigma_tilde(const Tensor& sigma, const Tensor& phi) { return phi * sigma * inverse(phi); }

AxiomReport check_twist_axioms(const Tensor& sigma, const Tensor& phi, const Tensor* c) {
  AxiomReport r;
  int n = sigma.n();
  Tensor st;
  try {
    st = sigma_tilde(sigma, phi);
  } catch (const MathError&) {
    r.checks.push_back({"phi_invertible", false, {}, "phi is singular"});
    return r;
  }
  Tensor s1 = embed(sigma, 1, 3), s2 = embed(sigma, 2, 3);
  Tensor p1 = embed(phi, 1, 3), p2 = embed(phi, 2, 3);
  Tensor t1 = embed(st, 1, 3), t2 = embed(st, 2, 3);
  r.add("twist_1", s1 * p2 * p1 - p2 * p1 * s2);
  r.add("twist_2", p1 * p2 * s1 - s2 * p1 * p2);
  r.add("phi_braid", p1 * p2 * p1 - p2 * p1 * p2);
  r.add("sigma_tilde_1", t1 * p2 * p1 - p2 * p1 * t2);
  r.add("sigma_tilde_braid", t1 * t2 * t1 - t2 * t1 * t2);
  if ((sigma * sigma) == Tensor::identity(n, 2)) r.add("sigma_tilde_unitary", st * st - Tensor::identity(n, 2));
  if (c) r.add("phi_c", p1 * p2 * embed(*c, 1, 3) - embed(*c, 2, 3) * phi);
  return r;
}

Tensor antisymmetrizer(const Tensor& sigma, int k) {
  if (k < 1) throw std::invalid_argument("antisymmetrizer needs k >= 1");
  int n = sigma.n();
  if (!(sigma * sigma == Tensor::identity(n, 2))) throw MathError("antisymmetrizer: sigma is not unitary");
  Tensor s1 = embed(sigma, 1, 3), s2 = embed(sigma, 2, 3);
  if (!(s1 * s2 * s1 == s2 * s1 * s2)) throw MathError("antisymmetrizer: sigma violates the braid relation");
  Tensor a = Tensor::identity(n, 1);
  for (int m = 1; m < k; ++m) {
    Tensor chain = Tensor::identity(n, m + 1);
    Tensor sum = chain;
    for (int j = 1; j <= m; ++j) {
      chain = embed(sigma, m - j + 1, m + 1) * chain;
      sum += chain * RF(sign(j));
    }
    a = (sum * kron(a, Tensor::identity(n, 1))) * RF(BigRational(1, m + 1));
  }
  return a;
}

Tensor higher_phi(const Tensor& phi, int i, int j) {
  if (j <= i) throw std::invalid_argument("higher_phi needs i < j");
  int m = j - i + 1;
  Tensor r = Tensor::identity(phi.n(), m);
  for (int len = m - 1; len >= 1; --len) {
    Tensor block = embed(phi, 1, m);
    for (int l = 2; l <= len; ++l) block = block * embed(phi, l, m);
    r = r * block;
  }
  return r;
}

AxiomReport check_proof_identities(const Tensor& sigma, const Tensor& c, const Tensor& phi) {
  AxiomReport r;
  int n = sigma.n();
  Tensor st;
  try {
    st = sigma_tilde(sigma, phi);
  } catch (const MathError&) {
    r.checks.push_back({"phi_invertible", false, {}, "phi is singular"});
    return r;
  }
  for (int m = 2; m <= 4; ++m) {
    Tensor hp = higher_phi(phi, 1, m);
    for (int k = 0; k <= m - 2; ++k)
      r.add("ches_" + std::to_string(m) + "_" + std::to_string(k),
            hp * embed(sigma, 1 + k, m) - embed(st, m - k - 1, m) * hp);
  }
  try {
    for (int k = 2; k <= 4; ++k) {
      Tensor a = antisymmetrizer(st, k);
      for (int j = 1; j < k; ++j)
        r.add("ches3_" + std::to_string(k) + "_" + std::to_string(j), a * embed(st, j, k) + a);
    }
    Tensor a3t = antisymmetrizer(st, 3);
    r.add("q4", a3t * higher_phi(phi, 1, 3) * (Tensor::identity(n, 3) - embed(sigma, 2, 3) * embed(sigma, 1, 3)));
  } catch (const MathError& e) {
    r.checks.push_back({"sigma_tilde_projectors", false, {}, e.what()});
  }
  try {
    Tensor a4 = antisymmetrizer(sigma, 4), a3 = antisymmetrizer(sigma, 3);
    r.add("impo_1", a4 * embed(c, 3, 4) * embed(c, 1, 3) * (Tensor::identity(n, 2) - sigma));
    r.add("impo_2", a3 * embed(c, 1, 3) * c);
  } catch (const MathError& e) {
    r.checks.push_back({"sigma_projectors", false, {}, e.what()});
  }
  return r;
}

}  // namespace wbrst::qla
