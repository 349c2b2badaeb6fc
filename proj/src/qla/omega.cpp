#include "wbrst/qla/omega.hpp"

#include <algorithm>
#include <sstream>

namespace wbrst::qla {
namespace {

std::size_t ipow(int n, int k) {
  std::size_t r = 1;
  for (int i = 0; i < k; ++i) r *= static_cast<std::size_t>(n);
  return r;
}

int letter_rank(char l) { return l == 'c' ? 0 : (l == 'x' ? 1 : 2); }

int inversions(const std::string& w) {
  int inv = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (letter_rank(w[i]) > letter_rank(w[j])) ++inv;
  return inv;
}

std::string pattern(const Sector& s) {
  return std::string(static_cast<std::size_t>(s.p), 'c') + std::string(static_cast<std::size_t>(s.q), 'x') +
         std::string(static_cast<std::size_t>(s.r), 'b');
}

std::size_t reverse_digits(std::size_t w, int n, int count) {
  std::size_t r = 0;
  for (int i = 0; i < count; ++i) {
    r = r * static_cast<std::size_t>(n) + w % static_cast<std::size_t>(n);
    w /= static_cast<std::size_t>(n);
  }
  return r;
}

std::vector<RF> to_coeff(const Tensor& t) {
  std::vector<RF> v(t.upper_size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = t(i, 0);
  return v;
}

Tensor from_coeff(int n, int rank, const std::vector<RF>& v) {
  Tensor t(n, rank, 0);
  for (std::size_t i = 0; i < v.size(); ++i) t(i, 0) = v[i];
  return t;
}

bool all_zero(const std::vector<RF>& v) {
  return std::all_of(v.begin(), v.end(), [](const RF& x) { return x.is_zero(); });
}

}  // namespace

std::string Sector::str() const {
  return "(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + ")";
}

bool OmegaElement::is_zero() const {
  for (const auto& [s, t] : terms)
    if (!t.is_zero()) return false;
  return true;
}

OmegaElement& OmegaElement::operator+=(const OmegaElement& o) {
  for (const auto& [s, t] : o.terms) {
    auto it = terms.find(s);
    if (it == terms.end())
      terms.emplace(s, t);
    else
      it->second += t;
  }
  std::erase_if(terms, [](const auto& kv) { return kv.second.is_zero(); });
  return *this;
}

OmegaElement& OmegaElement::operator-=(const OmegaElement& o) {
  OmegaElement neg = o;
  neg *= RF(-1);
  return *this += neg;
}

OmegaElement& OmegaElement::operator*=(const RF& s) {
  for (auto& [k, t] : terms) t *= s;
  std::erase_if(terms, [](const auto& kv) { return kv.second.is_zero(); });
  return *this;
}

bool operator==(const OmegaElement& a, const OmegaElement& b) { return (a - b).is_zero(); }

std::vector<Sector> OmegaElement::nonzero_sectors() const {
  std::vector<Sector> out;
  for (const auto& [s, t] : terms)
    if (!t.is_zero()) out.push_back(s);
  return out;
}

std::string OmegaElement::str(std::size_t limit) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  for (const auto& [s, t] : terms) {
    if (t.is_zero()) continue;
    os << s.str() << ":";
    for (const auto& e : t.describe_nonzero(limit)) os << " [" << e << "]";
    os << "\n";
  }
  return os.str();
}

GhostNumber ghost_number(const OmegaElement& x) {
  GhostNumber g;
  bool first = true;
  for (const auto& s : x.nonzero_sectors()) {
    if (first) {
      g.value = s.ghost_number();
      first = false;
    } else if (g.value != s.ghost_number()) {
      g.mixed = true;
    }
  }
  return g;
}

OmegaAlgebra::OmegaAlgebra(const QlaData& data, const Tensor& phi, Sector cap)
    : n_(data.n), cap_(cap), data_(data), phi_(phi), sigma_tilde_(qla::sigma_tilde(data.sigma, phi)) {
  int n = n_;
  std::size_t n2 = ipow(n, 2);
  Tensor st_inv = inverse(sigma_tilde_);
  Matrix zero2(n2, std::vector<RF>(n2));
  chi_c_ = b_chi_ = b_c_ = chi_sym_ = zero2;
  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb)
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          std::size_t in = static_cast<std::size_t>(a * n + bb), out = static_cast<std::size_t>(x * n + y);
          // chi_m c^n -> c^l phi^{kn}_{lm} chi_k with (m,n)=(a,bb), (l,k)=(x,y)
          chi_c_[in][out] = phi_.at({y, bb}, {x, a});
          // b_m chi_n -> phi^{kl}_{mn} chi_k b_l with (k,l)=(x,y)
          b_chi_[in][out] = phi_.at({x, y}, {a, bb});
          // b_i c^k -> -c^j (st^{-1})^{nk}_{ji} b_n with (i,k)=(a,bb), (j,n)=(x,y)
          b_c_[in][out] = -st_inv.at({y, bb}, {x, a});
        }
  contract_.assign(n2, std::vector<RF>(1));
  for (int i = 0; i < n; ++i) contract_[static_cast<std::size_t>(i * n + i)][0] = RF(1);
  Tensor sym = (Tensor::identity(n, 2) + data_.sigma) * RF(BigRational(1, 2));
  chi_lin_.assign(n2, std::vector<RF>(static_cast<std::size_t>(n)));
  for (std::size_t i = 0; i < n2; ++i) {
    for (std::size_t j = 0; j < n2; ++j) chi_sym_[i][j] = sym(j, i);
    for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) chi_lin_[i][k] = data_.c(k, i) * RF(BigRational(1, 2));
  }
  for (int p = 2; p <= cap_.p; ++p) {
    Tensor a = antisymmetrizer(sigma_tilde_, p);
    std::size_t s = ipow(n, p);
    Matrix m(s, std::vector<RF>(s));
    for (std::size_t w = 0; w < s; ++w)
      for (std::size_t w2 = 0; w2 < s; ++w2) m[w][w2] = a(reverse_digits(w, n, p), reverse_digits(w2, n, p));
    c_proj_[p] = std::move(m);
  }
  for (int r = 2; r <= cap_.r; ++r) {
    Tensor a = antisymmetrizer(sigma_tilde_, r);
    std::size_t s = ipow(n, r);
    Matrix m(s, std::vector<RF>(s));
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) m[i][j] = a(j, i);
    b_proj_[r] = std::move(m);
  }
}

OmegaAlgebra::Coeff OmegaAlgebra::apply_slots(const Coeff& in, int rank, int start, int kin, int kout,
                                              const Matrix& m) const {
  std::size_t pre = ipow(n_, start), post = ipow(n_, rank - start - kin);
  std::size_t ni = ipow(n_, kin), nj = ipow(n_, kout);
  Coeff out(pre * nj * post);
  std::vector<std::vector<std::pair<std::size_t, const RF*>>> rows(ni);
  for (std::size_t i = 0; i < ni; ++i)
    for (std::size_t j = 0; j < nj; ++j)
      if (!m[i][j].is_zero()) rows[i].emplace_back(j, &m[i][j]);
  for (std::size_t a = 0; a < pre; ++a)
    for (std::size_t i = 0; i < ni; ++i)
      for (std::size_t s = 0; s < post; ++s) {
        const RF& x = in[(a * ni + i) * post + s];
        if (x.is_zero()) continue;
        for (const auto& [j, v] : rows[i]) out[(a * nj + j) * post + s] += x * *v;
      }
  return out;
}

std::map<std::string, OmegaAlgebra::Coeff> OmegaAlgebra::normal_order(std::map<std::string, Coeff> words) const {
  auto add = [&](const std::string& w, Coeff c) {
    if (all_zero(c)) return;
    auto it = words.find(w);
    if (it == words.end()) {
      words.emplace(w, std::move(c));
    } else {
      for (std::size_t i = 0; i < c.size(); ++i)
        if (!c[i].is_zero()) it->second[i] += c[i];
    }
  };
  while (true) {
    auto best = words.end();
    std::pair<std::size_t, int> key{0, 0};
    for (auto it = words.begin(); it != words.end(); ++it) {
      int inv = inversions(it->first);
      if (inv == 0) continue;
      std::pair<std::size_t, int> k{it->first.size(), inv};
      if (best == words.end() || k > key) {
        best = it;
        key = k;
      }
    }
    if (best == words.end()) break;
    std::string w = best->first;
    Coeff x = std::move(best->second);
    words.erase(best);
    int rank = static_cast<int>(w.size());
    std::size_t pos = 0;
    while (letter_rank(w[pos]) <= letter_rank(w[pos + 1])) ++pos;
    int at = static_cast<int>(pos);
    std::string pair = w.substr(pos, 2);
    std::string swapped = w;
    std::swap(swapped[pos], swapped[pos + 1]);
    if (pair == "xc") {
      add(swapped, apply_slots(x, rank, at, 2, 2, chi_c_));
    } else if (pair == "bx") {
      add(swapped, apply_slots(x, rank, at, 2, 2, b_chi_));
    } else {
      add(swapped, apply_slots(x, rank, at, 2, 2, b_c_));
      add(w.substr(0, pos) + w.substr(pos + 2), apply_slots(x, rank, at, 2, 0, contract_));
    }
  }
  return words;
}

void OmegaAlgebra::canonical_into(const Sector& s, Coeff x, OmegaElement& out) const {
  if (s.p > cap_.p || s.q > cap_.q || s.r > cap_.r || s.q > 2)
    throw SectorOverflow("sector " + s.str() + " exceeds the cap " + cap_.str());
  int rank = s.rank();
  if (s.p >= 2) x = apply_slots(x, rank, 0, s.p, s.p, c_proj_.at(s.p));
  if (s.r >= 2) x = apply_slots(x, rank, s.p + s.q, s.r, s.r, b_proj_.at(s.r));
  if (s.q == 2) {
    Coeff lin = apply_slots(x, rank, s.p, 2, 1, chi_lin_);
    x = apply_slots(x, rank, s.p, 2, 2, chi_sym_);
    if (!all_zero(lin)) {
      OmegaElement part;
      Sector low{s.p, 1, s.r};
      part.terms.emplace(low, from_coeff(n_, low.rank(), lin));
      out += part;
    }
  }
  if (all_zero(x)) return;
  OmegaElement part;
  part.terms.emplace(s, from_coeff(n_, rank, x));
  out += part;
}

OmegaElement OmegaAlgebra::canonicalize(const OmegaElement& x) const {
  OmegaElement out;
  for (const auto& [s, t] : x.terms) canonical_into(s, to_coeff(t), out);
  return out;
}

OmegaElement OmegaAlgebra::multiply(const OmegaElement& x, const OmegaElement& y) const {
  std::map<std::string, Coeff> words;
  for (const auto& [sx, tx] : x.terms)
    for (const auto& [sy, ty] : y.terms) {
      std::string w = pattern(sx) + pattern(sy);
      std::size_t ny = ty.upper_size();
      Coeff c(tx.upper_size() * ny);
      for (std::size_t i = 0; i < tx.upper_size(); ++i) {
        const RF& a = tx(i, 0);
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < ny; ++j)
          if (!ty(j, 0).is_zero()) c[i * ny + j] = a * ty(j, 0);
      }
      auto it = words.find(w);
      if (it == words.end()) {
        words.emplace(w, std::move(c));
      } else {
        for (std::size_t i = 0; i < c.size(); ++i) it->second[i] += c[i];
      }
    }
  OmegaElement out;
  for (auto& [w, c] : normal_order(std::move(words))) {
    Sector s{static_cast<int>(std::count(w.begin(), w.end(), 'c')), static_cast<int>(std::count(w.begin(), w.end(), 'x')),
             static_cast<int>(std::count(w.begin(), w.end(), 'b'))};
    canonical_into(s, std::move(c), out);
  }
  return out;
}

OmegaElement OmegaAlgebra::generator(char letter, int i) const {
  Sector s{letter == 'c' ? 1 : 0, letter == 'x' ? 1 : 0, letter == 'b' ? 1 : 0};
  Tensor t(n_, 1, 0);
  t(static_cast<std::size_t>(i), 0) = RF(1);
  OmegaElement e;
  e.terms.emplace(s, t);
  return e;
}

OmegaElement OmegaAlgebra::unit() const { return scalar(RF(1)); }

OmegaElement OmegaAlgebra::scalar(const RF& s) const {
  OmegaElement e;
  if (s.is_zero()) return e;
  Tensor t(n_, 0, 0);
  t(0, 0) = s;
  e.terms.emplace(Sector{}, t);
  return e;
}

OmegaElement OmegaAlgebra::c(int i) const { return generator('c', i); }
OmegaElement OmegaAlgebra::chi(int i) const { return generator('x', i); }
OmegaElement OmegaAlgebra::b(int i) const { return generator('b', i); }

OmegaElement OmegaAlgebra::build_q() const {
  int n = n_;
  OmegaElement q;
  Tensor lin(n, 2, 0);
  for (int i = 0; i < n; ++i) lin.at({i, i}, {}) = RF(1);
  q.terms.emplace(Sector{1, 1, 0}, lin);
  Tensor pc = phi_ * data_.c;
  Tensor gh(n, 3, 0);
  for (int k1 = 0; k1 < n; ++k1)
    for (int k2 = 0; k2 < n; ++k2)
      for (int l = 0; l < n; ++l) gh.at({k2, k1, l}, {}) = pc.at({l}, {k1, k2}) * RF(BigRational(-1, 2));
  if (!gh.is_zero()) q.terms.emplace(Sector{2, 0, 1}, gh);
  return canonicalize(q);
}

NilpotencyResult verify_nilpotent(const OmegaAlgebra& alg, const OmegaElement& q) {
  NilpotencyResult r;
  r.residual = alg.multiply(q, q);
  r.zero = r.residual.is_zero();
  return r;
}

}  // namespace wbrst::qla
