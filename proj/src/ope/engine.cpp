#include "wbrst/ope/engine.hpp"

namespace wbrst::ope {
namespace {

constexpr Factor kSep = 0xffffffffu;

Monomial pair_key(const Monomial& a, const Monomial& b) {
  Monomial k;
  k.reserve(a.size() + b.size() + 1);
  k.insert(k.end(), a.begin(), a.end());
  k.push_back(kSep);
  k.insert(k.end(), b.begin(), b.end());
  return k;
}

RF inv_factorial(long n) { return RF(1 / factorial(n)); }

}  // namespace

OpeEngine::DepthGuard::DepthGuard(OpeEngine& e) : e_(e) {
  if (++e_.depth_ > e_.max_depth_) {
    e_.depth_ = 0;
    throw RewriteFuelExhausted("OPE rewriting exceeded depth " + std::to_string(e_.max_depth_));
  }
}

OpeEngine::OpeEngine(OpeAlgebra alg, int max_depth, RuleSet rules)
    : alg_(std::move(alg)), max_depth_(max_depth), rules_(rules) {}

std::size_t OpeEngine::cache_entries() const {
  return ope_cache_.size() + insert_cache_.size() + np_cache_.size() + deriv_cache_.size();
}

PoleSeries OpeEngine::flip(const PoleSeries& ab, bool a_odd, bool b_odd) {
  PoleSeries out;
  if (ab.empty()) return out;
  int top = ab.rbegin()->first;
  RF sign(a_odd && b_odd ? -1 : 1);
  for (int n = 1; n <= top; ++n) {
    FieldExpr acc;
    for (const auto& [l, e] : ab) {
      if (l < n) continue;
      RF coeff = sign * RF((l % 2 == 0) ? 1 : -1) * inv_factorial(l - n);
      acc.add_scaled(derivative(e, l - n), coeff);
    }
    if (!acc.is_zero()) out[n] = std::move(acc);
  }
  return out;
}

const PoleSeries& OpeEngine::ope_gen(Factor a, Factor b) {
  Monomial key = pair_key({a}, {b});
  if (auto it = ope_cache_.find(key); it != ope_cache_.end()) return it->second;
  DepthGuard guard(*this);
  PoleSeries out;
  int ga = factor_gen(a), gb = factor_gen(b);
  if (factor_deriv(a) > 0) {
    PoleSeries p = ope_gen(a - 1, b);
    for (const auto& [n, e] : p)
      if (n >= 1) out[n + 1] = e * RF(-n);
  } else if (factor_deriv(b) > 0) {
    PoleSeries q = ope_gen(a, b - 1);
    for (const auto& [n, e] : q) {
      out[n] += derivative(e);
      out[n + 1].add_scaled(e, RF(n));
    }
  } else if (const PoleSeries* s = alg_.stored(ga, gb)) {
    out = *s;
  } else if (const PoleSeries* r = alg_.stored(gb, ga)) {
    out = flip(*r, alg_.generator(gb).odd, alg_.generator(ga).odd);
  } else if (!alg_.declared_regular(ga, gb)) {
    throw TableGap("no OPE given for the pair (" + alg_.generator(ga).name + ", " + alg_.generator(gb).name + ")");
  }
  prune(out);
  return ope_cache_.emplace(std::move(key), std::move(out)).first->second;
}

const PoleSeries& OpeEngine::ope_mono(const Monomial& a, const Monomial& b) {
  static const PoleSeries empty;
  if (a.empty() || b.empty()) return empty;
  if (a.size() == 1 && b.size() == 1) return ope_gen(a[0], b[0]);
  Monomial key = pair_key(a, b);
  if (auto it = ope_cache_.find(key); it != ope_cache_.end()) return it->second;
  DepthGuard guard(*this);
  PoleSeries out;
  if (b.size() >= 2) {
    Factor bf = b[0];
    Monomial c(b.begin() + 1, b.end());
    bool sign_neg = alg_.odd(a) && odd(bf);
    PoleSeries ac = ope_mono(a, c);
    for (const auto& [n, e] : ac) out[n].add_scaled(insert_expr(bf, e), RF(sign_neg ? -1 : 1));
    PoleSeries xb = ope_mono(a, {bf});
    for (const auto& [m, em] : xb) {
      out[m] += normal_product(em, FieldExpr::monomial(c));
      PoleSeries p = ope_expr_mono(em, c);
      for (const auto& [k, ek] : p)
        out[m + k].add_scaled(ek, rules_.wick_binomial ? RF(binomial(BigRational(m + k - 1), m - 1)) : RF(1));
    }
  } else {
    PoleSeries rev = ope_mono(b, a);
    out = flip(rev, alg_.odd(b), alg_.odd(a));
  }
  prune(out);
  return ope_cache_.emplace(std::move(key), std::move(out)).first->second;
}

PoleSeries OpeEngine::ope_expr_mono(const FieldExpr& x, const Monomial& b) {
  PoleSeries out;
  for (const auto& [m, c] : x.terms()) {
    const PoleSeries& p = ope_mono(m, b);
    for (const auto& [n, e] : p) out[n].add_scaled(e, c);
  }
  prune(out);
  return out;
}

PoleSeries OpeEngine::ope(const FieldExpr& x, const FieldExpr& y) {
  PoleSeries out;
  for (const auto& [mb, cb] : y.terms()) {
    for (const auto& [ma, ca] : x.terms()) {
      const PoleSeries& p = ope_mono(ma, mb);
      if (p.empty()) continue;
      RF c = ca * cb;
      for (const auto& [n, e] : p) out[n].add_scaled(e, c);
    }
  }
  prune(out);
  auto gx = alg_.grading(x), gy = alg_.grading(y);
  if (gx && gy) {
    for (const auto& [n, e] : out) {
      auto g = alg_.grading(e);
      Grading want{gx->weight + gy->weight - n, gx->odd != gy->odd, gx->ghost + gy->ghost};
      if (!g || !(*g == want)) throw std::logic_error("grading violated at pole " + std::to_string(n));
    }
  }
  return out;
}

FieldExpr OpeEngine::pole(const FieldExpr& x, const FieldExpr& y, int n) {
  PoleSeries p = ope(x, y);
  auto it = p.find(n);
  return it == p.end() ? FieldExpr() : it->second;
}

const FieldExpr& OpeEngine::insert(Factor a, const Monomial& m) {
  Monomial key;
  key.reserve(m.size() + 1);
  key.push_back(a);
  key.insert(key.end(), m.begin(), m.end());
  if (auto it = insert_cache_.find(key); it != insert_cache_.end()) return it->second;
  if (m.empty() || a < m[0] || (a == m[0] && !odd(a)))
    return insert_cache_.emplace(key, FieldExpr::monomial(key)).first->second;
  DepthGuard guard(*this);
  FieldExpr out;
  Factor b = m[0];
  Monomial x(m.begin() + 1, m.end());
  FieldExpr xm = FieldExpr::monomial(x);
  if (a == b) {
    const PoleSeries& aa = ope_gen(a, a);
    FieldExpr s;
    for (const auto& [l, e] : aa) s.add_scaled(derivative(e, l), RF(l % 2 == 1 ? 1 : -1) * inv_factorial(l));
    out.add_scaled(normal_product(s, xm), RF(BigRational(1, 2)));
  } else {
    bool sign_neg = odd(a) && odd(b);
    out.add_scaled(insert_expr(b, insert(a, x)), RF(sign_neg ? -1 : 1));
    PoleSeries ab = ope_gen(a, b);
    for (const auto& [l, e] : ab)
      out.add_scaled(normal_product(derivative(e, l), xm), RF(l % 2 == 1 ? 1 : -1) * inv_factorial(l));
  }
  return insert_cache_.emplace(std::move(key), std::move(out)).first->second;
}

FieldExpr OpeEngine::insert_expr(Factor a, const FieldExpr& x) {
  FieldExpr out;
  for (const auto& [m, c] : x.terms()) out.add_scaled(insert(a, m), c);
  return out;
}

const FieldExpr& OpeEngine::np_mono(const Monomial& a, const Monomial& b) {
  Monomial key = pair_key(a, b);
  if (auto it = np_cache_.find(key); it != np_cache_.end()) return it->second;
  DepthGuard guard(*this);
  FieldExpr out;
  if (a.empty()) {
    out = FieldExpr::monomial(b);
  } else if (b.empty()) {
    out = FieldExpr::monomial(a);
  } else if (a.size() == 1) {
    out = insert(a[0], b);
  } else {
    Factor af = a[0];
    Monomial r(a.begin() + 1, a.end());
    FieldExpr rm = FieldExpr::monomial(r);
    out = insert_expr(af, np_mono(r, b));
    PoleSeries rb = ope_mono(r, b);
    for (const auto& [l, e] : rb) out.add_scaled(insert_expr(af + static_cast<Factor>(l), e), inv_factorial(l));
    PoleSeries ab = ope_mono({af}, b);
    bool sign_neg = odd(af) && alg_.odd(r);
    for (const auto& [l, e] : ab)
      out.add_scaled(normal_product(derivative(rm, l), e), inv_factorial(l) * RF(sign_neg ? -1 : 1));
  }
  return np_cache_.emplace(std::move(key), std::move(out)).first->second;
}

FieldExpr OpeEngine::normal_product(const FieldExpr& x, const FieldExpr& y) {
  FieldExpr out;
  for (const auto& [ma, ca] : x.terms())
    for (const auto& [mb, cb] : y.terms()) out.add_scaled(np_mono(ma, mb), ca * cb);
  return out;
}

const FieldExpr& OpeEngine::deriv_mono(const Monomial& m) {
  if (auto it = deriv_cache_.find(m); it != deriv_cache_.end()) return it->second;
  DepthGuard guard(*this);
  FieldExpr out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    FieldExpr e = FieldExpr::monomial(Monomial(m.begin() + static_cast<long>(i) + 1, m.end()));
    e = insert_expr(m[i] + 1, e);
    for (std::size_t j = i; j-- > 0;) e = insert_expr(m[j], e);
    out += e;
  }
  return deriv_cache_.emplace(m, std::move(out)).first->second;
}

FieldExpr OpeEngine::derivative(const FieldExpr& x, int k) {
  FieldExpr cur = x;
  for (int i = 0; i < k; ++i) {
    FieldExpr next;
    for (const auto& [m, c] : cur.terms()) next.add_scaled(deriv_mono(m), c);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace wbrst::ope
