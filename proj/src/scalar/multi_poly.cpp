#include "wbrst/scalar/multi_poly.hpp"

#include <algorithm>
#include <sstream>

namespace wbrst {

unsigned total_degree(const PolyMonomial& m) {
  unsigned d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

int grlex_compare(const PolyMonomial& a, const PolyMonomial& b) {
  unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db ? -1 : 1;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first == b[j].first) {
      if (a[i].second != b[j].second) return a[i].second < b[j].second ? -1 : 1;
      ++i;
      ++j;
    } else {
      return a[i].first < b[j].first ? 1 : -1;
    }
  }
  if (i < a.size()) return 1;
  if (j < b.size()) return -1;
  return 0;
}

namespace {

PolyMonomial mono_mul(const PolyMonomial& a, const PolyMonomial& b) {
  PolyMonomial r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.push_back(b[j++]);
    } else {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

// a / b if every exponent of b is at most the matching exponent of a.
std::optional<PolyMonomial> mono_div(const PolyMonomial& a, const PolyMonomial& b) {
  PolyMonomial r;
  std::size_t i = 0;
  for (const auto& [v, e] : b) {
    while (i < a.size() && a[i].first < v) r.push_back(a[i++]);
    if (i == a.size() || a[i].first != v || a[i].second < e) return std::nullopt;
    if (a[i].second > e) r.emplace_back(v, a[i].second - e);
    ++i;
  }
  while (i < a.size()) r.push_back(a[i++]);
  return r;
}

bool desc(const MultiPoly::Term& x, const MultiPoly::Term& y) { return grlex_compare(x.mono, y.mono) > 0; }

}  // namespace

MultiPoly::MultiPoly(const BigRational& constant) {
  if (constant != 0) terms_.push_back({{}, constant});
}

MultiPoly MultiPoly::variable(ParamId id, std::uint32_t power) {
  MultiPoly p;
  if (power == 0) return MultiPoly(1);
  p.terms_.push_back({{{id, power}}, BigRational(1)});
  return p;
}

MultiPoly MultiPoly::variable(const std::string& name, std::uint32_t power) {
  return variable(ParamRegistry::id(name), power);
}

MultiPoly MultiPoly::from_terms(std::vector<Term> terms) {
  MultiPoly p;
  p.terms_ = std::move(terms);
  p.normalize_terms();
  return p;
}

void MultiPoly::normalize_terms() {
  std::sort(terms_.begin(), terms_.end(), desc);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  terms_ = std::move(out);
}

BigRational MultiPoly::constant_value() const {
  if (!is_constant()) throw MathError("polynomial is not constant: " + str());
  return terms_.empty() ? BigRational(0) : terms_[0].coeff;
}

unsigned MultiPoly::total_degree() const { return terms_.empty() ? 0 : wbrst::total_degree(terms_.front().mono); }

std::vector<ParamId> MultiPoly::variables() const {
  std::vector<ParamId> vs;
  for (const auto& t : terms_)
    for (const auto& [v, e] : t.mono) vs.push_back(v);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

unsigned MultiPoly::degree_in(ParamId var) const {
  unsigned d = 0;
  for (const auto& t : terms_)
    for (const auto& [v, e] : t.mono)
      if (v == var) d = std::max<unsigned>(d, e);
  return d;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(ParamId var) const {
  std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
  for (const auto& t : terms_) {
    Term rest{{}, t.coeff};
    unsigned e = 0;
    for (const auto& ve : t.mono) {
      if (ve.first == var)
        e = ve.second;
      else
        rest.mono.push_back(ve);
    }
    buckets[e].push_back(std::move(rest));
  }
  std::vector<MultiPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

MultiPoly MultiPoly::from_coefficients(const std::vector<MultiPoly>& coeffs, ParamId var) {
  MultiPoly r;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    r += coeffs[k] * variable(var, static_cast<std::uint32_t>(k));
  }
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int cmp = i == terms_.size()     ? -1
              : j == o.terms_.size() ? 1
                                     : grlex_compare(terms_[i].mono, o.terms_[j].mono);
    if (cmp > 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (cmp < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      BigRational s = terms_[i].coeff + o.terms_[j].coeff;
      if (s != 0) out.push_back({std::move(terms_[i].mono), s});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (b.is_constant()) return a * b.terms_[0].coeff;
  if (a.is_constant()) return b * a.terms_[0].coeff;
  std::vector<MultiPoly::Term> ts;
  ts.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) ts.push_back({mono_mul(x.mono, y.mono), x.coeff * y.coeff});
  return MultiPoly::from_terms(std::move(ts));
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const BigRational& s) {
  if (s == 0) {
    terms_.clear();
  } else if (s != 1) {
    for (auto& t : terms_) t.coeff *= s;
  }
  return *this;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].coeff != b.terms_[i].coeff || a.terms_[i].mono != b.terms_[i].mono) return false;
  return true;
}

MultiPoly MultiPoly::pow(unsigned n) const {
  MultiPoly r(1), base = *this;
  while (n) {
    if (n & 1u) r *= base;
    n >>= 1u;
    if (n) base *= base;
  }
  return r;
}

std::optional<MultiPoly> MultiPoly::try_div(const MultiPoly& d) const {
  if (d.is_zero()) throw MathError("polynomial division by zero");
  if (d.is_constant()) return *this * (1 / d.terms_[0].coeff);
  MultiPoly p = *this, q;
  const Term& lt = d.terms_.front();
  while (!p.is_zero()) {
    auto m = mono_div(p.terms_.front().mono, lt.mono);
    if (!m) return std::nullopt;
    MultiPoly t;
    t.terms_.push_back({std::move(*m), p.terms_.front().coeff / lt.coeff});
    q += t;
    p -= t * d;
  }
  return q;
}

MultiPoly MultiPoly::exact_div(const MultiPoly& d) const {
  auto q = try_div(d);
  if (!q) throw MathError("inexact polynomial division: (" + str() + ")/(" + d.str() + ")");
  return *q;
}

MultiPoly MultiPoly::eval(const std::map<ParamId, BigRational>& bindings) const {
  if (bindings.empty()) return *this;
  std::vector<Term> ts;
  ts.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term r{{}, t.coeff};
    for (const auto& [v, e] : t.mono) {
      auto it = bindings.find(v);
      if (it == bindings.end()) {
        r.mono.emplace_back(v, e);
      } else {
        BigRational p = 1;
        for (unsigned k = 0; k < e; ++k) p *= it->second;
        r.coeff *= p;
      }
    }
    if (r.coeff != 0) ts.push_back(std::move(r));
  }
  return from_terms(std::move(ts));
}

MultiPoly MultiPoly::substitute(const std::map<ParamId, MultiPoly>& images) const {
  MultiPoly out;
  for (const auto& t : terms_) {
    MultiPoly term(t.coeff);
    PolyMonomial kept;
    for (const auto& [v, e] : t.mono) {
      auto it = images.find(v);
      if (it == images.end())
        kept.emplace_back(v, e);
      else
        term *= it->second.pow(e);
    }
    MultiPoly km;
    km.terms_.push_back({std::move(kept), BigRational(1)});
    out += term * km;
  }
  return out;
}

BigRational MultiPoly::content() const {
  if (is_zero()) return 0;
  BigInteger g = 0, l = 1;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  g = abs(g);
  BigRational c(g, l);
  c.canonicalize();
  if (leading_coeff() < 0) c = -c;
  return c;
}

MultiPoly MultiPoly::primitive_integer_part() const {
  if (is_zero()) return {};
  return *this * (1 / content());
}

MultiPoly MultiPoly::monic() const {
  if (is_zero()) return {};
  return *this * (1 / leading_coeff());
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    BigRational c = t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (neg)
      os << "-";
    else if (!first)
      os << "+";
    first = false;
    bool unit = c == 1 && !t.mono.empty();
    if (!unit) os << c.get_str();
    bool star = !unit;
    for (const auto& [v, e] : t.mono) {
      if (star) os << "*";
      star = true;
      os << ParamRegistry::name(v);
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

namespace {

MultiPoly content_in(const MultiPoly& p, ParamId var) {
  MultiPoly g;
  for (const auto& c : p.coefficients_in(var)) {
    g = gcd(g, c);
    if (g.is_constant() && !g.is_zero()) return MultiPoly(1);
  }
  return g;
}

MultiPoly pseudo_remainder(MultiPoly f, const MultiPoly& g, ParamId x) {
  unsigned dg = g.degree_in(x);
  MultiPoly lc = g.coefficients_in(x).back();
  while (!f.is_zero() && f.degree_in(x) >= dg) {
    unsigned df = f.degree_in(x);
    MultiPoly lf = f.coefficients_in(x).back();
    f = lc * f - lf * MultiPoly::variable(x, df - dg) * g;
    f = f.primitive_integer_part();
  }
  return f;
}

}  // namespace

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return MultiPoly(1);
  if (a == b) return a.monic();
  auto va = a.variables(), vb = b.variables();
  ParamId x = std::min(va.front(), vb.front());
  bool in_a = a.contains(x), in_b = b.contains(x);
  if (!in_a) return gcd(a, content_in(b, x));
  if (!in_b) return gcd(content_in(a, x), b);
  MultiPoly ca = content_in(a, x), cb = content_in(b, x);
  MultiPoly f = a.exact_div(ca), g = b.exact_div(cb);
  if (f.degree_in(x) < g.degree_in(x)) std::swap(f, g);
  MultiPoly h;
  while (true) {
    MultiPoly r = pseudo_remainder(f, g, x);
    if (r.is_zero()) {
      h = g;
      break;
    }
    if (r.degree_in(x) == 0) {
      h = MultiPoly(1);
      break;
    }
    f = g;
    g = r.exact_div(content_in(r, x));
  }
  if (!h.is_constant()) h = h.exact_div(content_in(h, x));
  return (gcd(ca, cb) * h).monic();
}

namespace {

std::vector<BigInteger> divisors(BigInteger n) {
  n = abs(n);
  std::vector<BigInteger> small, large;
  for (BigInteger d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::vector<BigRational> rational_roots(const MultiPoly& p) {
  if (p.is_zero()) throw MathError("rational_roots of the zero polynomial");
  auto vars = p.variables();
  if (vars.size() > 1) throw MathError("rational_roots needs a univariate polynomial, got " + p.str());
  if (vars.empty()) return {};
  ParamId x = vars[0];
  auto coeffs = p.primitive_integer_part().coefficients_in(x);
  std::vector<BigInteger> a;
  for (const auto& c : coeffs) a.push_back(c.constant_value().get_num());
  std::vector<BigRational> roots;
  std::size_t low = 0;
  while (a[low] == 0) ++low;
  if (low > 0) roots.push_back(0);
  a.erase(a.begin(), a.begin() + static_cast<long>(low));
  if (a.size() > 1) {
    auto eval = [&](const BigRational& r) {
      BigRational v = 0;
      for (auto it = a.rbegin(); it != a.rend(); ++it) v = v * r + BigRational(*it);
      return v;
    };
    for (const auto& num : divisors(a.front()))
      for (const auto& den : divisors(a.back()))
        for (int sign : {1, -1}) {
          BigRational r(num * sign, den);
          r.canonicalize();
          if (std::find(roots.begin(), roots.end(), r) == roots.end() && eval(r) == 0) roots.push_back(r);
        }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace wbrst
