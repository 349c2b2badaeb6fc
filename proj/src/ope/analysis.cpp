#include "wbrst/ope/analysis.hpp"

#include <algorithm>
#include <functional>

#include "wbrst/scalar/linear.hpp"

namespace wbrst::ope {
namespace {

std::string grading_str(const Grading& g) {
  return "weight " + g.weight.get_str() + ", " + (g.odd ? "odd" : "even") + ", ghost " + std::to_string(g.ghost);
}

struct Block {
  std::vector<Factor> factors;
  BigRational weight;
  int ghost = 0;
  bool odd = false;
};

// Smallest total weight any set of distinct derivatives of an odd generator
// of weight h can carry: min over k of k*h + k(k-1)/2.
BigRational odd_family_floor(const BigRational& h) {
  BigRational best = 0, sum = 0;
  for (int k = 0;; ++k) {
    if (h + k >= 0) break;
    sum += h + k;
    if (sum < best) best = sum;
  }
  return best;
}

BigRational slice_floor(const OpeAlgebra& a) {
  BigRational l = 0;
  for (const auto& g : a.generators()) {
    if (g.odd)
      l += odd_family_floor(g.weight);
    else if (g.weight <= 0)
      throw InfiniteSlice("even generator " + g.name + " has non-positive weight " + g.weight.get_str() +
                          "; graded slices are infinite");
  }
  return l;
}

std::vector<Block> generator_blocks(int gi, const GeneratorDecl& g, const BigRational& cap) {
  std::vector<Block> out;
  Block cur;
  std::function<void(int)> rec = [&](int k) {
    BigRational w = g.weight + k;
    if (w > 0 && cur.weight + w > cap) {
      if (cur.weight <= cap) out.push_back(cur);
      return;
    }
    Factor f = make_factor(gi, k);
    if (g.odd) {
      rec(k + 1);
      cur.factors.push_back(f);
      cur.weight += w;
      cur.ghost += g.ghost;
      cur.odd = !cur.odd;
      rec(k + 1);
      cur.factors.pop_back();
      cur.weight -= w;
      cur.ghost -= g.ghost;
      cur.odd = !cur.odd;
    } else {
      int m = 0;
      for (; cur.weight + w * m <= cap; ++m) {
        for (int i = 0; i < m; ++i) cur.factors.push_back(f);
        cur.weight += w * m;
        cur.ghost += g.ghost * m;
        rec(k + 1);
        cur.factors.resize(cur.factors.size() - static_cast<std::size_t>(m));
        cur.weight -= w * m;
        cur.ghost -= g.ghost * m;
      }
    }
  };
  rec(0);
  return out;
}

int floor_int(const BigRational& q) {
  BigInteger f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return static_cast<int>(f.get_si());
}

}  // namespace

TableReport validate_table(const OpeAlgebra& a) {
  TableReport r;
  OpeEngine e(a);
  for (const auto& [key, poles] : a.table()) {
    const auto& ga = a.generator(key.first);
    const auto& gb = a.generator(key.second);
    for (const auto& [n, x] : poles) {
      Grading want{ga.weight + gb.weight - n, ga.odd != gb.odd, ga.ghost + gb.ghost};
      for (const auto& [m, c] : x.terms()) {
        Grading got = a.grading(m);
        if (!(got == want)) {
          r.issues.push_back({ga.name, gb.name, n, "grading", FieldExpr::monomial(m, c),
                              "term " + a.monomial_str(m) + " has " + grading_str(got) + ", expected " +
                                  grading_str(want)});
        }
      }
    }
    if (key.first == key.second) {
      PoleSeries flipped = e.flip(poles, ga.odd, ga.odd);
      int top = std::max(poles.empty() ? 0 : poles.rbegin()->first, flipped.empty() ? 0 : flipped.rbegin()->first);
      for (int n = 1; n <= top; ++n) {
        FieldExpr lhs = flipped.count(n) ? flipped[n] : FieldExpr();
        auto it = poles.find(n);
        FieldExpr res = lhs - (it == poles.end() ? FieldExpr() : it->second);
        if (!res.is_zero())
          r.issues.push_back({ga.name, gb.name, n, "exchange", res,
                              "exchange symmetry fails at pole " + std::to_string(n) + ": residual " + a.expr_str(res)});
      }
    }
  }
  return r;
}

bool JacobiReport::pass() const { return first_failure() == nullptr; }

const JacobiEntry* JacobiReport::first_failure() const {
  for (const auto& en : entries)
    if (!en.residual.is_zero()) return &en;
  return nullptr;
}

JacobiReport jacobi_check(OpeEngine& e, const FieldExpr& a, const FieldExpr& b, const FieldExpr& c, int pmax,
                          int qmax) {
  const OpeAlgebra& alg = e.algebra();
  auto ga = alg.grading(a), gb = alg.grading(b);
  bool sign_neg = ga && gb && ga->odd && gb->odd;
  PoleSeries bc = e.ope(b, c), ac = e.ope(a, c), ab = e.ope(a, b);
  auto get = [](const PoleSeries& p, int n) {
    auto it = p.find(n);
    return it == p.end() ? FieldExpr() : it->second;
  };
  std::map<int, PoleSeries> ab_c;
  for (const auto& [l, x] : ab) ab_c[l] = e.ope(x, c);
  JacobiReport r;
  for (int p = 1; p <= pmax; ++p) {
    for (int q = 1; q <= qmax; ++q) {
      FieldExpr res = get(e.ope(a, get(bc, q)), p);
      res.add_scaled(get(e.ope(b, get(ac, p)), q), RF(sign_neg ? 1 : -1));
      for (int l = 1; l <= p; ++l) {
        auto it = ab_c.find(l);
        if (it == ab_c.end()) continue;
        res.add_scaled(get(it->second, p + q - l), RF(-binomial(BigRational(p - 1), l - 1)));
      }
      r.entries.push_back({p, q, std::move(res)});
    }
  }
  return r;
}

int jacobi_pole_bound(const OpeAlgebra& a, const BigRational& total_weight) {
  BigRational floor = slice_floor(a);
  if (floor > 0) floor = 0;
  return std::max(0, floor_int(total_weight - floor) - 1);
}

std::optional<TripleFailure> jacobi_all_generators(OpeEngine& e) {
  const OpeAlgebra& alg = e.algebra();
  int n = static_cast<int>(alg.generators().size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const auto &A = alg.generator(i), &B = alg.generator(j), &C = alg.generator(k);
        int bound = jacobi_pole_bound(alg, A.weight + B.weight + C.weight);
        if (bound < 1) continue;
        auto rep = jacobi_check(e, e.f(A.name), e.f(B.name), e.f(C.name), bound, bound);
        if (const auto* bad = rep.first_failure()) return TripleFailure{A.name, B.name, C.name, *bad};
      }
    }
  }
  return std::nullopt;
}

RF central_charge(OpeEngine& e, const FieldExpr& t) {
  PoleSeries p = e.ope(t, t);
  auto it = p.find(4);
  if (it == p.end()) return RF();
  if (!it->second.is_scalar())
    throw MathError("pole 4 of the stress tensor OPE is not central: " + e.algebra().expr_str(it->second));
  return RF(2) * it->second.scalar_value();
}

PrimaryResult primary_check(OpeEngine& e, const FieldExpr& t, const FieldExpr& x) {
  const OpeAlgebra& alg = e.algebra();
  PoleSeries p = e.ope(t, x);
  PrimaryResult r;
  for (const auto& [n, y] : p) {
    if (n >= 3) {
      r.reason = "pole " + std::to_string(n) + " is " + alg.expr_str(y);
      return r;
    }
  }
  FieldExpr p2 = p.count(2) ? p[2] : FieldExpr();
  FieldExpr p1 = p.count(1) ? p[1] : FieldExpr();
  if (x.is_zero()) {
    r.reason = "zero field";
    return r;
  }
  const auto& [m0, c0] = *x.terms().begin();
  RF h = p2.coeff(m0) / c0;
  if (p2 != x * h) {
    r.reason = "pole 2 is " + alg.expr_str(p2) + ", not a multiple of the field";
    return r;
  }
  if (p1 != e.derivative(x)) {
    r.reason = "pole 1 is " + alg.expr_str(p1) + ", not the derivative";
    return r;
  }
  r.primary = true;
  r.weight = h;
  return r;
}

namespace {

FieldExpr rescale(const OpeAlgebra& a, const std::map<std::string, int>& signs, const FieldExpr& x) {
  std::vector<int> s(a.generators().size(), 1);
  for (const auto& [name, v] : signs) {
    if (v != 1 && v != -1) throw NotAutomorphism("sign for " + name + " must be +1 or -1");
    s[static_cast<std::size_t>(a.index(name))] = v;
  }
  FieldExpr out;
  for (const auto& [m, c] : x.terms()) {
    int sign = 1;
    for (Factor f : m) sign *= s[static_cast<std::size_t>(factor_gen(f))];
    out.add(m, sign < 0 ? -c : c);
  }
  return out;
}

}  // namespace

bool is_automorphism(const OpeAlgebra& a, const std::map<std::string, int>& signs) {
  for (const auto& [key, poles] : a.table()) {
    FieldExpr pair_sign = rescale(a, signs, FieldExpr::monomial({make_factor(key.first, 0), make_factor(key.second, 0)}));
    RF s = pair_sign.terms().begin()->second;
    for (const auto& [n, x] : poles)
      if (rescale(a, signs, x) != x * s) return false;
  }
  return true;
}

FieldExpr apply_automorphism(const OpeAlgebra& a, const std::map<std::string, int>& signs, const FieldExpr& x) {
  if (!is_automorphism(a, signs)) throw NotAutomorphism("sign map does not preserve the OPE table");
  return rescale(a, signs, x);
}

std::vector<Monomial> weight_basis(const OpeAlgebra& a, const BigRational& weight, int ghost, bool odd) {
  BigRational floor = slice_floor(a);
  const auto& gens = a.generators();
  std::vector<BigRational> mins;
  for (const auto& g : gens) mins.push_back(g.odd ? odd_family_floor(g.weight) : BigRational(0));
  std::vector<std::vector<Block>> blocks;
  for (std::size_t i = 0; i < gens.size(); ++i)
    blocks.push_back(generator_blocks(static_cast<int>(i), gens[i], weight - floor + mins[i]));
  std::vector<BigRational> rest_min(gens.size() + 1, 0);
  for (std::size_t i = gens.size(); i-- > 0;) rest_min[i] = rest_min[i + 1] + mins[i];

  std::vector<Monomial> out;
  Monomial cur;
  std::function<void(std::size_t, const BigRational&, int, bool)> rec = [&](std::size_t i, const BigRational& w,
                                                                            int gh, bool od) {
    if (i == gens.size()) {
      if (w == weight && gh == ghost && od == odd) out.push_back(cur);
      return;
    }
    for (const auto& b : blocks[i]) {
      if (w + b.weight + rest_min[i + 1] > weight) continue;
      cur.insert(cur.end(), b.factors.begin(), b.factors.end());
      rec(i + 1, w + b.weight, gh + b.ghost, od != b.odd);
      cur.resize(cur.size() - b.factors.size());
    }
  };
  rec(0, BigRational(0), 0, false);
  std::sort(out.begin(), out.end());
  return out;
}

FieldExpr substitute(OpeEngine& target, const OpeAlgebra& source, const FieldExpr& x,
                     const std::map<std::string, FieldExpr>& images) {
  std::map<Factor, FieldExpr> memo;
  auto image = [&](Factor f) -> const FieldExpr& {
    auto it = memo.find(f);
    if (it != memo.end()) return it->second;
    const std::string& name = source.generator(factor_gen(f)).name;
    auto im = images.find(name);
    FieldExpr base = im != images.end() ? im->second : target.f(name);
    return memo.emplace(f, target.derivative(base, factor_deriv(f))).first->second;
  };
  FieldExpr out;
  for (const auto& [m, c] : x.terms()) {
    FieldExpr acc = FieldExpr::unit();
    for (std::size_t i = m.size(); i-- > 0;) acc = target.normal_product(image(m[i]), acc);
    out.add_scaled(acc, c);
  }
  return out;
}

std::optional<FieldExpr> is_total_derivative(OpeEngine& e, const FieldExpr& x) {
  if (x.is_zero()) return FieldExpr();
  const OpeAlgebra& alg = e.algebra();
  auto g = alg.grading(x);
  if (!g) throw std::invalid_argument("is_total_derivative needs a homogeneous field");
  std::vector<Monomial> basis = weight_basis(alg, g->weight - 1, g->ghost, g->odd);
  if (basis.empty()) return std::nullopt;
  std::map<Monomial, std::size_t> rows;
  std::vector<FieldExpr> images;
  for (const auto& m : basis) {
    images.push_back(e.derivative(FieldExpr::monomial(m)));
    for (const auto& [mm, c] : images.back().terms()) rows.emplace(mm, 0);
  }
  for (const auto& [mm, c] : x.terms()) rows.emplace(mm, 0);
  std::size_t r = 0;
  for (auto& [mm, idx] : rows) idx = r++;
  RFMatrix mat(rows.size(), std::vector<RF>(basis.size()));
  std::vector<RF> rhs(rows.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (const auto& [mm, c] : images[j].terms()) mat[rows[mm]][j] = c;
  for (const auto& [mm, c] : x.terms()) rhs[rows[mm]] = c;
  auto sol = solve_linear(mat, rhs);
  if (!sol) return std::nullopt;
  FieldExpr y;
  for (std::size_t j = 0; j < basis.size(); ++j) y.add(basis[j], (*sol)[j]);
  return y;
}

DerivativeQuotient::DerivativeQuotient(OpeEngine& e, const Grading& g, const std::vector<Monomial>& keep) {
  const OpeAlgebra& alg = e.algebra();
  std::vector<FieldExpr> images;
  for (const auto& m : weight_basis(alg, g.weight - 1, g.ghost, g.odd)) {
    FieldExpr d = e.derivative(FieldExpr::monomial(m));
    if (!d.is_zero()) images.push_back(std::move(d));
  }
  std::set<Monomial> late(keep.begin(), keep.end());
  std::vector<Monomial> cols;
  std::set<Monomial> seen;
  for (const auto& d : images)
    for (const auto& [m, c] : d.terms())
      if (seen.insert(m).second) cols.push_back(m);
  std::stable_partition(cols.begin(), cols.end(), [&](const Monomial& m) { return !late.count(m); });
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < cols.size(); ++i) index[cols[i]] = i;
  RFMatrix mat;
  for (const auto& d : images) {
    std::vector<RF> row(cols.size());
    for (const auto& [m, c] : d.terms()) row[index[m]] = c;
    mat.push_back(std::move(row));
  }
  Rref r = rref(std::move(mat), cols.size());
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    FieldExpr row;
    for (std::size_t j = 0; j < cols.size(); ++j) row.add(cols[j], r.rows[i][j]);
    const Monomial& piv = cols[static_cast<std::size_t>(r.pivots[i])];
    eliminated_.insert(piv);
    rows_.emplace_back(piv, std::move(row));
  }
}

FieldExpr DerivativeQuotient::reduce(const FieldExpr& x) const {
  FieldExpr v = x;
  for (const auto& [piv, row] : rows_) {
    RF c = v.coeff(piv);
    if (!c.is_zero()) v.add_scaled(row, -c);
  }
  return v;
}

}  // namespace wbrst::ope
