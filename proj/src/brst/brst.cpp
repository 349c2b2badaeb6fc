#include "wbrst/brst/brst.hpp"

#include <set>
#include <sstream>

#include "wbrst/ope/algebra_file.hpp"
#include "wbrst/scalar/linear.hpp"

namespace wbrst::brst {
namespace {

using ope::Grading;
using ope::OpeEngine;

RF value_or_param(const std::optional<BigRational>& v, const char* name) {
  return v ? RF(*v) : RF::param(name);
}

struct TermList {
  const OpeAlgebra& a;
  FieldExpr q;
  void add(const RF& c, const std::string& mono) { q.add_scaled(ope::parse_field_expr(a, mono), c); }
};

const Grading kCurrentGrading{1, true, 1};
// Grading of the first-order pole [QQ]_1.
const Grading kSquareGrading{1, false, 2};

// Splits p into polynomials in `keep` alone whose common zeros are the zeros
// of p for every value of the other variables.
void univariate_parts(const MultiPoly& p, ParamId keep, std::vector<MultiPoly>& out) {
  for (ParamId v : p.variables()) {
    if (v == keep) continue;
    for (const auto& c : p.coefficients_in(v)) univariate_parts(c, keep, out);
    return;
  }
  out.push_back(p);
}

}  // namespace

BrstCurrent brst_w3(const W3Point& p) {
  auto b = cft::bundle(cft::w3(p.c, p.mode), cft::w3_ghosts(p.g1, p.g2));
  RF g1 = value_or_param(p.g1, "g1"), g2 = value_or_param(p.g2, "g2");
  RF s = g1 + g2;
  TermList t{b.combined, {}};
  t.add(RF(1), "N(c_T,T)");
  t.add(RF(1), "N(c_W,W)");
  t.add(RF(-1), "N(b_T,N(D(c_T),c_T))");
  t.add(-(RF(BigRational(125, 1566)) + RF(BigRational(17, 12)) * s), "N(b_T,N(D3(c_W),c_W))");
  t.add(RF(-1), "N(c_T,N(b_W,D(c_W)))");
  t.add(-(RF(BigRational(25, 522)) + RF(BigRational(5, 4)) * s), "N(D(b_T),N(D2(c_W),c_W))");
  t.add(RF(2), "N(D(c_T),N(b_W,c_W))");
  t.add(-(RF(BigRational(8, 261)) + s / RF(2)), "N(T,N(b_T,N(D(c_W),c_W)))");
  t.add(-g1, "N(D(b_T),N(b_T,N(c_T,N(D(c_W),c_W))))");
  return {std::move(b.combined), std::move(t.q)};
}

BrstCurrent brst_w32(std::optional<BigRational> c) {
  auto b = cft::bundle(cft::w32(c), cft::w32_ghosts());
  TermList t{b.combined, {}};
  auto q = [](long n, long d = 1) { return RF(BigRational(n, d)); };
  t.add(q(1), "N(c_T,T)");
  t.add(q(1), "N(ct_U,U)");
  t.add(q(1), "N(c_p,G_p)");
  t.add(q(1), "N(c_m,G_m)");
  t.add(q(1), "N(ct_U,N(b_p,c_p))");
  t.add(q(-1), "N(ct_U,N(b_m,c_m))");
  t.add(q(1, 2), "N(D(c_T),N(b_U,ct_U))");
  t.add(q(1, 2), "N(c_T,N(D(b_U),ct_U))");
  t.add(q(-1, 2), "N(c_T,N(b_U,D(ct_U)))");
  t.add(q(3, 4), "N(D(c_T),N(b_p,c_p))");
  t.add(q(1, 4), "N(c_T,N(D(b_p),c_p))");
  t.add(q(-3, 4), "N(c_T,N(b_p,D(c_p)))");
  t.add(q(3, 4), "N(D(c_T),N(b_m,c_m))");
  t.add(q(1, 4), "N(c_T,N(D(b_m),c_m))");
  t.add(q(-3, 4), "N(c_T,N(b_m,D(c_m)))");
  t.add(q(4), "N(b_U,N(c_p,D(c_m)))");
  t.add(q(3), "N(D(b_U),N(c_p,c_m))");
  t.add(q(2), "N(b_U,N(D(c_p),c_m))");
  t.add(q(-1), "N(bt_T,N(D(c_T),c_T))");
  t.add(q(-2), "N(bt_T,N(c_p,c_m))");
  return {std::move(b.combined), std::move(t.q)};
}

void check_current_grading(const BrstCurrent& q) {
  auto g = q.algebra.grading(q.expr);
  if (!g || !(*g == kCurrentGrading))
    throw std::invalid_argument("a BRST current must be odd with weight 1 and ghost number 1");
}

NilpotencyReport nilpotency(const BrstCurrent& q) {
  check_current_grading(q);
  OpeEngine e(q.algebra);
  NilpotencyReport r;
  r.qq = e.ope(q.expr, q.expr);
  auto it = r.qq.find(1);
  if (it != r.qq.end()) {
    ope::DerivativeQuotient quotient(e, kSquareGrading);
    r.obstruction = quotient.reduce(it->second);
  }
  r.nilpotent = r.obstruction.is_zero();
  return r;
}

CriticalCharge critical_charge(const BrstCurrent& q, const std::string& param) {
  NilpotencyReport n = nilpotency(q);
  CriticalCharge out;
  if (n.obstruction.is_zero()) {
    out.always_nilpotent = true;
    return out;
  }
  ParamId id = ParamRegistry::id(param);
  std::vector<MultiPoly> parts;
  for (const auto& [m, c] : n.obstruction.terms()) univariate_parts(c.num(), id, parts);
  MultiPoly g;
  for (const auto& p : parts) g = gcd(g, p);
  if (g.is_zero() || g.is_constant()) return out;
  for (const BigRational& r : rational_roots(g)) {
    bool pole = false;
    try {
      q.algebra.bind({{param, r}});
      for (const auto& [m, c] : n.obstruction.terms())
        if (c.den().eval({{id, r}}).is_zero()) pole = true;
    } catch (const MathError&) {
      pole = true;
    }
    if (!pole) out.roots.push_back(r);
  }
  return out;
}

int generator_degree(const Monomial& m) { return static_cast<int>(m.size()); }

std::vector<std::pair<Monomial, RF>> unconventional_terms(const BrstCurrent& q) {
  std::vector<std::pair<Monomial, RF>> out;
  for (const auto& [m, c] : q.expr.terms())
    if (generator_degree(m) >= 4) out.emplace_back(m, c);
  return out;
}

std::pair<BigRational, BigRational> solve_conventional() {
  W3Point point;
  point.c = BigRational(100);
  BrstCurrent q = brst_w3(point);
  ParamId g1 = ParamRegistry::id("g1"), g2 = ParamRegistry::id("g2");
  RFMatrix a;
  std::vector<RF> rhs;
  for (const auto& [m, c] : unconventional_terms(q)) {
    if (!c.is_polynomial() || c.num().total_degree() > 1)
      throw MathError("unconventional coefficient is not affine in g1, g2: " + c.str());
    for (ParamId v : c.num().variables())
      if (v != g1 && v != g2) throw MathError("unconventional coefficient depends on " + ParamRegistry::name(v));
    MultiPoly p = c.num();
    auto lin = [&](ParamId v) {
      auto cs = p.coefficients_in(v);
      return cs.size() > 1 ? RF(cs[1]) : RF();
    };
    a.push_back({lin(g1), lin(g2)});
    rhs.push_back(-RF(p.eval({{g1, 0}, {g2, 0}})));
  }
  Rref r = rref(a, 2);
  if (r.rows.size() != 2) throw MathError("conventional form does not fix g1 and g2 uniquely");
  auto sol = solve_linear(a, rhs);
  if (!sol) throw MathError("no (g1, g2) removes the unconventional terms");
  return {(*sol)[0].constant_value(), (*sol)[1].constant_value()};
}

namespace {

using Pair = std::pair<int, int>;
using Equation = std::map<Pair, RF>;  // x_i x_j coefficients; index -1 stands for 1

std::string equation_str(const Equation& eq, const std::vector<Monomial>& monos, const OpeAlgebra& a,
                         const std::map<int, RF>& known) {
  // Collect terms by their unknown factors after substituting known values.
  std::map<std::vector<int>, RF> terms;
  for (const auto& [p, c] : eq) {
    RF v = c;
    std::vector<int> vars;
    for (int i : {p.first, p.second}) {
      auto it = known.find(i);
      if (it != known.end()) v *= it->second;
      else vars.push_back(i);
    }
    terms[vars] += v;
  }
  std::ostringstream s;
  bool first = true;
  for (const auto& [vars, c] : terms) {
    if (c.is_zero()) continue;
    s << (first ? "" : " + ") << "(" << c.str() << ")";
    for (int i : vars) s << "*x[" << a.monomial_str(monos[static_cast<std::size_t>(i)]) << "]";
    first = false;
  }
  s << (first ? "0" : "") << " = 0";
  return s.str();
}

}  // namespace

DeriveResult derive_brst(const OpeAlgebra& combined, const std::vector<std::pair<Monomial, RF>>& leading,
                         const DeriveOptions& opts) {
  OpeEngine e(combined);
  DeriveResult res;
  res.current.algebra = combined;

  std::vector<int> sign(combined.generators().size(), 1);
  for (const auto& [name, s] : opts.symmetry) sign[static_cast<std::size_t>(combined.index(name))] = s;
  std::vector<int> charge(combined.generators().size(), 0);
  for (const auto& [name, q] : opts.charges) charge[static_cast<std::size_t>(combined.index(name))] = q;
  auto invariant = [&](const Monomial& m) {
    int s = 1, q = 0;
    for (auto f : m) {
      s *= sign[static_cast<std::size_t>(ope::factor_gen(f))];
      q += charge[static_cast<std::size_t>(ope::factor_gen(f))];
    }
    return s == 1 && q == 0 && (opts.max_degree == 0 || generator_degree(m) <= opts.max_degree);
  };

  std::vector<Monomial> keep = opts.prefer;
  for (const auto& [m, c] : leading) keep.push_back(m);
  ope::DerivativeQuotient q1(e, kCurrentGrading, keep);
  std::set<Monomial> lead_set;
  for (const auto& [m, c] : leading) lead_set.insert(m);

  std::vector<Monomial> monos;
  std::map<int, RF> known;
  for (const auto& [m, c] : leading) {
    known[static_cast<int>(monos.size())] = c;
    monos.push_back(m);
  }
  // Conventional form: the only terms without an antighost are the leading ones.
  auto has_antighost = [&](const Monomial& m) {
    for (auto f : m)
      if (combined.generators()[ope::factor_gen(f)].ghost < 0) return true;
    return false;
  };
  for (const auto& m : ope::weight_basis(combined, 1, 1, true)) {
    if (lead_set.count(m) || q1.eliminated().count(m) || !invariant(m) || !has_antighost(m)) continue;
    res.ansatz.push_back(m);
    monos.push_back(m);
  }

  // [QQ]_1 modulo derivatives; [m_j m_i]_1 equals [m_i m_j]_1 up to a derivative for odd m.
  ope::DerivativeQuotient q2(e, kSquareGrading);
  std::map<Monomial, Equation> eqs;
  int n = static_cast<int>(monos.size());
  for (int i = 0; i < n; ++i) {
    FieldExpr mi = FieldExpr::monomial(monos[static_cast<std::size_t>(i)]);
    for (int j = i; j < n; ++j) {
      FieldExpr p = e.pole(mi, FieldExpr::monomial(monos[static_cast<std::size_t>(j)]), 1);
      if (p.is_zero()) continue;
      FieldExpr red = q2.reduce(p);
      RF w(i == j ? 1 : 2);
      for (const auto& [m, c] : red.terms()) eqs[m][{i, j}] += c * w;
    }
  }
  std::vector<Equation> system;
  for (auto& [m, eq] : eqs) {
    std::erase_if(eq, [](const auto& kv) { return kv.second.is_zero(); });
    if (!eq.empty()) system.push_back(std::move(eq));
  }
  res.equations = system.size();

  std::set<int> unknown;
  for (int i = 0; i < n; ++i)
    if (!known.count(i)) unknown.insert(i);

  for (;;) {
    // Linear rows in the unknowns after substituting what is known.
    std::vector<int> cols(unknown.begin(), unknown.end());
    std::map<int, std::size_t> col_of;
    for (std::size_t k = 0; k < cols.size(); ++k) col_of[cols[k]] = k;
    RFMatrix lin;
    for (const auto& eq : system) {
      std::vector<RF> row(cols.size() + 1);
      bool nonlinear = false;
      for (const auto& [p, c] : eq) {
        bool ki = known.count(p.first) != 0, kj = known.count(p.second) != 0;
        if (ki && kj) {
          row.back() += c * known[p.first] * known[p.second];
        } else if (ki) {
          row[col_of[p.second]] += c * known[p.first];
        } else if (kj) {
          row[col_of[p.first]] += c * known[p.second];
        } else {
          nonlinear = true;
          break;
        }
      }
      if (!nonlinear) lin.push_back(std::move(row));
    }
    Rref r = rref(std::move(lin), cols.size() + 1);
    bool progress = false;
    for (std::size_t k = 0; k < r.rows.size(); ++k) {
      const auto& row = r.rows[k];
      std::size_t piv = static_cast<std::size_t>(r.pivots[k]);
      if (piv == cols.size()) continue;
      bool single = true;
      for (std::size_t j = piv + 1; j < cols.size(); ++j)
        if (!row[j].is_zero()) single = false;
      if (!single) continue;
      known[cols[piv]] = -row.back();
      unknown.erase(cols[piv]);
      progress = true;
    }
    if (unknown.empty() || !progress) break;
  }

  // Equations left with no unknowns are conditions on the parameters.
  std::set<std::string> seen;
  for (const auto& eq : system) {
    RF v;
    bool closed = true;
    for (const auto& [p, c] : eq) {
      if (!known.count(p.first) || !known.count(p.second)) {
        closed = false;
        break;
      }
      v += c * known[p.first] * known[p.second];
    }
    if (closed && !v.is_zero() && seen.insert(v.str()).second) res.conditions.push_back(v);
  }

  for (int i : unknown) res.undetermined.push_back(monos[static_cast<std::size_t>(i)]);
  if (!unknown.empty()) {
    for (const auto& eq : system) {
      bool open = false;
      for (const auto& [p, c] : eq) open |= unknown.count(p.first) || unknown.count(p.second);
      if (open) res.remaining.push_back(equation_str(eq, monos, combined, known));
    }
  }
  for (const auto& [i, v] : known) res.current.expr.add(monos[static_cast<std::size_t>(i)], v);
  res.success = unknown.empty() && res.conditions.empty();
  return res;
}

}  // namespace wbrst::brst
