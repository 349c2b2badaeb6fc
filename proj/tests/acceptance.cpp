// Acceptance gate: one line per criterion. With an argument N, runs only
// criterion N. Exit status is the number of failing criteria.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "wbrst/brst/brst.hpp"
#include "wbrst/cft/algebras.hpp"
#include "wbrst/cft/transforms.hpp"
#include "wbrst/ope/algebra_file.hpp"
#include "wbrst/ope/analysis.hpp"
#include "wbrst/oracle/mode_oracle.hpp"
#include "wbrst/qla/axioms.hpp"
#include "wbrst/qla/datasets.hpp"
#include "wbrst/qla/omega.hpp"

using namespace wbrst;
using brst::BrstCurrent;
using brst::W3Point;
using ope::FieldExpr;
using ope::Monomial;
using ope::OpeAlgebra;
using ope::OpeEngine;

namespace {

struct Result {
  std::vector<std::string> failures;
  std::ostringstream detail;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  bool pass() const { return failures.empty(); }
};

BigRational q(long n, long d = 1) {
  BigRational r(n, d);
  r.canonicalize();
  return r;
}

W3Point point(std::optional<BigRational> c, std::optional<BigRational> g1, std::optional<BigRational> g2,
              cft::A2Mode mode = cft::A2Mode::ExchangeConsistent) {
  W3Point p;
  p.c = c;
  p.g1 = g1;
  p.g2 = g2;
  p.mode = mode;
  return p;
}

std::string roots_str(const std::vector<BigRational>& r) {
  std::string s = "{";
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? ", " : "") + to_string(r[i]);
  return s + "}";
}

Monomial mono(const OpeAlgebra& a, const std::string& s) {
  Monomial best;
  FieldExpr x = ope::parse_field_expr(a, s);
  for (const auto& [m, c] : x.terms())
    if (m.size() > best.size()) best = m;
  return best;
}

void c1(Result& r) {
  auto t0 = std::chrono::steady_clock::now();
  bool at100 = brst::nilpotency(brst::brst_w3(point(q(100), q(0), q(0)))).nilpotent;
  bool at26 = brst::nilpotency(brst::brst_w3(point(q(26), q(0), q(0)))).nilpotent;
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.expect(at100, "not nilpotent at c=100");
  r.expect(!at26, "nilpotent at c=26");
  r.expect(secs < 120, "took longer than 2 min");
  r.detail << "c=100 " << (at100 ? "nilpotent" : "not nilpotent") << ", c=26 " << (at26 ? "nilpotent" : "not nilpotent")
           << ", " << secs << " s";
}

void c2(Result& r) {
  auto w3 = brst::critical_charge(brst::brst_w3()).roots;
  auto w32 = brst::critical_charge(brst::brst_w32()).roots;
  OpeEngine e(cft::w32(q(-2)));
  FieldExpr pole4 = e.pole(e.f("T"), e.f("T"), 4);
  RF cvir = ope::central_charge(e, e.f("T"));
  r.expect(w3 == std::vector<BigRational>{100}, "W3 roots " + roots_str(w3));
  r.expect(w32 == std::vector<BigRational>{-2}, "W3^(2) roots " + roots_str(w32));
  r.expect(pole4 == FieldExpr::unit(RF(25)), "TT pole 4 is not 25");
  r.expect(cvir == RF(50), "c_Vir = " + cvir.str());
  r.detail << "W3 " << roots_str(w3) << ", W3^(2) " << roots_str(w32) << ", c_Vir(c=-2) = " << cvir.str();
}

void c3(Result& r) {
  BrstCurrent cur = brst::brst_w3(point(q(100), std::nullopt, std::nullopt));
  std::set<std::string> params;
  for (const auto& [m, c] : cur.expr.terms())
    for (auto id : c.variables()) params.insert(ParamRegistry::name(id));
  auto rep = brst::nilpotency(cur);
  r.expect(params == std::set<std::string>{"g1", "g2"}, "current is not symbolic in g1, g2");
  r.expect(rep.nilpotent, "obstruction " + cur.algebra.expr_str(rep.obstruction));
  r.detail << "current depends on g1, g2; obstruction " << (rep.obstruction.is_zero() ? "identically 0" : "nonzero");
}

void c4(Result& r) {
  auto [g1, g2] = brst::solve_conventional();
  auto left = brst::unconventional_terms(brst::brst_w3(point(q(100), g1, g2)));
  r.expect(g1 == 0 && g2 == q(-16, 261), "solution (" + to_string(g1) + ", " + to_string(g2) + ")");
  r.expect(left.empty(), std::to_string(left.size()) + " unconventional terms left");
  r.detail << "(g1, g2) = (" << to_string(g1) << ", " << to_string(g2) << "), " << left.size()
           << " unconventional terms";
}

void c5(Result& r) {
  auto w3 = cft::verify_ghost_transform_w3();
  auto w32 = cft::verify_ghost_transform_w32();
  r.expect(w3.mismatches.empty(), "W3 ghost images mismatch at " + (w3.mismatches.empty() ? std::string() : w3.mismatches[0].a + " " + w3.mismatches[0].b));
  r.expect(w3.stress_tensor_checked && w3.stress_tensor_invariant, "ghost stress tensor changes at g1=0");
  r.expect(w32.pass(), "W3^(2) ghost images mismatch");
  r.detail << "W3 symbolic (g1, g2) " << (w3.mismatches.empty() ? "ok" : "mismatch") << ", T_gh at g1=0 "
           << (w3.stress_tensor_invariant ? "unchanged" : "changed") << ", W3^(2) " << (w32.pass() ? "ok" : "mismatch");
}

// Every stored coefficient, bumped by one, must break a Jacobi identity.
std::pair<int, int> mutations_caught(const OpeAlgebra& a) {
  int total = 0, caught = 0;
  for (const auto& [ij, poles] : a.table()) {
    for (const auto& [n, e] : poles) {
      for (const auto& [m, c] : e.terms()) {
        ope::PoleSeries p = poles;
        p[n].add(m, RF(1));
        OpeAlgebra b = a;
        b.set_ope(a.generator(ij.first).name, a.generator(ij.second).name, p);
        OpeEngine me(b);
        ++total;
        if (ope::jacobi_all_generators(me)) ++caught;
      }
    }
  }
  return {caught, total};
}

void c6(Result& r) {
  auto printed = ope::validate_table(cft::w3(std::nullopt, cft::A2Mode::AsPrinted));
  bool flagged = false;
  for (const auto& i : printed.issues) flagged |= i.kind == "exchange" && i.a == "W" && i.b == "W";
  r.expect(flagged, "printed a2 not flagged");
  r.expect(ope::validate_table(cft::w3()).pass(), "consistent a2 rejected");
  int caught = 0, total = 0;
  for (const auto& a : {cft::w3(), cft::w32(), cft::w3_ghosts(), cft::w32_ghosts()}) {
    OpeEngine e(a);
    auto bad = ope::jacobi_all_generators(e);
    r.expect(!bad, "Jacobi fails on " + a.name);
    auto [k, n] = mutations_caught(a);
    caught += k;
    total += n;
  }
  r.expect(caught == total, "mutations caught " + std::to_string(caught) + "/" + std::to_string(total));
  r.detail << "printed a2 flagged at WW, Jacobi on W3, W3^(2) and both ghost tables, " << caught << "/" << total
           << " mutations caught";
}

void c7(Result& r) {
  auto b = cft::bundle(cft::w3(q(100)), cft::w3_ghosts(q(0), q(0)));
  OpeEngine e(b.combined);
  FieldExpr tt = e.f("T") + cft::ghost_stress_w3(b.combined);
  RF c = ope::central_charge(e, tt);
  r.expect(c == RF(0), "central charge " + c.str());
  r.detail << "c = " << c.str();
  for (const auto& [name, h] : std::vector<std::pair<std::string, long>>{
           {"c_T", -1}, {"b_T", 2}, {"c_W", -2}, {"b_W", 3}, {"W", 3}}) {
    auto p = ope::primary_check(e, tt, e.f(name));
    r.expect(p.primary && p.weight == RF(h), name + " " + (p.primary ? "weight " + p.weight.str() : p.reason));
    r.detail << ", [" << name << "] = " << (p.primary ? p.weight.str() : "not primary");
  }
}

void c8(Result& r) {
  int caught = 0, total = 0;
  std::string missed;
  for (const auto& f : qla::bundled_qla()) {
    bool ok = qla::check_qla_axioms(f.data).all_pass() &&
              qla::check_twist_axioms(f.data.sigma, f.phi, &f.data.c).all_pass() &&
              qla::check_proof_identities(f.data.sigma, f.data.c, f.phi).all_pass();
    r.expect(ok, f.name + " fails a check");
    qla::OmegaAlgebra alg(f.data, f.phi);
    r.expect(qla::verify_nilpotent(alg, alg.build_q()).zero, f.name + " Q*Q != 0");
    for (bool on_sigma : {true, false}) {
      const qla::Tensor& base = on_sigma ? f.data.sigma : f.data.c;
      for (std::size_t u = 0; u < base.upper_size(); ++u) {
        for (std::size_t l = 0; l < base.lower_size(); ++l) {
          qla::QlaFile g = f;
          (on_sigma ? g.data.sigma : g.data.c)(u, l) += RF(1);
          ++total;
          if (!qla::check_qla_axioms(g.data).all_pass() ||
              !qla::check_twist_axioms(g.data.sigma, g.phi, &g.data.c).all_pass() ||
              !qla::check_proof_identities(g.data.sigma, g.data.c, g.phi).all_pass())
            ++caught;
          else if (missed.empty())
            missed = f.name + (on_sigma ? " sigma" : " c") + " entry " + std::to_string(u) + "," + std::to_string(l);
        }
      }
    }
  }
  r.expect(caught == total, "mutation not caught: " + missed);
  r.detail << "so3, super_ef, lyubashenko pass all checks and Q*Q = 0; " << caught << "/" << total
           << " mutations caught";
}

void c9(Result& r) {
  for (const auto& a : {cft::w3_ghosts(q(0), q(0)), cft::w32_canonical_ghosts()}) {
    auto rep = oracle::crosscheck(a, oracle::standard_pairs(a), 6);
    r.expect(rep.pass, a.name + " mismatch at pair " +
                           (rep.first_mismatch ? std::to_string(rep.first_mismatch->pair) : std::string("?")));
    r.detail << a.name << " L=6 " << rep.pairs << " pairs, " << rep.matrix_elements << " elements; ";
  }
  std::vector<std::pair<BigRational, BigRational>> expected{{q(2), q(-26)}, {q(3), q(-74)}, {q(1), q(-2)}, {q(3, 2), q(-11)}};
  for (const auto& [lam, c] : expected) {
    BigRational got = oracle::oracle_central_charge(lam);
    r.expect(got == c, "lambda=" + to_string(lam) + " gives " + to_string(got));
    r.detail << "c(" << to_string(lam) << ") = " << to_string(got) << ", ";
  }
  for (const auto& [a, total] : {std::pair{cft::w3_ghosts(q(0), q(0)), q(-100)}, std::pair{cft::w32_canonical_ghosts(), q(-50)}}) {
    BigRational sum = 0;
    for (const auto& s : oracle::free_systems(a)) sum += oracle::oracle_central_charge(s.lambda);
    r.expect(sum == total, a.name + " total " + to_string(sum));
    r.detail << a.name << " total " << to_string(sum) << " ";
  }
}

void c10(Result& r) {
  std::map<std::string, int> sym{{"W", -1}, {"c_W", -1}, {"b_W", -1}};
  for (auto mode : {cft::A2Mode::ExchangeConsistent, cft::A2Mode::AsPrinted}) {
    std::string tag = mode == cft::A2Mode::AsPrinted ? "printed a2" : "consistent a2";
    auto a = cft::bundle(cft::w3(q(100), mode), cft::w3_ghosts(q(0), q(0))).combined;
    brst::DeriveOptions opts;
    opts.symmetry = sym;
    auto res = brst::derive_brst(a, {{mono(a, "N(c_T,T)"), RF(1)}, {mono(a, "N(c_W,W)"), RF(1)}}, opts);
    r.expect(res.success, "W3 " + tag + ": no unique solution");
    if (!res.success) continue;
    auto ref = brst::brst_w3(point(q(100), q(0), q(0), mode));
    OpeEngine e(a);
    bool same = ope::is_total_derivative(e, res.current.expr - ref.expr).has_value();
    bool nil = brst::nilpotency(res.current).nilpotent;
    r.expect(nil, "W3 " + tag + ": derived current not nilpotent");
    r.expect(same, "W3 " + tag + ": differs from the printed current");
    r.detail << "W3 (" << tag << ") unique, " << (nil ? "nilpotent" : "not nilpotent") << ", "
             << (same ? "matches" : "differs") << " mod D; ";
  }
  auto ref = brst::brst_w32(q(-2));
  std::vector<std::pair<Monomial, RF>> leading;
  for (const char* s : {"N(c_T,T)", "N(ct_U,U)", "N(c_p,G_p)", "N(c_m,G_m)"})
    leading.emplace_back(mono(ref.algebra, s), RF(1));
  brst::DeriveOptions opts;
  opts.charges = {{"G_p", 1}, {"G_m", -1}, {"c_p", -1}, {"b_p", 1}, {"c_m", 1}, {"b_m", -1}};
  opts.max_degree = 3;
  auto res = brst::derive_brst(ref.algebra, leading, opts);
  r.expect(res.success, "W3^(2): no unique solution");
  if (res.success) {
    OpeEngine e(ref.algebra);
    bool same = ope::is_total_derivative(e, res.current.expr - ref.expr).has_value();
    bool nil = brst::nilpotency(res.current).nilpotent;
    r.expect(nil, "W3^(2): derived current not nilpotent");
    r.expect(same, "W3^(2): differs from the printed current");
    r.detail << "W3^(2) unique, " << (nil ? "nilpotent" : "not nilpotent") << ", " << (same ? "matches" : "differs")
             << " mod D";
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::pair<std::string, std::function<void(Result&)>>> criteria{
      {"W3 nilpotency at c=100, not at c=26", c1},
      {"critical charges {100} and {-2}, c_Vir = 50", c2},
      {"symbolic g1, g2 nilpotent at c=100", c3},
      {"conventional point (0, -16/261)", c4},
      {"ghost transformations", c5},
      {"table validation, Jacobi and mutations", c6},
      {"improved stress tensor and primary weights", c7},
      {"QLA suite", c8},
      {"mode-oracle equivalence at L=6", c9},
      {"derive_brst uniqueness and nilpotency", c10},
  };
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i + 1) != only) continue;
    Result r;
    try {
      criteria[i].second(r);
    } catch (const std::exception& e) {
      r.failures.push_back(std::string("exception: ") + e.what());
    }
    failures += r.pass() ? 0 : 1;
    std::cout << "criterion " << (i + 1) << " " << (r.pass() ? "PASS" : "FAIL") << ": " << criteria[i].first;
    if (!r.pass()) std::cout << " [" << r.failures.front() << "]";
    std::cout << " (" << r.detail.str() << ")" << std::endl;
  }
  return failures;
}
