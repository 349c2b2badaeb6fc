#include "wbrst/cli/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "wbrst/brst/brst.hpp"
#include "wbrst/cft/algebras.hpp"
#include "wbrst/ope/algebra_file.hpp"
#include "wbrst/ope/analysis.hpp"
#include "wbrst/oracle/mode_oracle.hpp"
#include "wbrst/qla/axioms.hpp"
#include "wbrst/qla/datasets.hpp"
#include "wbrst/qla/omega.hpp"

namespace wbrst::cli {
namespace {

using json = nlohmann::json;
using ope::FieldExpr;
using ope::OpeAlgebra;

// Paths that do not exist are looked up among the bundled data files.
std::string resolve(const std::string& path) {
  if (std::filesystem::exists(path)) return path;
  std::string bundled = std::string(WBRST_DATA_DIR) + "/" + path;
  if (std::filesystem::exists(bundled)) return bundled;
  throw InputError("cannot open " + path);
}

std::string slurp(const std::string& path) {
  std::ifstream in(resolve(path));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BigRational rational_arg(const std::string& what, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const MathError&) {
    throw InputError(what + ": '" + text + "' is not an exact rational");
  }
}

std::string a2_definition(const std::string& preset) {
  if (preset == "printed") return "def a2 = 2/9*a1";
  if (preset == "consistent") return "def a2 = (c-10)/(3*(22+5*c))";
  throw InputError("--a2 must be 'printed' or 'consistent'");
}

// Replaces the file's a2 definition with a preset.
std::string with_a2(const std::string& text, const std::string& preset) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  bool found = false;
  while (std::getline(in, line)) {
    auto start = line.find_first_not_of(" \t");
    if (start != std::string::npos && line.compare(start, 4, "def ") == 0) {
      std::string rest = line.substr(start + 4);
      rest.erase(0, rest.find_first_not_of(" \t"));
      if (rest.rfind("a2", 0) == 0 && rest.find_first_of(" =", 2) == 2) {
        line = a2_definition(preset);
        found = true;
      }
    }
    out << line << "\n";
  }
  if (!found) throw InputError("--a2 given but the algebra file does not define a2");
  return out.str();
}

OpeAlgebra bind_checked(const OpeAlgebra& a, const std::map<std::string, std::string>& bindings) {
  std::map<std::string, BigRational> values;
  for (const auto& [k, v] : bindings) {
    if (std::find(a.params.begin(), a.params.end(), k) == a.params.end())
      throw InputError("unknown parameter '" + k + "' for algebra " + a.name);
    values[k] = rational_arg(k, v);
  }
  if (values.empty()) return a;
  try {
    return a.bind(values);
  } catch (const MathError& e) {
    throw InputError(std::string("binding hits a pole: ") + e.what());
  }
}

OpeAlgebra load(const RunConfig& cfg) {
  if (cfg.inputs.empty()) throw InputError("missing algebra file");
  std::string text = slurp(cfg.inputs[0]);
  if (cfg.a2) text = with_a2(text, *cfg.a2);
  return bind_checked(ope::parse_algebra(text), cfg.bindings);
}

FieldExpr expr_arg(const OpeAlgebra& a, const std::string& text) {
  try {
    return ope::parse_field_expr(a, text);
  } catch (const std::exception& e) {
    throw InputError("cannot parse '" + text + "': " + e.what());
  }
}

std::string str(const OpeAlgebra& a, const FieldExpr& x) { return x.is_zero() ? "0" : a.expr_str(x); }

json poles_json(const OpeAlgebra& a, const ope::PoleSeries& p) {
  json out = json::array();
  for (auto it = p.rbegin(); it != p.rend(); ++it) out.push_back({{"pole", it->first}, {"expr", str(a, it->second)}});
  return out;
}

std::string poles_text(const json& poles) {
  std::string s;
  for (const auto& p : poles) s += "  pole " + std::to_string(p["pole"].get<int>()) + ": " + p["expr"].get<std::string>() + "\n";
  if (s.empty()) s = "  regular\n";
  return s;
}

std::vector<std::string> rationals(const std::vector<BigRational>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

std::string joined(const std::vector<std::string>& xs, const std::string& sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

// ---- qla ----

Outcome qla_check(const RunConfig& cfg) {
  if (cfg.inputs.size() != 1) throw InputError("qla check takes one file");
  qla::QlaFile f;
  try {
    f = qla::parse_qla(slurp(cfg.inputs[0]));
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
  std::vector<std::pair<std::string, qla::AxiomReport>> groups{
      {"axioms", qla::check_qla_axioms(f.data)},
      {"twist", qla::check_twist_axioms(f.data.sigma, f.phi, &f.data.c)},
      {"proof", qla::check_proof_identities(f.data.sigma, f.data.c, f.phi)}};
  Outcome o;
  o.report["name"] = f.name;
  o.report["checks"] = json::array();
  o.text = "qla " + f.name + "\n";
  for (const auto& [group, rep] : groups) {
    for (const auto& c : rep.checks) {
      o.report["checks"].push_back(
          {{"group", group}, {"name", c.name}, {"pass", c.pass}, {"first_nonzero", c.first_nonzero}, {"note", c.note}});
      o.text += "  " + std::string(c.pass ? "pass " : "FAIL ") + group + "/" + c.name;
      if (!c.note.empty()) o.text += " (" + c.note + ")";
      if (!c.pass && !c.first_nonzero.empty()) o.text += ": " + joined(c.first_nonzero, "; ");
      o.text += "\n";
    }
    o.pass = o.pass && rep.all_pass();
  }
  o.report["pass"] = o.pass;
  return o;
}

Outcome qla_brst(const RunConfig& cfg) {
  if (cfg.inputs.size() != 1) throw InputError("qla brst takes one file");
  qla::QlaFile f;
  try {
    f = qla::parse_qla(slurp(cfg.inputs[0]));
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
  qla::OmegaAlgebra alg(f.data, f.phi);
  auto q = alg.build_q();
  auto res = qla::verify_nilpotent(alg, q);
  auto gh = qla::ghost_number(q);
  Outcome o;
  o.pass = res.zero;
  o.report = {{"name", f.name},
              {"q", q.str(1000)},
              {"ghost_number", gh.mixed ? json(nullptr) : json(gh.value)},
              {"nilpotent", res.zero},
              {"residual", res.residual.str(1000)}};
  std::string qs = q.str();
  while (!qs.empty() && qs.back() == '\n') qs.pop_back();
  o.text = "qla " + f.name + "\n  Q = " + qs + "\n  Q*Q " + (res.zero ? "= 0" : "!= 0: " + res.residual.str()) + "\n";
  return o;
}

// ---- cft ----

Outcome cft_validate(const RunConfig& cfg) {
  if (cfg.inputs.size() != 1) throw InputError("cft validate takes one file");
  OpeAlgebra a = load(cfg);
  auto table = ope::validate_table(a);
  ope::OpeEngine e(a);
  auto jac = ope::jacobi_all_generators(e);
  Outcome o;
  o.report["algebra"] = a.name;
  json issues = json::array();
  o.text = "algebra " + a.name + "\n";
  for (const auto& i : table.issues) {
    issues.push_back({{"a", i.a}, {"b", i.b}, {"pole", i.pole}, {"kind", i.kind}, {"residual", str(a, i.residual)},
                      {"message", i.message}});
    o.text += "  FAIL " + i.kind + " " + i.a + " " + i.b + " pole " + std::to_string(i.pole) + ": " + i.message + "\n";
  }
  o.report["table"] = {{"pass", table.pass()}, {"issues", issues}};
  if (jac) {
    o.report["jacobi"] = {{"pass", false},
                          {"failure",
                           {{"a", jac->a},
                            {"b", jac->b},
                            {"c", jac->c},
                            {"p", jac->entry.p},
                            {"q", jac->entry.q},
                            {"residual", str(a, jac->entry.residual)}}}};
    o.text += "  FAIL jacobi " + jac->a + " " + jac->b + " " + jac->c + " p=" + std::to_string(jac->entry.p) +
              " q=" + std::to_string(jac->entry.q) + ": " + str(a, jac->entry.residual) + "\n";
  } else {
    o.report["jacobi"] = {{"pass", true}, {"failure", nullptr}};
  }
  if (table.pass()) o.text += "  pass table\n";
  if (!jac) o.text += "  pass jacobi\n";
  o.pass = table.pass() && !jac;
  o.report["pass"] = o.pass;
  return o;
}

Outcome cft_ope(const RunConfig& cfg) {
  if (cfg.inputs.size() != 3) throw InputError("cft ope takes FILE EXPR EXPR");
  OpeAlgebra a = load(cfg);
  FieldExpr x = expr_arg(a, cfg.inputs[1]), y = expr_arg(a, cfg.inputs[2]);
  ope::OpeEngine e(a);
  Outcome o;
  o.report = {{"a", str(a, x)}, {"b", str(a, y)}, {"poles", poles_json(a, e.ope(x, y))}};
  o.text = str(a, x) + " x " + str(a, y) + "\n" + poles_text(o.report["poles"]);
  return o;
}

Outcome cft_jacobi(const RunConfig& cfg) {
  if (cfg.inputs.size() != 4) throw InputError("cft jacobi takes FILE A B C");
  OpeAlgebra a = load(cfg);
  std::vector<FieldExpr> xs;
  BigRational total = 0;
  for (std::size_t i = 1; i < 4; ++i) {
    xs.push_back(expr_arg(a, cfg.inputs[i]));
    auto g = a.grading(xs.back());
    if (!g && !xs.back().is_zero()) throw InputError("'" + cfg.inputs[i] + "' is not homogeneous");
    if (g) total += g->weight;
  }
  int bound = ope::jacobi_pole_bound(a, total);
  ope::OpeEngine e(a);
  auto rep = ope::jacobi_check(e, xs[0], xs[1], xs[2], bound, bound);
  Outcome o;
  json failures = json::array();
  o.text = "jacobi " + joined({str(a, xs[0]), str(a, xs[1]), str(a, xs[2])}, " ") + ", p, q <= " +
           std::to_string(bound) + "\n";
  for (const auto& en : rep.entries) {
    if (en.residual.is_zero()) continue;
    failures.push_back({{"p", en.p}, {"q", en.q}, {"residual", str(a, en.residual)}});
    o.text += "  FAIL p=" + std::to_string(en.p) + " q=" + std::to_string(en.q) + ": " + str(a, en.residual) + "\n";
  }
  o.pass = rep.pass();
  if (o.pass) o.text += "  pass\n";
  o.report = {{"bound", bound}, {"failures", failures}, {"pass", o.pass}};
  return o;
}

std::string family_arg(const RunConfig& cfg) {
  if (cfg.inputs.size() != 1 || (cfg.inputs[0] != "w3" && cfg.inputs[0] != "w32"))
    throw InputError("expected family w3 or w32");
  return cfg.inputs[0];
}

json terms_json(const OpeAlgebra& a, const std::vector<std::pair<ope::Monomial, RF>>& terms) {
  json out = json::array();
  for (const auto& [m, c] : terms) out.push_back(str(a, FieldExpr::monomial(m, c)));
  return out;
}

Outcome cft_brst(const RunConfig& cfg) {
  std::string fam = family_arg(cfg);
  if (cfg.c && cfg.symbolic_c) throw InputError("--c and --symbolic-c exclude each other");
  std::optional<BigRational> c;
  if (cfg.c) c = rational_arg("c", *cfg.c);
  brst::BrstCurrent q, symbolic;
  json point;
  if (fam == "w3") {
    brst::W3Point p;
    if (cfg.g1) p.g1 = rational_arg("g1", *cfg.g1);
    if (cfg.g2) p.g2 = rational_arg("g2", *cfg.g2);
    if (cfg.a2) {
      a2_definition(*cfg.a2);
      p.mode = *cfg.a2 == "printed" ? cft::A2Mode::AsPrinted : cft::A2Mode::ExchangeConsistent;
    }
    symbolic = brst::brst_w3(p);
    p.c = c;
    q = brst::brst_w3(p);
    point = {{"g1", p.g1 ? to_string(*p.g1) : "g1"},
             {"g2", p.g2 ? to_string(*p.g2) : "g2"},
             {"a2", p.mode == cft::A2Mode::AsPrinted ? "printed" : "consistent"}};
  } else {
    if (cfg.g1 || cfg.g2 || cfg.a2) throw InputError("--g1, --g2 and --a2 apply to w3 only");
    symbolic = brst::brst_w32();
    q = brst::brst_w32(c);
  }
  point["c"] = c ? to_string(*c) : "c";
  auto nil = brst::nilpotency(q);
  auto crit = brst::critical_charge(symbolic);
  Outcome o;
  o.pass = nil.nilpotent;
  o.report = {{"family", fam},
              {"point", point},
              {"current", str(q.algebra, q.expr)},
              {"verdict", nil.nilpotent ? "nilpotent" : "not nilpotent"},
              {"obstruction", str(q.algebra, nil.obstruction)},
              {"critical_roots", rationals(crit.roots)},
              {"unconventional_terms", terms_json(q.algebra, brst::unconventional_terms(q))}};
  o.text = "Q = " + o.report["current"].get<std::string>() + "\nverdict: " + o.report["verdict"].get<std::string>() +
           "\nobstruction: " + o.report["obstruction"].get<std::string>() + "\ncritical roots: [" +
           joined(o.report["critical_roots"].get<std::vector<std::string>>()) + "]\n";
  auto unconv = o.report["unconventional_terms"].get<std::vector<std::string>>();
  if (!unconv.empty()) o.text += "unconventional terms: " + joined(unconv) + "\n";
  return o;
}

Outcome cft_critical(const RunConfig& cfg) {
  std::string fam = family_arg(cfg);
  auto crit = brst::critical_charge(fam == "w3" ? brst::brst_w3() : brst::brst_w32());
  Outcome o;
  o.pass = !crit.roots.empty() || crit.always_nilpotent;
  o.report = {{"family", fam}, {"roots", rationals(crit.roots)}, {"always_nilpotent", crit.always_nilpotent}};
  o.text = "roots [" + joined(rationals(crit.roots)) + "]\n";
  if (crit.always_nilpotent) o.text += "nilpotent for every c\n";
  return o;
}

Outcome cft_solve_conventional(const RunConfig& cfg) {
  if (!cfg.inputs.empty()) throw InputError("cft solve-conventional takes no arguments");
  auto [g1, g2] = brst::solve_conventional();
  brst::W3Point p;
  p.g1 = g1;
  p.g2 = g2;
  auto q = brst::brst_w3(p);
  auto left = brst::unconventional_terms(q);
  Outcome o;
  o.pass = left.empty();
  o.report = {{"g1", to_string(g1)}, {"g2", to_string(g2)}, {"unconventional_terms", terms_json(q.algebra, left)}};
  o.text = "g1=" + to_string(g1) + " g2=" + to_string(g2) + "\n";
  if (!left.empty()) o.text += "unconventional terms remain: " + joined(o.report["unconventional_terms"].get<std::vector<std::string>>()) + "\n";
  return o;
}

// ---- oracle ----

// Parameters the user left open get fixed small rationals, drawn from a
// seeded generator so runs are reproducible.
OpeAlgebra specialize(const OpeAlgebra& a, json& chosen) {
  std::mt19937 rng(20261016);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  OpeAlgebra out = a;
  for (const auto& p : a.params) {
    for (int attempt = 0;; ++attempt) {
      BigRational v(num(rng), den(rng));
      v.canonicalize();
      try {
        out = out.bind({{p, v}});
        chosen[p] = to_string(v);
        break;
      } catch (const MathError&) {
        if (attempt > 100) throw;
      }
    }
  }
  return out;
}

Outcome oracle_crosscheck(const RunConfig& cfg) {
  if (cfg.inputs.size() != 1) throw InputError("oracle crosscheck takes one file");
  OpeAlgebra a = load(cfg);
  BigRational level = rational_arg("--level", cfg.level);
  if (level < 0) throw InputError("--level must be non-negative");
  json chosen = json::object();
  a = specialize(a, chosen);
  std::vector<std::pair<FieldExpr, FieldExpr>> pairs;
  try {
    pairs = oracle::standard_pairs(a);
  } catch (const oracle::NotFreeSector& e) {
    throw InputError(e.what());
  }
  auto rep = oracle::crosscheck(a, pairs, level);
  Outcome o;
  o.pass = rep.pass;
  o.report = {{"algebra", a.name},
              {"level", to_string(level)},
              {"specialized", chosen},
              {"pass", rep.pass},
              {"pairs", rep.pairs},
              {"matrix_elements", rep.matrix_elements},
              {"first_mismatch", nullptr}};
  o.text = "crosscheck " + a.name + " at level " + to_string(level) + ": " + std::to_string(rep.pairs) + " pairs, " +
           std::to_string(rep.matrix_elements) + " matrix elements, " + (rep.pass ? "match" : "MISMATCH") + "\n";
  if (const auto& m = rep.first_mismatch) {
    const auto& [x, y] = pairs[m->pair];
    o.report["first_mismatch"] = {{"pair", {str(a, x), str(a, y)}},
                                  {"pole", m->pole},
                                  {"mode", to_string(m->mode)},
                                  {"source", m->source},
                                  {"target", m->target},
                                  {"engine", to_string(m->engine)},
                                  {"oracle", to_string(m->oracle)}};
    o.text += "  pair " + str(a, x) + " x " + str(a, y) + ", pole " + std::to_string(m->pole) + ", mode " +
              to_string(m->mode) + ": <" + m->target + "| ... |" + m->source + "> engine " + to_string(m->engine) +
              ", oracle " + to_string(m->oracle) + "\n";
  }
  return o;
}

}  // namespace

std::pair<std::string, std::string> parse_binding(const std::string& s) {
  auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw InputError("binding '" + s + "' is not name=value");
  std::string name = s.substr(0, eq), value = s.substr(eq + 1);
  rational_arg(name, value);
  return {name, value};
}

Outcome run(const RunConfig& cfg) {
  const auto& c = cfg.command;
  if (c.size() != 2) throw InputError("expected a subcommand");
  if (c[0] == "qla" && c[1] == "check") return qla_check(cfg);
  if (c[0] == "qla" && c[1] == "brst") return qla_brst(cfg);
  if (c[0] == "cft" && c[1] == "validate") return cft_validate(cfg);
  if (c[0] == "cft" && c[1] == "ope") return cft_ope(cfg);
  if (c[0] == "cft" && c[1] == "jacobi") return cft_jacobi(cfg);
  if (c[0] == "cft" && c[1] == "brst") return cft_brst(cfg);
  if (c[0] == "cft" && c[1] == "critical") return cft_critical(cfg);
  if (c[0] == "cft" && c[1] == "solve-conventional") return cft_solve_conventional(cfg);
  if (c[0] == "oracle" && c[1] == "crosscheck") return oracle_crosscheck(cfg);
  throw InputError("unknown subcommand " + c[0] + " " + c[1]);
}

}  // namespace wbrst::cli
