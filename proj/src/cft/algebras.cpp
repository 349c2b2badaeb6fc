#include "wbrst/cft/algebras.hpp"

#include <stdexcept>

#include "wbrst/ope/algebra_file.hpp"

#ifndef WBRST_DATA_DIR
#define WBRST_DATA_DIR "data"
#endif

namespace wbrst::cft {
namespace {

using ope::GeneratorDecl;
using ope::PoleSeries;

struct Builder {
  OpeAlgebra a;

  explicit Builder(std::string name, std::vector<std::string> params = {}) {
    a.name = std::move(name);
    a.params = std::move(params);
  }
  void def(const std::string& name, const std::string& value) {
    a.defs.emplace_back(name, ope::parse_field_expr(a, value).scalar_value());
  }
  void field(const std::string& name, BigRational weight, bool odd, int ghost) {
    a.add_generator(GeneratorDecl{name, std::move(weight), odd, ghost});
  }
  void ghost_pair(const std::string& b, const std::string& c, BigRational weight_b) {
    field(b, weight_b, true, -1);
    field(c, 1 - weight_b, true, 1);
  }
  void ope(const std::string& x, const std::string& y, std::initializer_list<std::pair<int, const char*>> poles) {
    PoleSeries p;
    for (const auto& [n, text] : poles) p[n] = ope::parse_field_expr(a, text);
    a.set_ope(x, y, std::move(p));
  }
};

OpeAlgebra bind_opt(OpeAlgebra a, const std::string& name, const std::optional<BigRational>& v) {
  if (!v) return a;
  return a.bind({{name, *v}});
}

ope::FieldExpr shift(const ope::FieldExpr& x, int offset) {
  ope::FieldExpr out;
  for (const auto& [m, c] : x.terms()) {
    ope::Monomial mm = m;
    for (auto& f : mm) f = ope::make_factor(ope::factor_gen(f) + offset, ope::factor_deriv(f));
    out.add(mm, c);
  }
  return out;
}

}  // namespace

OpeAlgebra w3(std::optional<BigRational> c, A2Mode mode) {
  Builder b("W3", {"c"});
  b.def("a", "32/(22+5*c)");
  b.def("a1", "(3*c-6)/(44+10*c)");
  b.def("a2", mode == A2Mode::AsPrinted ? "2/9*a1" : "(c-10)/(3*(22+5*c))");
  b.field("T", 2, false, 0);
  b.field("W", 3, false, 0);
  b.ope("T", "T", {{4, "c/2*one"}, {2, "2*T"}, {1, "D(T)"}});
  b.ope("T", "W", {{2, "3*W"}, {1, "D(W)"}});
  b.ope("W", "W",
        {{6, "c/3*one"}, {4, "2*T"}, {3, "D(T)"}, {2, "a1*D2(T) + a*N(T,T)"}, {1, "a2*D3(T) + a/2*D(N(T,T))"}});
  if (mode == A2Mode::AsPrinted) b.a.name = "W3_printed";
  return bind_opt(std::move(b.a), "c", c);
}

OpeAlgebra w3_ghosts(std::optional<BigRational> g1, std::optional<BigRational> g2) {
  Builder b("W3_ghosts", {"g1", "g2"});
  b.ghost_pair("b_T", "c_T", 2);
  b.ghost_pair("b_W", "c_W", 3);
  b.a.regular_by_default = true;
  b.ope("b_T", "c_T", {{1, "one"}});
  b.ope("b_W", "c_W", {{1, "one"}});
  b.ope("c_T", "b_W", {{2, "g1*N(b_T,c_W)"}, {1, "g2*D(N(b_T,c_W)) + g1*N(b_T,D(c_W))"}});
  b.ope("c_T", "c_T", {{1, "(g1+g2)*N(D(c_W),c_W)"}});
  b.ope("b_W", "b_W", {{1, "(g1-g2)*N(D(b_T),b_T)"}});
  return bind_opt(bind_opt(std::move(b.a), "g1", g1), "g2", g2);
}

OpeAlgebra w32(std::optional<BigRational> c) {
  Builder b("W32", {"c"});
  b.field("T", 2, false, 0);
  b.field("U", 1, false, 0);
  b.field("G_p", BigRational(3, 2), false, 0);
  b.field("G_m", BigRational(3, 2), false, 0);
  b.ope("T", "T", {{4, "c*(7-9*c)/(2*(1+c))*one"}, {2, "2*T"}, {1, "D(T)"}});
  b.ope("T", "U", {{2, "U"}, {1, "D(U)"}});
  b.ope("T", "G_p", {{2, "3/2*G_p"}, {1, "D(G_p)"}});
  b.ope("T", "G_m", {{2, "3/2*G_m"}, {1, "D(G_m)"}});
  b.ope("U", "U", {{2, "c*one"}});
  b.ope("U", "G_p", {{1, "G_p"}});
  b.ope("U", "G_m", {{1, "-G_m"}});
  b.a.set_regular("G_p", "G_p");
  b.a.set_regular("G_m", "G_m");
  b.ope("G_p", "G_m",
        {{3, "(2*c-6*c^2)/(1+c)*one"},
         {2, "(2-6*c)/(1+c)*U"},
         {1, "2*T - 4/(1+c)*N(U,U) + (1-3*c)/(1+c)*D(U)"}});
  return bind_opt(std::move(b.a), "c", c);
}

OpeAlgebra w32_ghosts() {
  Builder b("W32_ghosts");
  b.ghost_pair("bt_T", "c_T", 2);
  b.ghost_pair("b_U", "ct_U", 1);
  b.ghost_pair("b_p", "c_p", BigRational(3, 2));
  b.ghost_pair("b_m", "c_m", BigRational(3, 2));
  b.a.regular_by_default = true;
  b.ope("bt_T", "c_T", {{1, "one"}});
  b.ope("b_U", "ct_U", {{1, "one"}});
  b.ope("b_p", "c_p", {{1, "one"}});
  b.ope("b_m", "c_m", {{1, "one"}});
  b.ope("bt_T", "ct_U", {{2, "-2*N(c_T,b_U)"}, {1, "-2*(2*N(c_T,D(b_U)) + N(D(c_T),b_U))"}});
  b.ope("bt_T", "bt_T", {{1, "-4*N(D(b_U),b_U)"}});
  b.ope("ct_U", "ct_U", {{1, "-8*N(c_p,c_m)"}});
  b.ope("ct_U", "b_p", {{1, "4*N(b_U,c_m)"}});
  b.ope("ct_U", "b_m", {{1, "-4*N(b_U,c_p)"}});
  return b.a;
}

OpeAlgebra w32_canonical_ghosts() {
  Builder b("W32_canonical_ghosts");
  b.ghost_pair("b_T", "c_T", 2);
  b.ghost_pair("b_U", "c_U", 1);
  b.ghost_pair("b_p", "c_p", BigRational(3, 2));
  b.ghost_pair("b_m", "c_m", BigRational(3, 2));
  b.a.regular_by_default = true;
  for (const auto& [x, y] : {std::pair{"b_T", "c_T"}, {"b_U", "c_U"}, {"b_p", "c_p"}, {"b_m", "c_m"}})
    b.ope(x, y, {{1, "one"}});
  return b.a;
}

AlgebraBundle bundle(const OpeAlgebra& matter, const OpeAlgebra& ghosts) {
  OpeAlgebra c;
  c.name = matter.name + "+" + ghosts.name;
  c.params = matter.params;
  for (const auto& p : ghosts.params)
    if (std::find(c.params.begin(), c.params.end(), p) == c.params.end()) c.params.push_back(p);
  c.defs = matter.defs;
  for (const auto& d : ghosts.defs) {
    auto it = std::find_if(c.defs.begin(), c.defs.end(), [&](const auto& e) { return e.first == d.first; });
    if (it == c.defs.end())
      c.defs.push_back(d);
    else if (it->second != d.second)
      throw std::invalid_argument("definition " + d.first + " differs between the two algebras");
  }
  for (const auto& g : matter.generators()) c.add_generator(g);
  for (const auto& g : ghosts.generators()) {
    if (c.find(g.name)) throw std::invalid_argument("generator name " + g.name + " occurs in both algebras");
    c.add_generator(g);
  }
  int nm = static_cast<int>(matter.generators().size());
  auto copy = [&](const OpeAlgebra& src, int offset) {
    int n = static_cast<int>(src.generators().size());
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const std::string& x = src.generator(i).name;
        const std::string& y = src.generator(j).name;
        if (const PoleSeries* p = src.stored(i, j)) {
          PoleSeries q;
          for (const auto& [k, e] : *p) q[k] = shift(e, offset);
          c.set_ope(x, y, std::move(q));
        } else if (const PoleSeries* r = src.stored(j, i)) {
          PoleSeries q;
          for (const auto& [k, e] : *r) q[k] = shift(e, offset);
          c.set_ope(y, x, std::move(q));
        } else if (src.declared_regular(i, j)) {
          c.set_regular(x, y);
        }
      }
    }
  };
  copy(matter, 0);
  copy(ghosts, nm);
  for (const auto& g : matter.generators())
    for (const auto& h : ghosts.generators()) c.set_regular(g.name, h.name);
  return {matter, ghosts, std::move(c)};
}

FieldExpr ghost_stress(const OpeAlgebra& a, const std::vector<std::pair<std::string, std::string>>& pairs) {
  ope::OpeEngine e(a);
  FieldExpr t;
  for (const auto& [b, c] : pairs) {
    RF lambda(a.generator(a.index(b)).weight);
    t.add_scaled(e.normal_product(e.f(b, 1), e.f(c)), -(lambda - RF(1)));
    t.add_scaled(e.normal_product(e.f(b), e.f(c, 1)), -lambda);
  }
  return t;
}

FieldExpr ghost_stress_w3(const OpeAlgebra& a) { return ghost_stress(a, {{"b_T", "c_T"}, {"b_W", "c_W"}}); }

FieldExpr ghost_stress_w32(const OpeAlgebra& a) {
  auto pick = [&](const char* x, const char* y) { return a.find(x) ? std::string(x) : std::string(y); };
  return ghost_stress(a, {{pick("b_T", "bt_T"), "c_T"}, {"b_U", pick("c_U", "ct_U")}, {"b_p", "c_p"}, {"b_m", "c_m"}});
}

std::string data_file(const std::string& name) { return std::string(WBRST_DATA_DIR) + "/" + name + ".alg"; }

OpeAlgebra load_bundled(const std::string& name) { return ope::load_algebra(data_file(name)); }

std::vector<std::string> bundled_names() {
  return {"w3", "w3_printed", "w3_ghosts", "w32", "w32_ghosts", "w32_canonical_ghosts"};
}

}  // namespace wbrst::cft
