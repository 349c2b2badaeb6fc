#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <thread>

#include "wbrst/ope/algebra_file.hpp"
#include "wbrst/ope/analysis.hpp"

using namespace wbrst;
using namespace wbrst::ope;

namespace {

const char* kVirasoro = R"(
algebra Vir
param c
field T weight=2 parity=even ghost=0
ope T T : 4 -> c/2*one ; 2 -> 2*T ; 1 -> D(T)
)";

std::string w3_text(const std::string& a2) {
  return "algebra W3\nparam c\n"
         "def a = 32/(22+5*c)\n"
         "def a1 = (3*c-6)/(44+10*c)\n"
         "def a2 = " + a2 + "\n"
         "field T weight=2 parity=even ghost=0\n"
         "field W weight=3 parity=even ghost=0\n"
         "ope T T : 4 -> c/2*one ; 2 -> 2*T ; 1 -> D(T)\n"
         "ope T W : 2 -> 3*W ; 1 -> D(W)\n"
         "ope W W : 6 -> c/3*one ; 4 -> 2*T ; 3 -> D(T) ; 2 -> a1*D2(T) + a*N(T,T) ; "
         "1 -> a2*D3(T) + a/2*D(N(T,T))\n";
}

const std::string kConsistentA2 = "(c-10)/(3*(22+5*c))";
const std::string kPrintedA2 = "2/9*a1";

const char* kGhosts = R"(
algebra gh
param g1 g2
field b_T weight=2 parity=odd ghost=-1
field c_T weight=-1 parity=odd ghost=1
field b_W weight=3 parity=odd ghost=-1
field c_W weight=-2 parity=odd ghost=1
regular_by_default
ope b_T c_T : 1 -> one
ope b_W c_W : 1 -> one
ope c_T b_W : 2 -> g1*N(b_T,c_W) ; 1 -> g2*D(N(b_T,c_W)) + g1*N(b_T,D(c_W))
ope c_T c_T : 1 -> (g1+g2)*N(D(c_W),c_W)
ope b_W b_W : 1 -> (g1-g2)*N(D(b_T),b_T)
)";

// W3 plus canonical ghosts in one table.
const char* kW3Ghosts = R"(
algebra w3gh
param c
def a = 32/(22+5*c)
field T weight=2 parity=even ghost=0
field W weight=3 parity=even ghost=0
field b_T weight=2 parity=odd ghost=-1
field c_T weight=-1 parity=odd ghost=1
field b_W weight=3 parity=odd ghost=-1
field c_W weight=-2 parity=odd ghost=1
regular_by_default
ope T T : 4 -> c/2*one ; 2 -> 2*T ; 1 -> D(T)
ope T W : 2 -> 3*W ; 1 -> D(W)
ope W W : 6 -> c/3*one ; 4 -> 2*T ; 3 -> D(T) ; 2 -> (3*c-6)/(44+10*c)*D2(T) + a*N(T,T) ; 1 -> (c-10)/(3*(22+5*c))*D3(T) + a/2*D(N(T,T))
ope b_T c_T : 1 -> one
ope b_W c_W : 1 -> one
)";

FieldExpr px(const OpeAlgebra& a, const std::string& s) { return parse_field_expr(a, s); }

PoleSeries poles(const OpeAlgebra& a, std::initializer_list<std::pair<int, std::string>> items) {
  PoleSeries p;
  for (const auto& [n, s] : items) p[n] = px(a, s);
  return p;
}

Monomial mono(const OpeAlgebra& a, const std::string& s) {
  FieldExpr e = px(a, s);
  EXPECT_EQ(e.size(), 1u) << s;
  return e.terms().begin()->first;
}

}  // namespace

TEST(Ope, FlipExamples) {
  auto a = parse_algebra(w3_text(kConsistentA2));
  OpeEngine e(a);
  PoleSeries tw = e.ope(e.f("T"), e.f("W"));
  EXPECT_TRUE(poles_equal(tw, poles(a, {{2, "3*W"}, {1, "D(W)"}})));
  PoleSeries wt = e.flip(tw, false, false);
  EXPECT_TRUE(poles_equal(wt, poles(a, {{2, "3*W"}, {1, "2*D(W)"}})));
  EXPECT_TRUE(poles_equal(e.flip(wt, false, false), tw));
  EXPECT_TRUE(poles_equal(e.ope(e.f("W"), e.f("T")), wt));

  PoleSeries tt = e.ope(e.f("T"), e.f("T"));
  EXPECT_TRUE(poles_equal(e.flip(tt, false, false), tt));

  auto g = parse_algebra(kGhosts);
  OpeEngine ge(g);
  PoleSeries bc = ge.ope(ge.f("b_T"), ge.f("c_T"));
  EXPECT_TRUE(poles_equal(ge.flip(bc, true, true), poles(g, {{1, "one"}})));
}

TEST(Ope, FlipIsAnInvolutionOnBundledTables) {
  for (const std::string& text : {std::string(kVirasoro), w3_text(kConsistentA2), std::string(kGhosts)}) {
    auto a = parse_algebra(text);
    OpeEngine e(a);
    for (const auto& [key, p] : a.table()) {
      bool oa = a.generator(key.first).odd, ob = a.generator(key.second).odd;
      EXPECT_TRUE(poles_equal(e.flip(e.flip(p, oa, ob), ob, oa), p)) << a.name;
    }
  }
}

TEST(Ope, ValidateTableVirasoroAndW3) {
  EXPECT_TRUE(validate_table(parse_algebra(kVirasoro)).pass());
  EXPECT_TRUE(validate_table(parse_algebra(w3_text(kConsistentA2))).pass());

  auto printed = parse_algebra(w3_text(kPrintedA2));
  auto rep = validate_table(printed);
  ASSERT_EQ(rep.issues.size(), 1u);
  const auto& issue = rep.issues[0];
  EXPECT_EQ(issue.a, "W");
  EXPECT_EQ(issue.pole, 1);
  EXPECT_EQ(issue.kind, "exchange");
  // residual = -2 (a2 - a1/2 + 1/12) d^3 T
  RF c = RF::param("c");
  RF a1 = (RF(3) * c - RF(6)) / (RF(44) + RF(10) * c);
  RF a2 = RF(BigRational(2, 9)) * a1;
  RF expected = RF(-2) * (a2 - a1 / RF(2) + RF(BigRational(1, 12)));
  FieldExpr want = FieldExpr::monomial({make_factor(printed.index("T"), 3)}, expected);
  EXPECT_EQ(issue.residual, want) << printed.expr_str(issue.residual);
}

TEST(Ope, ValidateTableCatchesGrading) {
  auto a = parse_algebra(std::string(kVirasoro) + "field X weight=1 parity=even ghost=0\nope T X : 1 -> D(T)\n");
  auto rep = validate_table(a);
  ASSERT_FALSE(rep.pass());
  EXPECT_EQ(rep.issues[0].kind, "grading");
  EXPECT_EQ(rep.issues[0].b, "X");
}

TEST(Ope, CompositeOpes) {
  auto a = parse_algebra(kVirasoro);
  OpeEngine e(a);
  FieldExpr tt = e.normal_product(e.f("T"), e.f("T"));
  PoleSeries p = e.ope(e.f("T"), tt);
  EXPECT_TRUE(poles_equal(p, poles(a, {{6, "3*c*one"},
                                       {4, "(c+8)*T"},
                                       {3, "3*D(T)"},
                                       {2, "4*N(T,T)"},
                                       {1, "D(N(T,T))"}})));
  EXPECT_EQ(e.ope(FieldExpr::unit(), tt).size(), 0u);
  EXPECT_EQ(e.ope(tt, FieldExpr::unit(RF(3))).size(), 0u);
}

TEST(Ope, DerivativeExamples) {
  auto g = parse_algebra(kGhosts);
  OpeEngine e(g);
  FieldExpr bc = e.normal_product(e.f("b_T"), e.f("c_T"));
  EXPECT_EQ(e.derivative(bc), px(g, "N(D(b_T),c_T) + N(b_T,D(c_T))"));
  EXPECT_TRUE(e.derivative(FieldExpr::unit()).is_zero());

  auto v = parse_algebra(kVirasoro);
  OpeEngine ve(v);
  FieldExpr d = ve.derivative(ve.normal_product(ve.f("T"), ve.f("T")));
  FieldExpr want = FieldExpr::monomial({make_factor(0, 0), make_factor(0, 1)}, RF(2));
  want.add({make_factor(0, 3)}, RF(BigRational(-1, 6)));
  EXPECT_EQ(d, want);
  EXPECT_EQ(ve.normal_product(ve.f("T", 1), ve.f("T")) + ve.normal_product(ve.f("T"), ve.f("T", 1)), want);
}

TEST(Ope, NormalProductExamples) {
  auto g = parse_algebra(kGhosts);
  OpeEngine e(g);
  EXPECT_TRUE(e.normal_product(e.f("b_T"), e.f("b_T")).is_zero());
  EXPECT_TRUE(e.normal_product(e.f("c_W"), e.f("c_W")).is_zero());
  FieldExpr cc = e.normal_product(e.f("c_T"), e.f("c_T"));
  FieldExpr want = e.normal_product(e.f("c_W", 2), e.f("c_W")) * ((RF::param("g1") + RF::param("g2")) / RF(2));
  EXPECT_EQ(cc, want);
  EXPECT_FALSE(cc.is_zero());
  FieldExpr bc = e.normal_product(e.f("b_T"), e.f("c_T"));
  EXPECT_EQ(e.normal_product(bc, FieldExpr::unit()), bc);
  EXPECT_EQ(e.normal_product(FieldExpr::unit(), bc), bc);
  // odd factors anticommute inside a normal product when their OPE is regular
  EXPECT_EQ(e.normal_product(e.f("c_W", 1), e.f("c_W")), -e.normal_product(e.f("c_W"), e.f("c_W", 1)));
}

TEST(Ope, JacobiW3) {
  auto a = parse_algebra(w3_text(kConsistentA2));
  OpeEngine e(a);
  auto rep = jacobi_check(e, e.f("T"), e.f("T"), e.f("W"), 6, 6);
  EXPECT_TRUE(rep.pass());
  EXPECT_FALSE(jacobi_all_generators(e).has_value());

  // a -> a + 1 in the WW table
  std::string text = w3_text(kConsistentA2);
  text.replace(text.find("def a = 32/(22+5*c)"), 19, "def a = 32/(22+5*c)+1");
  auto m = parse_algebra(text);
  OpeEngine me(m);
  auto bad = jacobi_check(me, me.f("W"), me.f("W"), me.f("T"), 6, 6);
  EXPECT_FALSE(bad.pass());
}

TEST(Ope, JacobiW3PrintedA2Fails) {
  auto a = parse_algebra(w3_text(kPrintedA2));
  OpeEngine e(a);
  EXPECT_TRUE(jacobi_all_generators(e).has_value());
}

TEST(Ope, JacobiGhosts) {
  auto g = parse_algebra(kGhosts);
  OpeEngine e(g);
  EXPECT_TRUE(jacobi_check(e, e.f("c_T"), e.f("c_T"), e.f("b_W"), 6, 6).pass());
  EXPECT_FALSE(jacobi_all_generators(e).has_value());

  // break the b_W b_W entry
  std::string text = kGhosts;
  text.replace(text.find("(g1-g2)"), 7, "(g1-g2+1)");
  auto m = parse_algebra(text);
  OpeEngine me(m);
  EXPECT_TRUE(jacobi_all_generators(me).has_value());
}

TEST(Ope, CentralCharge) {
  auto a = parse_algebra(w3_text(kConsistentA2));
  OpeEngine e(a);
  EXPECT_EQ(central_charge(e, e.f("T")), RF::param("c"));
  EXPECT_THROW(central_charge(e, e.f("W")), MathError);
}

TEST(Ope, PrimaryCheck) {
  auto a = parse_algebra(w3_text(kConsistentA2));
  OpeEngine e(a);
  auto w = primary_check(e, e.f("T"), e.f("W"));
  EXPECT_TRUE(w.primary);
  EXPECT_EQ(w.weight, RF(3));
  auto tt = primary_check(e, e.f("T"), e.normal_product(e.f("T"), e.f("T")));
  EXPECT_FALSE(tt.primary);
  EXPECT_NE(tt.reason.find("pole"), std::string::npos);
}

TEST(Ope, Automorphism) {
  auto a = parse_algebra(kW3Ghosts);
  std::map<std::string, int> flipw{{"W", -1}, {"c_W", -1}, {"b_W", -1}};
  EXPECT_TRUE(is_automorphism(a, flipw));
  FieldExpr cw = px(a, "N(c_W,W)");
  EXPECT_EQ(apply_automorphism(a, flipw, cw), cw);
  EXPECT_EQ(apply_automorphism(a, {{"W", -1}}, cw), -cw);
  EXPECT_THROW(apply_automorphism(a, {{"T", -1}}, cw), NotAutomorphism);
  EXPECT_THROW(apply_automorphism(a, {{"b_T", -1}}, cw), NotAutomorphism);
}

TEST(Ope, WeightBasis) {
  auto v = parse_algebra(kVirasoro);
  auto b0 = weight_basis(v, 0, 0, false);
  ASSERT_EQ(b0.size(), 1u);
  EXPECT_TRUE(b0[0].empty());
  EXPECT_EQ(weight_basis(v, 4, 0, false).size(), 2u);  // T'', (TT)

  auto g = parse_algebra(kGhosts);
  auto bm2 = weight_basis(g, -2, 1, true);
  ASSERT_EQ(bm2.size(), 1u);
  EXPECT_EQ(bm2[0], mono(g, "c_W"));

  auto a = parse_algebra(kW3Ghosts);
  auto b1 = weight_basis(a, 1, 1, true);
  EXPECT_EQ(std::set<Monomial>(b1.begin(), b1.end()).size(), b1.size());
  for (const char* s : {"N(c_T,T)", "N(c_W,W)", "N(b_T,N(D(c_T),c_T))", "N(b_T,N(D3(c_W),c_W))",
                        "N(c_T,N(b_W,D(c_W)))", "N(D(b_T),N(D2(c_W),c_W))", "N(D(c_T),N(b_W,c_W))",
                        "N(T,N(b_T,N(D(c_W),c_W)))", "N(D(b_T),N(b_T,N(c_T,N(D(c_W),c_W))))"}) {
    Monomial m = mono(a, s);
    EXPECT_TRUE(std::binary_search(b1.begin(), b1.end(), m)) << s;
  }
  // the literal (c_T b_W c_W'') has weight 2 and so is not in this slice
  EXPECT_FALSE(std::binary_search(b1.begin(), b1.end(), mono(a, "N(c_T,N(b_W,D2(c_W)))")));
  for (const auto& m : b1) {
    Grading gr = a.grading(m);
    EXPECT_EQ(gr.weight, 1);
    EXPECT_EQ(gr.ghost, 1);
    EXPECT_TRUE(gr.odd);
  }

  auto bad = parse_algebra("algebra x\nfield J weight=0 parity=even ghost=0\n");
  EXPECT_THROW(weight_basis(bad, 1, 0, false), InfiniteSlice);
}

TEST(Ope, TotalDerivative) {
  auto g = parse_algebra(kGhosts);
  OpeEngine e(g);
  auto y = is_total_derivative(e, px(g, "N(D(b_T),c_T) + N(b_T,D(c_T))"));
  ASSERT_TRUE(y.has_value());
  EXPECT_EQ(*y, px(g, "N(b_T,c_T)"));
  EXPECT_FALSE(is_total_derivative(e, px(g, "N(b_T,D(c_T))")).has_value());
  auto z = is_total_derivative(e, FieldExpr());
  ASSERT_TRUE(z.has_value());
  EXPECT_TRUE(z->is_zero());
}

TEST(Ope, TotalDerivativeRandomized) {
  auto a = parse_algebra(kW3Ghosts);
  OpeEngine e(a);
  std::mt19937 rng(7);
  auto basis = weight_basis(a, 2, 0, false);
  ASSERT_GT(basis.size(), 5u);
  for (int trial = 0; trial < 8; ++trial) {
    FieldExpr y;
    for (int k = 0; k < 3; ++k) y.add(basis[rng() % basis.size()], RF(static_cast<long>(rng() % 7) - 3));
    FieldExpr x = e.derivative(y);
    auto pre = is_total_derivative(e, x);
    ASSERT_TRUE(pre.has_value());
    EXPECT_EQ(e.derivative(*pre), x);
  }
}

TEST(Ope, LeibnizAndOrderIndependence) {
  auto a = parse_algebra(kW3Ghosts);
  std::vector<FieldExpr> pieces;
  {
    OpeEngine e(a);
    for (const auto& m : weight_basis(a, 2, 0, false)) pieces.push_back(FieldExpr::monomial(m));
    for (const auto& m : weight_basis(a, 1, 1, true)) pieces.push_back(FieldExpr::monomial(m));
  }
  std::mt19937 rng(11);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (int i = 0; i < 12; ++i) pairs.emplace_back(rng() % pieces.size(), rng() % pieces.size());

  OpeEngine e1(a);
  std::vector<FieldExpr> first;
  for (auto [i, j] : pairs) {
    FieldExpr n = e1.normal_product(pieces[i], pieces[j]);
    EXPECT_EQ(e1.derivative(n), e1.normal_product(e1.derivative(pieces[i]), pieces[j]) +
                                    e1.normal_product(pieces[i], e1.derivative(pieces[j])));
    first.push_back(n);
  }
  OpeEngine e2(a);
  std::vector<std::size_t> order(pairs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t k : order) {
    e2.ope(pieces[pairs[k].second], pieces[pairs[k].first]);
    EXPECT_EQ(e2.normal_product(pieces[pairs[k].first], pieces[pairs[k].second]), first[k]);
  }
}

TEST(Ope, SeparateEnginesAgreeAcrossThreads) {
  auto a = parse_algebra(kW3Ghosts);
  FieldExpr q = px(a, "N(c_T,T) + N(c_W,W) + N(b_T,N(D(c_T),c_T))");
  std::vector<PoleSeries> out(3);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < out.size(); ++i)
    threads.emplace_back([&, i] {
      OpeEngine e(a);
      out[i] = e.ope(q, q);
    });
  for (auto& t : threads) t.join();
  EXPECT_TRUE(poles_equal(out[0], out[1]));
  EXPECT_TRUE(poles_equal(out[0], out[2]));
  EXPECT_FALSE(out[0].empty());
}

TEST(Ope, Errors) {
  auto a = parse_algebra("algebra x\nfield A weight=1 parity=even ghost=0\nfield B weight=1 parity=even ghost=0\n"
                         "ope A A : 2 -> one\n");
  OpeEngine e(a);
  try {
    e.ope(e.f("A"), e.f("B"));
    FAIL() << "expected TableGap";
  } catch (const TableGap& g) {
    EXPECT_NE(std::string(g.what()).find("(A, B)"), std::string::npos);
  }
  auto v = parse_algebra(kVirasoro);
  OpeEngine tiny(v, 3);
  FieldExpr ttt = px(v, "N(T,N(T,T))");
  EXPECT_THROW(tiny.ope(ttt, ttt), RewriteFuelExhausted);
}

TEST(AlgebraFile, RoundTrip) {
  for (const std::string& text : {std::string(kVirasoro), w3_text(kConsistentA2), w3_text(kPrintedA2),
                                  std::string(kGhosts), std::string(kW3Ghosts)}) {
    auto a = parse_algebra(text);
    std::string printed = print_algebra(a);
    auto b = parse_algebra(printed);
    EXPECT_TRUE(same_algebra(a, b)) << printed;
    EXPECT_EQ(print_algebra(b), printed);
  }
}

TEST(AlgebraFile, Rejections) {
  EXPECT_THROW(parse_algebra("field D2 weight=1 parity=even ghost=0\n"), AlgebraParseError);
  EXPECT_THROW(parse_algebra("field one weight=1 parity=even ghost=0\n"), AlgebraParseError);
  EXPECT_THROW(parse_algebra("field N weight=1 parity=even ghost=0\n"), AlgebraParseError);
  EXPECT_THROW(parse_algebra("field A weight=1 parity=maybe ghost=0\n"), AlgebraParseError);
  EXPECT_THROW(parse_algebra("field A weight=1 parity=even ghost=0\nope A A : 2 -> q*one\n"), AlgebraParseError);
  EXPECT_THROW(parse_algebra("field A weight=1 parity=even ghost=0\nope A A : 2 -> A*A\n"), AlgebraParseError);
  EXPECT_THROW(parse_algebra("field A weight=1 parity=even ghost=0\nope A A : 0 -> one\n"), AlgebraParseError);
  EXPECT_THROW(parse_algebra("frobnicate\n"), AlgebraParseError);
  // a composite needing a later pair
  EXPECT_THROW(parse_algebra("field A weight=1 parity=even ghost=0\nfield B weight=1 parity=even ghost=0\n"
                             "ope A B : 1 -> N(B,A)\nope B B : 2 -> one\n"),
               AlgebraParseError);
}

TEST(AlgebraFile, ExpressionGrammar) {
  auto a = parse_algebra(w3_text(kConsistentA2));
  EXPECT_EQ(px(a, "2*W - W"), px(a, "W"));
  EXPECT_EQ(px(a, "D(D(T))"), px(a, "D2(T)"));
  EXPECT_EQ(px(a, "c^2/c*T"), px(a, "c*T"));
  EXPECT_EQ(px(a, "3"), FieldExpr::unit(RF(3)));
  EXPECT_EQ(px(a, "N(one,W)"), px(a, "W"));
  EXPECT_EQ(a.expr_str(px(a, "-3/2*W + c*T + D(W)")), "(c)*T - 3/2*W + D(W)");
}
