#include <gtest/gtest.h>

#include <random>

#include "wbrst/qla/datasets.hpp"
#include "wbrst/qla/omega.hpp"

using namespace wbrst;
using namespace wbrst::qla;

namespace {

OmegaAlgebra algebra(const QlaFile& f) { return OmegaAlgebra(f.data, f.phi); }

QlaFile abelian(int n) {
  QlaFile f;
  f.data.n = n;
  f.data.parities.assign(static_cast<std::size_t>(n), 0);
  f.data.sigma = super_permutation(f.data.parities);
  f.data.c = Tensor(n, 1, 2);
  f.phi = f.data.sigma;
  return f;
}

OmegaElement single(int n, Sector s, std::vector<int> idx, const RF& v) {
  Tensor t(n, s.rank(), 0);
  t.at(idx, {}) = v;
  OmegaElement e;
  e.terms.emplace(s, t);
  return e;
}

}  // namespace

TEST(Omega, CanonicalizeExamples) {
  auto f = so3();
  auto alg = algebra(f);
  OmegaElement sym = single(3, {2, 0, 0}, {0, 1}, RF(1)) + single(3, {2, 0, 0}, {1, 0}, RF(1));
  EXPECT_TRUE(alg.canonicalize(sym).is_zero());

  OmegaElement x = alg.canonicalize(single(3, {0, 2, 0}, {0, 1}, RF(1)));
  OmegaElement expect = single(3, {0, 2, 0}, {0, 1}, RF(BigRational(1, 2))) +
                        single(3, {0, 2, 0}, {1, 0}, RF(BigRational(1, 2))) +
                        single(3, {0, 1, 0}, {2}, RF(BigRational(1, 2)));
  EXPECT_EQ(x, expect);
  EXPECT_EQ(alg.canonicalize(x), x);
}

TEST(Omega, MultiplyExamples) {
  auto f = so3();
  auto alg = algebra(f);
  OmegaElement bc = alg.multiply(alg.b(0), alg.c(1));
  EXPECT_EQ(bc, single(3, {1, 0, 1}, {1, 0}, RF(-1)));
  OmegaElement bc0 = alg.multiply(alg.b(0), alg.c(0));
  EXPECT_EQ(bc0, alg.unit() - alg.multiply(alg.c(0), alg.b(0)));
  EXPECT_EQ(alg.multiply(alg.b(0), alg.chi(2)), alg.multiply(alg.chi(2), alg.b(0)));
  OmegaElement comm = alg.multiply(alg.chi(0), alg.chi(1)) - alg.multiply(alg.chi(1), alg.chi(0));
  EXPECT_EQ(comm, alg.chi(2));

  auto ab = abelian(2);
  auto alg2 = algebra(ab);
  EXPECT_TRUE((alg2.multiply(alg2.chi(0), alg2.chi(1)) - alg2.multiply(alg2.chi(1), alg2.chi(0))).is_zero());
}

TEST(Omega, SectorOverflowIsNamed) {
  auto alg = algebra(so3());
  OmegaElement x = alg.multiply(alg.chi(0), alg.chi(1));
  try {
    alg.multiply(x, alg.chi(2));
    FAIL() << "expected overflow";
  } catch (const SectorOverflow& e) {
    EXPECT_NE(std::string(e.what()).find("(0,3,0)"), std::string::npos);
  }
}

TEST(Omega, BuildQ) {
  auto ab = abelian(3);
  auto q0 = algebra(ab).build_q();
  EXPECT_EQ(q0.nonzero_sectors(), (std::vector<Sector>{Sector{1, 1, 0}}));

  auto alg = algebra(so3());
  auto q = alg.build_q();
  const Tensor& gh = q.terms.at(Sector{2, 0, 1});
  EXPECT_EQ(gh.at({0, 1, 2}, {}), RF(BigRational(-1, 2)));
  EXPECT_EQ(gh.at({1, 0, 2}, {}), RF(BigRational(1, 2)));
  EXPECT_EQ(gh.at({2, 0, 1}, {}), RF(BigRational(-1, 2)));
  GhostNumber g = ghost_number(q);
  EXPECT_FALSE(g.mixed);
  EXPECT_EQ(g.value, 1);

  auto sup = algebra(super_ef()).build_q();
  EXPECT_TRUE(sup.terms.count(Sector{2, 0, 1}));
  EXPECT_EQ(ghost_number(sup).value, 1);
}

TEST(Omega, GhostNumbers) {
  auto alg = algebra(so3());
  EXPECT_EQ(ghost_number(alg.b(1)).value, -1);
  OmegaElement m = alg.multiply(alg.multiply(alg.c(0), alg.chi(1)), alg.b(2));
  EXPECT_EQ(ghost_number(m).value, 0);
  EXPECT_TRUE(ghost_number(alg.c(0) + alg.b(0)).mixed);
}

TEST(Omega, BundledChargesAreNilpotent) {
  for (const auto& f : bundled_qla()) {
    auto alg = algebra(f);
    auto r = verify_nilpotent(alg, alg.build_q());
    EXPECT_TRUE(r.zero) << f.name << "\n" << r.residual.str();
  }
  auto ab = abelian(2);
  auto alg = algebra(ab);
  EXPECT_TRUE(verify_nilpotent(alg, alg.build_q()).zero);
}

TEST(Omega, MutatedStructureConstantsSpoilNilpotency) {
  auto f = so3();
  f.data.c.at({0}, {0, 1}) = RF(1);
  f.data.c.at({0}, {1, 0}) = RF(-1);
  EXPECT_FALSE(check_qla_axioms(f.data).get("jacobi").pass);
  auto alg = algebra(f);
  auto r = verify_nilpotent(alg, alg.build_q());
  EXPECT_FALSE(r.zero);
  // Only the ghost cubic sector feels the Jacobiator, which points along e2.
  EXPECT_EQ(r.residual.nonzero_sectors(), (std::vector<Sector>{Sector{3, 0, 1}}));
  EXPECT_EQ(r.residual.terms.at(Sector{3, 0, 1}).at({0, 1, 2, 1}, {}), RF(BigRational(-1, 6)));
}

TEST(Omega, SymmetricMutationOnlySeesTheAntisymmetricPart) {
  // c^3_{12} -> -1 leaves c^3_{12} = c^3_{21}. Ghost antisymmetry keeps only
  // the antisymmetric part of c, which is the Lie algebra [e2,e3]=e1,
  // [e3,e1]=e2, [e1,e2]=0, so the charge still squares to zero.
  auto f = so3();
  f.data.c.at({2}, {0, 1}) = RF(-1);
  auto alg = algebra(f);
  EXPECT_TRUE(verify_nilpotent(alg, alg.build_q()).zero);
}

TEST(Omega, MultiplicationIsAssociativeAndGhostAdditive) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-2, 2);
  for (const auto& f : bundled_qla()) {
    auto alg = algebra(f);
    int n = f.data.n;
    auto rnd = [&](bool with_chi, bool with_b) {
      OmegaElement e = alg.scalar(RF(d(rng)));
      for (int i = 0; i < n; ++i) {
        e += alg.c(i) * RF(d(rng));
        if (with_chi) e += alg.chi(i) * RF(d(rng));
        if (with_b) e += alg.b(i) * RF(d(rng));
      }
      return e;
    };
    for (int trial = 0; trial < 4; ++trial) {
      OmegaElement x = rnd(true, true), y = rnd(true, false), z = rnd(false, true);
      EXPECT_EQ(alg.multiply(alg.multiply(x, y), z), alg.multiply(x, alg.multiply(y, z))) << f.name;
    }
    OmegaElement cb = alg.multiply(alg.c(0), alg.b(n - 1));
    OmegaElement q = alg.build_q();
    EXPECT_EQ(ghost_number(alg.multiply(q, cb)).value, 1);
    EXPECT_EQ(alg.canonicalize(q), q);
  }
}

// Independent realisation of the so(3) charge: Jordan-Wigner fermionic ghosts
// tensored with the adjoint representation of the constraints.
TEST(Omega, So3ChargeSquaresToZeroInAMatrixRepresentation) {
  using M = std::vector<std::vector<BigRational>>;
  auto zeros = [](std::size_t s) { return M(s, std::vector<BigRational>(s)); };
  auto mul = [&](const M& a, const M& b) {
    M r = zeros(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t k = 0; k < a.size(); ++k)
        if (a[i][k] != 0)
          for (std::size_t j = 0; j < a.size(); ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
  };
  auto add = [](M a, const M& b, const BigRational& s) {
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j) a[i][j] += s * b[i][j];
    return a;
  };
  auto kronm = [&](const M& a, const M& b) {
    M r = zeros(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j)
        for (std::size_t k = 0; k < b.size(); ++k)
          for (std::size_t l = 0; l < b.size(); ++l) r[i * b.size() + k][j * b.size() + l] = a[i][j] * b[k][l];
    return r;
  };
  M id2 = {{1, 0}, {0, 1}}, z = {{1, 0}, {0, -1}}, up = {{0, 0}, {1, 0}}, dn = {{0, 1}, {0, 0}};
  M id3 = zeros(3);
  for (int i = 0; i < 3; ++i) id3[i][i] = 1;
  std::vector<M> cg, bg;
  for (int i = 0; i < 3; ++i) {
    M cc = {{1}}, bb = {{1}};
    for (int k = 0; k < 3; ++k) {
      cc = kronm(cc, k < i ? z : (k == i ? up : id2));
      bb = kronm(bb, k < i ? z : (k == i ? dn : id2));
    }
    cg.push_back(kronm(cc, id3));
    bg.push_back(kronm(bb, id3));
  }
  auto f = so3();
  std::vector<M> chi;
  for (int i = 0; i < 3; ++i) {
    M t = zeros(3);
    for (int a = 0; a < 3; ++a)
      for (int j = 0; j < 3; ++j) t[a][j] = f.data.c.at({a}, {i, j}).constant_value();
    chi.push_back(kronm(kronm(kronm(id2, id2), id2), t));
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      M comm = add(mul(chi[i], chi[j]), mul(chi[j], chi[i]), -1);
      for (int k = 0; k < 3; ++k) comm = add(comm, chi[k], -f.data.c.at({k}, {i, j}).constant_value());
      EXPECT_EQ(comm, zeros(24));
      M anti = add(mul(bg[i], cg[j]), mul(cg[j], bg[i]), 1);
      EXPECT_EQ(anti, i == j ? kronm(kronm(kronm(id2, id2), id2), id3) : zeros(24));
    }
  Tensor pc = f.phi * f.data.c;
  M q = zeros(24);
  for (int i = 0; i < 3; ++i) q = add(q, mul(cg[i], chi[i]), 1);
  for (int k1 = 0; k1 < 3; ++k1)
    for (int k2 = 0; k2 < 3; ++k2)
      for (int l = 0; l < 3; ++l) {
        BigRational v = pc.at({l}, {k1, k2}).constant_value();
        if (v != 0) q = add(q, mul(mul(cg[k2], cg[k1]), bg[l]), -v / 2);
      }
  EXPECT_EQ(mul(q, q), zeros(24));
  bool nonzero = false;
  for (const auto& row : q)
    for (const auto& v : row) nonzero = nonzero || v != 0;
  EXPECT_TRUE(nonzero);
}
