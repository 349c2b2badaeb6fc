#include <gtest/gtest.h>

#include "wbrst/qla/datasets.hpp"

using namespace wbrst;
using namespace wbrst::qla;

namespace {

void expect_all_pass(const AxiomReport& r) {
  for (const auto& c : r.checks) {
    EXPECT_TRUE(c.pass) << c.name << " " << (c.first_nonzero.empty() ? c.note : c.first_nonzero[0]);
  }
}

RF trace(const Tensor& t) {
  RF s;
  for (std::size_t i = 0; i < t.lower_size(); ++i) s += t(i, i);
  return s;
}

}  // namespace

TEST(Tensor, CompositionFollowsWrittenOrder) {
  Tensor a(2, 1, 1), b(2, 1, 1);
  a.at({1}, {0}) = RF(1);  // e0 -> e1
  b.at({0}, {1}) = RF(5);  // e1 -> 5 e0
  Tensor ab = a * b;
  EXPECT_EQ(ab.at({0}, {0}), RF(5));
  EXPECT_TRUE((b * a).at({0}, {0}).is_zero());
  Tensor s = super_permutation({0, 0});
  EXPECT_EQ(s.entries()[((1 * 2 + 0) * 2 + 0) * 2 + 1], RF(1));
}

TEST(Tensor, InverseAndSingularity) {
  Tensor s = super_permutation({0, 1});
  EXPECT_EQ(inverse(s) * s, Tensor::identity(2, 2));
  EXPECT_THROW(inverse(Tensor(2, 2, 2)), MathError);
}

TEST(SuperPermutation, Examples) {
  Tensor p = super_permutation({0, 0});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_EQ(p.at({j, i}, {i, j}), RF(1));
  Tensor odd = super_permutation({1});
  EXPECT_EQ(odd.at({0, 0}, {0, 0}), RF(-1));
  Tensor mixed = super_permutation({0, 1});
  EXPECT_EQ(mixed.at({1, 1}, {1, 1}), RF(-1));
  EXPECT_EQ(mixed.at({1, 0}, {0, 1}), RF(1));
  EXPECT_EQ(mixed.at({0, 1}, {1, 0}), RF(1));
}

TEST(LieSuperTwist, ConjugationIdentity) {
  for (const Parities& p : {Parities{0, 0}, Parities{1}, Parities{0, 1}, Parities{1, 0, 1}}) {
    auto [phi, st] = lie_super_twist(p);
    EXPECT_EQ(sigma_tilde(super_permutation(p), phi), st);
  }
  auto [phi1, st1] = lie_super_twist({1});
  EXPECT_EQ(phi1.at({0, 0}, {0, 0}), RF(1));
  EXPECT_EQ(st1.at({0, 0}, {0, 0}), RF(-1));
  auto [phi0, st0] = lie_super_twist({0, 0});
  EXPECT_EQ(phi0, super_permutation({0, 0}));
  EXPECT_EQ(st0, super_permutation({0, 0}));
}

TEST(QlaAxioms, BundledDataPass) {
  for (const auto& f : bundled_qla()) {
    SCOPED_TRACE(f.name);
    expect_all_pass(check_qla_axioms(f.data));
    expect_all_pass(check_twist_axioms(f.data.sigma, f.phi, &f.data.c));
    expect_all_pass(check_proof_identities(f.data.sigma, f.data.c, f.phi));
  }
}

TEST(QlaAxioms, So3WitnessIsHalfC) {
  auto f = so3();
  auto r = check_qla_axioms(f.data);
  ASSERT_TRUE(r.witness_t.has_value());
  EXPECT_EQ(f.data.c - (Tensor::identity(3, 2) - f.data.sigma) * *r.witness_t, Tensor(3, 1, 2));
  auto t = solve_t(f.data.sigma, f.data.c);
  EXPECT_EQ(*t, f.data.c * RF(BigRational(1, 2)));
}

TEST(QlaAxioms, MutatedStructureConstantBreaksJacobi) {
  auto f = so3();
  f.data.c.at({2}, {0, 1}) = RF(-1);
  auto r = check_qla_axioms(f.data);
  EXPECT_FALSE(r.get("jacobi").pass);
  EXPECT_FALSE(r.get("jacobi").first_nonzero.empty());
  EXPECT_FALSE(r.get("antisymmetry").pass);
  EXPECT_FALSE(r.get("t_exists").pass);
  // A3 projects out the symmetric part of the inner bracket, and what remains
  // closes on c(e_i, e_i) = 0, so this identity survives the mutation.
  auto p = check_proof_identities(f.data.sigma, f.data.c, f.phi);
  EXPECT_TRUE(p.get("impo_2").pass);
}

TEST(QlaAxioms, EverySingleEntryMutationIsDetected) {
  for (const auto& f : bundled_qla()) {
    for (bool on_sigma : {true, false}) {
      const Tensor& base = on_sigma ? f.data.sigma : f.data.c;
      for (std::size_t u = 0; u < base.upper_size(); ++u)
        for (std::size_t l = 0; l < base.lower_size(); ++l) {
          QlaFile g = f;
          Tensor& t = on_sigma ? g.data.sigma : g.data.c;
          t(u, l) += RF(1);
          bool caught = !check_qla_axioms(g.data).all_pass() ||
                        !check_twist_axioms(g.data.sigma, g.phi, &g.data.c).all_pass() ||
                        !check_proof_identities(g.data.sigma, g.data.c, g.phi).all_pass();
          // sigma^{FF}_{EE} += 1 only adds the relation F F = 0, which super_ef already has.
          bool harmless = f.name == "super_ef" && on_sigma && u == 3 && l == 0;
          EXPECT_EQ(caught, !harmless) << f.name << (on_sigma ? " sigma " : " c ") << u << "," << l;
        }
    }
  }
}

TEST(SigmaTilde, Examples) {
  Tensor s = super_permutation({0, 0, 0});
  EXPECT_EQ(sigma_tilde(s, s), s);
  auto l = lyubashenko();
  EXPECT_EQ(sigma_tilde(l.data.sigma, l.phi), l.data.sigma);
  EXPECT_THROW(sigma_tilde(s, Tensor(3, 2, 2)), MathError);
}

TEST(Antisymmetrizer, Examples) {
  Tensor p = super_permutation({0, 0});
  Tensor a2 = antisymmetrizer(p, 2);
  EXPECT_EQ(a2, (Tensor::identity(2, 2) - p) * RF(BigRational(1, 2)));
  EXPECT_TRUE(antisymmetrizer(p, 3).is_zero());
  Tensor a3 = antisymmetrizer(super_permutation({0, 0, 0}), 3);
  EXPECT_EQ(trace(a3), RF(1));
  EXPECT_EQ(a3 * a3, a3);
  Tensor bad = p;
  bad.at({0, 0}, {0, 0}) = RF(2);
  EXPECT_THROW(antisymmetrizer(bad, 2), MathError);
}

TEST(Antisymmetrizer, IdempotentOnBundledSigma) {
  for (const auto& f : bundled_qla()) {
    for (int k = 1; k <= 4; ++k) {
      Tensor a = antisymmetrizer(f.data.sigma, k);
      EXPECT_EQ(a * a, a) << f.name << " k=" << k;
      Tensor st = antisymmetrizer(sigma_tilde(f.data.sigma, f.phi), k);
      EXPECT_EQ(st * st, st) << f.name << " tilde k=" << k;
    }
  }
}

TEST(HigherPhi, Examples) {
  Tensor p = super_permutation({0, 0, 0});
  EXPECT_EQ(higher_phi(p, 2, 3), p);
  Tensor rev = higher_phi(p, 1, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) EXPECT_EQ(rev.at({c, b, a}, {a, b, c}), RF(1));
}

TEST(QlaFile, RoundTripAndErrors) {
  for (const auto& f : bundled_qla()) {
    QlaFile g = parse_qla(write_qla(f));
    EXPECT_EQ(g.data.sigma, f.data.sigma);
    EXPECT_EQ(g.data.c, f.data.c);
    EXPECT_EQ(g.phi, f.phi);
    EXPECT_EQ(g.data.parities, f.data.parities);
  }
  QlaFile s = parse_qla("dim 2\nparities even odd\nsigma = superperm\nc 1 2 2 = 1\nc 2 1 2 = -1\nphi = liesuper\n");
  EXPECT_EQ(s.data.c, super_ef().data.c);
  EXPECT_EQ(s.phi, super_ef().phi);
  EXPECT_THROW(parse_qla("dim 2\nc 1 3 1 = 1\n"), std::runtime_error);
  EXPECT_THROW(parse_qla("dim 2\nsigma 1 1 1 1 1\n"), std::runtime_error);
  EXPECT_THROW(parse_qla("bogus\n"), std::runtime_error);
}

TEST(QlaFile, BundledFilesMatchConstructors) {
  for (const auto& f : bundled_qla()) {
    QlaFile g = load_qla(std::string(WBRST_DATA_DIR) + "/" + f.name + ".qla");
    EXPECT_EQ(g.data.sigma, f.data.sigma) << f.name;
    EXPECT_EQ(g.data.c, f.data.c) << f.name;
    EXPECT_EQ(g.phi, f.phi) << f.name;
  }
}
