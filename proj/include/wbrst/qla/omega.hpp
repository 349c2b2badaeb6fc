#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wbrst/qla/axioms.hpp"

namespace wbrst::qla {

/// Monomial shape c^p chi^q b^r.
struct Sector {
  int p = 0, q = 0, r = 0;
  auto operator<=>(const Sector&) const = default;
  int rank() const { return p + q + r; }
  int ghost_number() const { return p - r; }
  std::string str() const;
};

struct SectorOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Element of the smash product. The coefficient of sector (p,q,r) is a
/// Tensor with p+q+r upper indices, listed in written order: the term is
/// sum X[i1..ip j1..jq k1..kr] c^{i1}..c^{ip} chi_{j1}..chi_{jq} b_{k1}..b_{kr}.
struct OmegaElement {
  std::map<Sector, Tensor> terms;

  bool is_zero() const;
  OmegaElement& operator+=(const OmegaElement& o);
  OmegaElement& operator-=(const OmegaElement& o);
  OmegaElement& operator*=(const RF& s);
  friend OmegaElement operator+(OmegaElement a, const OmegaElement& b) { return a += b; }
  friend OmegaElement operator-(OmegaElement a, const OmegaElement& b) { return a -= b; }
  friend OmegaElement operator*(OmegaElement a, const RF& s) { return a *= s; }
  friend bool operator==(const OmegaElement& a, const OmegaElement& b);
  std::vector<Sector> nonzero_sectors() const;
  std::string str(std::size_t limit = 12) const;
};

struct GhostNumber {
  bool mixed = false;
  int value = 0;
};
GhostNumber ghost_number(const OmegaElement& x);

/// Normal-ordering engine for the constraints chi, ghosts c and antighosts b.
/// Canonical form: c-block coefficient projected by A_p(sigma~) in space
/// order (reversed written order), b-block by A_r(sigma~), and a chi pair
/// replaced by its sigma-symmetric part plus the linear remainder through c.
class OmegaAlgebra {
 public:
  OmegaAlgebra(const QlaData& data, const Tensor& phi, Sector cap = {4, 2, 2});

  int n() const { return n_; }
  Sector cap() const { return cap_; }
  const Tensor& sigma_tilde() const { return sigma_tilde_; }

  OmegaElement unit() const;
  OmegaElement c(int i) const;
  OmegaElement chi(int i) const;
  OmegaElement b(int i) const;
  OmegaElement scalar(const RF& s) const;

  OmegaElement canonicalize(const OmegaElement& x) const;
  /// Throws SectorOverflow when the product leaves the sector cap.
  OmegaElement multiply(const OmegaElement& x, const OmegaElement& y) const;
  OmegaElement build_q() const;

 private:
  using Matrix = std::vector<std::vector<RF>>;
  using Coeff = std::vector<RF>;

  int n_;
  Sector cap_;
  QlaData data_;
  Tensor phi_, sigma_tilde_;
  Matrix chi_c_, b_chi_, b_c_, contract_, chi_sym_, chi_lin_;
  std::map<int, Matrix> c_proj_, b_proj_;

  OmegaElement generator(char letter, int i) const;
  std::map<std::string, Coeff> normal_order(std::map<std::string, Coeff> words) const;
  void canonical_into(const Sector& s, Coeff x, OmegaElement& out) const;
  Coeff apply_slots(const Coeff& in, int rank, int start, int kin, int kout, const Matrix& m) const;
};

struct NilpotencyResult {
  bool zero = false;
  OmegaElement residual;
};
NilpotencyResult verify_nilpotent(const OmegaAlgebra& alg, const OmegaElement& q);

}  // namespace wbrst::qla
