#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wbrst/qla/tensor.hpp"

namespace wbrst::qla {

using Parities = std::vector<int>;  // 0 even, 1 odd

struct QlaData {
  int n = 0;
  Parities parities;
  Tensor sigma;  // up 2, low 2
  Tensor c;      // up 1, low 2: c^k_{ij}
};

struct TwistData {
  Tensor phi;
  Tensor phi_inverse;
  static TwistData from_phi(const Tensor& phi);
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::vector<std::string> first_nonzero;
  std::string note;
};

struct AxiomReport {
  std::vector<CheckResult> checks;
  std::optional<Tensor> witness_t;

  bool all_pass() const;
  const CheckResult& get(const std::string& name) const;
  void add(const std::string& name, const Tensor& residual, std::string note = {});
};

Tensor super_permutation(const Parities& parities);
/// The twist phi and the ghost braid matrix sigma~ of the canonical Lie
/// superalgebra ghost sector.
std::pair<Tensor, Tensor> lie_super_twist(const Parities& parities);

AxiomReport check_qla_axioms(const QlaData& d);
/// A t with c = (1 - sigma) t, when one exists.
std::optional<Tensor> solve_t(const Tensor& sigma, const Tensor& c);

/// phi sigma phi^{-1}; throws MathError for singular phi.
Tensor sigma_tilde(const Tensor& sigma, const Tensor& phi);

/// Twist compatibilities; the phi/C check is included when c is given.
AxiomReport check_twist_axioms(const Tensor& sigma, const Tensor& phi, const Tensor* c = nullptr);

/// Antisymmetrizing projector on k factors; throws MathError if sigma is not
/// a unitary braid matrix.
Tensor antisymmetrizer(const Tensor& sigma, int k);

/// phi_{i..j} as a map on the j-i+1 factors i..j.
Tensor higher_phi(const Tensor& phi, int i, int j);

AxiomReport check_proof_identities(const Tensor& sigma, const Tensor& c, const Tensor& phi);

/// sigma_j acting on factors j, j+1 of k factors.
Tensor sigma_at(const Tensor& sigma, int j, int k);

}  // namespace wbrst::qla
