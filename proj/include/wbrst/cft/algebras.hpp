#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wbrst/ope/algebra.hpp"
#include "wbrst/ope/engine.hpp"

namespace wbrst::cft {

using ope::FieldExpr;
using ope::OpeAlgebra;

/// Which coefficient of d^3 T to put in pole 1 of W W.
enum class A2Mode {
  ExchangeConsistent,  // (c-10)/(3(22+5c)), the value exchange symmetry forces
  AsPrinted,           // (2/9) a1
};

/// W3 with symbolic c, or with c substituted. Throws MathError at c = -22/5.
OpeAlgebra w3(std::optional<BigRational> c = std::nullopt, A2Mode mode = A2Mode::ExchangeConsistent);

/// Two-parameter ghost system b_T, c_T, b_W, c_W; unset parameters stay symbolic.
OpeAlgebra w3_ghosts(std::optional<BigRational> g1 = std::nullopt, std::optional<BigRational> g2 = std::nullopt);

/// Bosonic W3^(2) (T, U, G_p, G_m). Throws MathError at c = -1.
OpeAlgebra w32(std::optional<BigRational> c = std::nullopt);

/// Deformed W3^(2) ghosts: bt_T, c_T, b_U, ct_U, b_p, c_p, b_m, c_m.
OpeAlgebra w32_ghosts();
/// Free bc pairs b_T, c_T, b_U, c_U, b_p, c_p, b_m, c_m.
OpeAlgebra w32_canonical_ghosts();

struct AlgebraBundle {
  OpeAlgebra matter;
  OpeAlgebra ghosts;
  OpeAlgebra combined;
};

/// Disjoint union with all matter-ghost OPEs regular. Throws
/// std::invalid_argument when generator or parameter names clash.
AlgebraBundle bundle(const OpeAlgebra& matter, const OpeAlgebra& ghosts);

/// T_gh = -(b_T' c_T) - 2(b_T c_T') - 2(b_W' c_W) - 3(b_W c_W') in any algebra
/// that has those four generators.
FieldExpr ghost_stress_w3(const OpeAlgebra& a);

/// Ghost stress tensor sum over the pairs (b, c, lambda) of -(lambda-1)(b' c) - lambda(b c').
FieldExpr ghost_stress(const OpeAlgebra& a, const std::vector<std::pair<std::string, std::string>>& pairs);

/// T_gh for the W3^(2) ghosts, using the names of either ghost algebra.
FieldExpr ghost_stress_w32(const OpeAlgebra& a);

/// Bundled algebra files, looked up in the data directory.
std::string data_file(const std::string& name);
OpeAlgebra load_bundled(const std::string& name);
std::vector<std::string> bundled_names();

}  // namespace wbrst::cft
