#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wbrst/cft/algebras.hpp"

namespace wbrst::cft {

struct PairMismatch {
  std::string a, b;
  int pole = 0;
  FieldExpr difference;  // image OPE minus substituted source OPE, in the target
};

struct TransformReport {
  std::vector<PairMismatch> mismatches;
  std::vector<std::string> notes;
  bool stress_tensor_checked = false;
  bool stress_tensor_invariant = true;
  bool pass() const { return mismatches.empty() && stress_tensor_invariant; }
};

/// Checks that the images realize the source table inside the target algebra:
/// for every ordered generator pair (A, B) of the source, the OPE of the images
/// equals the image of the source OPE. Generators without an image map to the
/// target generator of the same name.
TransformReport verify_transform(const OpeAlgebra& source, const OpeAlgebra& target,
                                 const std::map<std::string, FieldExpr>& images);

/// Canonical W3 ghosts written in the deformed ones:
///   b_T = b_T, c_T = c_T - (g1+g2)/2 (b_T c_W' c_W),
///   b_W = b_W - (g1-g2)/2 (b_T' b_T c_W), c_W = c_W.
std::map<std::string, FieldExpr> w3_ghost_images(const OpeAlgebra& deformed, const RF& g1, const RF& g2);

/// Verifies the W3 ghost transformation for the given (or symbolic) g1, g2, and
/// that at g1 = 0 the ghost stress tensor keeps its form.
TransformReport verify_ghost_transform_w3(std::optional<BigRational> g1 = std::nullopt,
                                          std::optional<BigRational> g2 = std::nullopt);

/// Deformed W3^(2) ghosts written in the canonical ones:
///   bt_T = b_T - 2 (c_T b_U' b_U), ct_U = c_U - 4 (b_U c_p c_m).
std::map<std::string, FieldExpr> w32_ghost_images(const OpeAlgebra& canonical);

TransformReport verify_ghost_transform_w32();

}  // namespace wbrst::cft
