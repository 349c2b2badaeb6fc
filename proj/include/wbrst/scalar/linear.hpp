#pragma once

#include <optional>
#include <vector>

#include "wbrst/scalar/rational_function.hpp"

namespace wbrst {

using RFMatrix = std::vector<std::vector<RF>>;

struct Rref {
  RFMatrix rows;            // reduced rows, zero rows dropped
  std::vector<int> pivots;  // pivot column of each row
};

/// Reduced row echelon form over the field of rational functions.
Rref rref(RFMatrix m, std::size_t columns);

/// Some solution of a x = b (free variables set to zero), or nullopt.
std::optional<std::vector<RF>> solve_linear(const RFMatrix& a, const std::vector<RF>& b);

/// Inverse of a square matrix; throws MathError when singular.
RFMatrix invert(const RFMatrix& a);

}  // namespace wbrst
