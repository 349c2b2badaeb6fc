#pragma once

#include <map>
#include <string>

#include "wbrst/scalar/rational_function.hpp"

namespace wbrst {

/// Parses a coefficient written with integers, parameter names, + - * / ^ and
/// parentheses. Names found in `defs` are replaced by their value; any other
/// name becomes a symbolic parameter. Throws MathError on malformed text.
RF parse_coefficient(const std::string& text, const std::map<std::string, RF>& defs = {});

}  // namespace wbrst
