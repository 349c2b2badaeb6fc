#pragma once

#include <string>

#include "wbrst/ope/algebra.hpp"

namespace wbrst::ope {

struct AlgebraParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reads the line-oriented algebra format:
///
///   algebra W3
///   param c
///   def a = 32/(22+5*c)
///   field T weight=2 parity=even ghost=0
///   ope T T : 4 -> c/2*one ; 2 -> 2*T ; 1 -> D(T)
///   ope T X : regular
///   regular_by_default
///
/// `#` starts a comment. OPE entries are evaluated in file order, so a
/// composite on the right of `->` may only involve pairs given earlier.
OpeAlgebra parse_algebra(const std::string& text);
OpeAlgebra load_algebra(const std::string& path);

/// Canonical text form; parse_algebra(print_algebra(a)) reproduces a.
std::string print_algebra(const OpeAlgebra& a);

/// Parses a field expression against the generators, parameters and
/// definitions of `a`. A purely scalar result is returned as a multiple of one.
FieldExpr parse_field_expr(const OpeAlgebra& a, const std::string& text);

/// Structural equality of two algebras (generators, params, table, regular pairs).
bool same_algebra(const OpeAlgebra& a, const OpeAlgebra& b);

}  // namespace wbrst::ope
