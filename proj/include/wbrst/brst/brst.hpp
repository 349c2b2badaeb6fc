#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wbrst/cft/algebras.hpp"
#include "wbrst/ope/analysis.hpp"

namespace wbrst::brst {

using cft::A2Mode;
using ope::FieldExpr;
using ope::Monomial;
using ope::OpeAlgebra;
using ope::PoleSeries;

/// A candidate BRST current together with the matter+ghost algebra it lives in.
struct BrstCurrent {
  OpeAlgebra algebra;
  FieldExpr expr;
};

/// Parameter point for the W3 currents. Unset values stay symbolic.
struct W3Point {
  std::optional<BigRational> c;
  std::optional<BigRational> g1;
  std::optional<BigRational> g2;
  A2Mode mode = A2Mode::ExchangeConsistent;
};

/// Nine-term W3 current on the two-parameter ghosts; at g1 = g2 = 0 the
/// g-dependent corrections and the five-ghost term drop out.
BrstCurrent brst_w3(const W3Point& p = {});

/// Conventional W3^(2) current on the deformed ghosts.
BrstCurrent brst_w32(std::optional<BigRational> c = std::nullopt);

struct NilpotencyReport {
  PoleSeries qq;          // full OPE Q(z) Q(w)
  FieldExpr obstruction;  // pole 1 reduced modulo total derivatives
  bool nilpotent = false;
};

/// Throws std::invalid_argument unless q is odd with weight 1 and ghost number 1.
void check_current_grading(const BrstCurrent& q);

NilpotencyReport nilpotency(const BrstCurrent& q);

struct CriticalCharge {
  std::vector<BigRational> roots;  // common roots of the obstruction, poles excluded
  bool always_nilpotent = false;   // obstruction vanishes identically
};

/// Values of `param` at which the obstruction vanishes. Every obstruction
/// coefficient must depend on `param` alone once other parameters are fixed.
CriticalCharge critical_charge(const BrstCurrent& q, const std::string& param = "c");

/// Number of generator factors in a monomial.
int generator_degree(const Monomial& m);

/// Terms of degree four or more.
std::vector<std::pair<Monomial, RF>> unconventional_terms(const BrstCurrent& q);

/// The (g1, g2) at which brst_w3 has no unconventional terms. Throws MathError
/// if the conditions are not affine in g1, g2 or have no unique solution.
std::pair<BigRational, BigRational> solve_conventional();

struct DeriveOptions {
  /// Sign automorphism the current must be invariant under (may be empty).
  std::map<std::string, int> symmetry;
  /// Additive charges the current must be neutral under (may be empty).
  std::map<std::string, int> charges;
  /// Largest generator degree allowed in the ansatz; 0 means no limit.
  int max_degree = 0;
  /// Monomials to keep as representatives when removing total derivatives.
  std::vector<Monomial> prefer;
};

struct DeriveResult {
  bool success = false;
  BrstCurrent current;           // determined part of the current
  std::vector<Monomial> ansatz;  // monomials with a free coefficient
  std::vector<Monomial> undetermined;
  std::vector<RF> conditions;  // parameter conditions left by inconsistent equations
  std::vector<std::string> remaining;  // equations left when elimination stalls
  std::size_t equations = 0;
};

/// Solves for a nilpotent current with the given leading terms over the
/// weight-1, ghost-1 odd slice, modulo total derivatives, by staged linear
/// elimination of the quadratic system.
DeriveResult derive_brst(const OpeAlgebra& combined, const std::vector<std::pair<Monomial, RF>>& leading,
                         const DeriveOptions& opts = {});

}  // namespace wbrst::brst
