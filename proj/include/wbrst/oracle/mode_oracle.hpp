#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wbrst/ope/engine.hpp"

namespace wbrst::oracle {

using ope::FieldExpr;
using ope::Monomial;
using ope::OpeAlgebra;

/// Fermionic pair with {b_m, c_n} = delta_{m+n,0}; b has weight lambda and c
/// weight 1 - lambda. lambda may be a half-integer.
struct BcSystem {
  std::string b, c;
  BigRational lambda;
};

struct NotFreeSector : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fock state as the set of creation operators acting on the SL(2)-invariant
/// vacuum, one bit per operator; operators apply in increasing bit order from
/// the right, so the lowest bit acts first.
struct FockState {
  unsigned __int128 bits = 0;
  int size() const;
  friend auto operator<=>(const FockState&, const FockState&) = default;
};
using FockVector = std::map<FockState, BigRational>;

/// Fock space of several bc systems. Creation operators are b_m with
/// m <= -lambda and c_n with n <= lambda - 1; every other mode removes its
/// dual creation operator. Levels are L0 eigenvalues and can be negative.
class FockSpace {
 public:
  explicit FockSpace(std::vector<BcSystem> systems);

  const std::vector<BcSystem>& systems() const { return systems_; }
  BigRational min_level() const;
  BigRational level(const FockState& s) const;
  /// Ghost number (#c - #b) of a state.
  int ghost(const FockState& s) const;
  /// All states of level at most L, ordered by level and then lexicographically.
  std::vector<FockState> slice(const BigRational& L) const;
  std::string state_str(const FockState& s) const;

  /// Applies the m-th mode of b (is_b) or c of one system.
  FockVector apply(std::size_t system, bool is_b, const BigRational& m, const FockState& s) const;

  // Half-unit helpers shared with the oracle.
  long level2(const FockState& s) const;
  long level2_of(int id) const;
  long min_level2() const { return min_level2_; }
  /// Lowest level among states of the given ghost number.
  long min_level2(int ghost) const;

 private:
  std::vector<BcSystem> systems_;
  std::vector<long> lambda2_;
  long min_level2_ = 0;
  static constexpr int kGhostRange = 32;
  std::vector<long> min_by_ghost_;
  long compute_min_level2(int ghost) const;
  int id_of(std::size_t system, bool is_b, long k) const;
};

/// Matrix of one mode between level slices, keyed by (target, source).
struct ModeMatrix {
  BigRational mode;
  std::map<std::pair<FockState, FockState>, BigRational> entries;
  friend bool operator==(const ModeMatrix&, const ModeMatrix&) = default;
};

/// Mode algebra realization of an OPE algebra whose only singular OPEs are
/// b(z)c(w) ~ 1/(z-w). Field coefficients must be rational constants.
class ModeOracle {
 public:
  explicit ModeOracle(const OpeAlgebra& free_sector);
  /// Oracle on the Fock space of the listed bc systems only; fields must not
  /// involve the other generators.
  ModeOracle(const OpeAlgebra& free_sector, const std::vector<std::string>& b_fields);

  const FockSpace& fock() const { return fock_; }
  const OpeAlgebra& algebra() const { return alg_; }

  /// m-th Laurent mode of x applied to a basis state, x(z) = sum x_m z^{-m-h}.
  FockVector apply(const FieldExpr& x, const BigRational& m, const FockState& s);
  FockVector apply(const FieldExpr& x, const BigRational& m, const FockVector& v);

  /// Matrix of x_m with sources in the slice of level <= L.
  ModeMatrix field_modes(const FieldExpr& x, const BigRational& m, const BigRational& L);

  /// Modes ([AB]_n)_N on the slice for every n >= 1, obtained from the
  /// graded commutators [A_p, B_q] at p + q = N by solving
  /// [A_p, B_q] = sum_j C(p + h_A - 1, j) ([AB]_{j+1})_{p+q}.
  std::map<int, ModeMatrix> ope_from_modes(const FieldExpr& a, const FieldExpr& b, const BigRational& N,
                                           const BigRational& L);

  /// ([AB]_n)_N applied to one state, for every n up to max_pole.
  std::map<int, FockVector> poles_on(const FieldExpr& a, const FieldExpr& b, const BigRational& N,
                                     const FockState& s);

  /// Largest pole [AB]_n that can be nonzero: no state of the ghost number
  /// of AB lies below the minimum level for that ghost number.
  int max_pole(const FieldExpr& a, const FieldExpr& b) const;

  // Interned fields, for repeated application over a whole slice. Results are
  // memoized per (field, mode, state); mode2 is twice the mode index.
  using ExprId = int;
  ExprId intern(const FieldExpr& x);
  const FockVector& apply(ExprId x, long mode2, const FockState& s);
  const ope::Grading& grading(ExprId x) const { return exprs_[static_cast<std::size_t>(x)].grading; }
  std::map<int, FockVector> poles_on(ExprId a, ExprId b, int top, long n2, const FockState& s);

 private:
  OpeAlgebra alg_;
  FockSpace fock_;
  std::vector<std::pair<std::size_t, bool>> gen_mode_;  // generator -> (system, is_b)
  struct Key {
    int mono;
    long mode2;
    unsigned __int128 bits;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };
  std::map<Monomial, int> mono_ids_;
  std::vector<Monomial> monos_;
  std::unordered_map<Key, FockVector, KeyHash> memo_;
  struct Interned {
    std::vector<std::pair<int, BigRational>> terms;
    ope::Grading grading;
  };
  std::map<std::vector<std::pair<int, BigRational>>, ExprId> expr_ids_;
  std::vector<Interned> exprs_;
  std::unordered_map<Key, FockVector, KeyHash> expr_memo_;

  int intern(const Monomial& m);
  const FockVector& apply_mono(int id, long mode2, const FockState& s);
  ope::Grading grading_of(const FieldExpr& x) const;
};

/// Finds the bc pairs of a free ghost algebra. Throws NotFreeSector if any
/// other singular OPE is present.
std::vector<BcSystem> free_systems(const OpeAlgebra& a);

struct Mismatch {
  std::size_t pair = 0;
  int pole = 0;
  BigRational mode;
  std::string source, target;
  BigRational engine, oracle;
};

struct CrosscheckReport {
  bool pass = true;
  std::size_t pairs = 0;
  std::size_t matrix_elements = 0;  // nonzero entries compared
  std::optional<Mismatch> first_mismatch;
};

/// Compares the engine's poles of each pair with the oracle on the slice of
/// level <= L, for every pole and every mode that maps the slice into itself.
CrosscheckReport crosscheck(const OpeAlgebra& a, const std::vector<std::pair<FieldExpr, FieldExpr>>& pairs,
                            const BigRational& L, ope::RuleSet rules = {});

/// Default pair list for crosscheck: every ordered pair of generators, each
/// first derivative against each generator, and every pair of the
/// bilinears (b c) and the per-system stress tensors.
std::vector<std::pair<FieldExpr, FieldExpr>> standard_pairs(const OpeAlgebra& a);

/// Central charge of one bc system measured on the modes of its stress tensor.
BigRational oracle_central_charge(const BigRational& lambda, const BigRational& L = 2);

}  // namespace wbrst::oracle
