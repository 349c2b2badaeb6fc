#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wbrst/ope/engine.hpp"

namespace wbrst::ope {

struct TableIssue {
  std::string a, b;
  int pole = 0;
  std::string kind;  // "grading" or "exchange"
  FieldExpr residual;
  std::string message;
};

struct TableReport {
  std::vector<TableIssue> issues;
  bool pass() const { return issues.empty(); }
};

/// Grading of every stored pole plus exchange symmetry of self-pairs.
TableReport validate_table(const OpeAlgebra& a);

struct JacobiEntry {
  int p = 0, q = 0;
  FieldExpr residual;
};

struct JacobiReport {
  std::vector<JacobiEntry> entries;
  bool pass() const;
  /// First nonzero residual, if any.
  const JacobiEntry* first_failure() const;
};

/// Residuals of [A[BC]_q]_p - (-1)^{AB} [B[AC]_p]_q - sum_l binom(p-1,l-1) [[AB]_l C]_{p+q-l}
/// for 1 <= p <= pmax, 1 <= q <= qmax.
JacobiReport jacobi_check(OpeEngine& e, const FieldExpr& a, const FieldExpr& b, const FieldExpr& c, int pmax,
                          int qmax);

/// Jacobi check over every ordered triple of generators, with p and q running up
/// to the deepest pole that can occur. Stops at the first failing triple.
struct TripleFailure {
  std::string a, b, c;
  JacobiEntry entry;
};
std::optional<TripleFailure> jacobi_all_generators(OpeEngine& e);

/// Deepest p (and q) at which a Jacobi residual for fields of total weight
/// h_A + h_B + h_C can be nonzero in this algebra; 0 when none can.
int jacobi_pole_bound(const OpeAlgebra& a, const BigRational& total_weight);

/// Twice the coefficient of one in pole 4 of t(z)t(w). Throws MathError when
/// pole 4 is not a multiple of one.
RF central_charge(OpeEngine& e, const FieldExpr& t);

struct PrimaryResult {
  bool primary = false;
  RF weight;
  std::string reason;
};

/// Whether x is primary with respect to t: no poles above 2, pole 2 = h x and
/// pole 1 = dx.
PrimaryResult primary_check(OpeEngine& e, const FieldExpr& t, const FieldExpr& x);

struct NotAutomorphism : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Rescales each generator by its sign (missing entries are +1). Throws
/// NotAutomorphism when the rescaling does not preserve the OPE table.
FieldExpr apply_automorphism(const OpeAlgebra& a, const std::map<std::string, int>& signs, const FieldExpr& x);
bool is_automorphism(const OpeAlgebra& a, const std::map<std::string, int>& signs);

struct InfiniteSlice : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Every canonical monomial with the given weight, ghost number and parity.
std::vector<Monomial> weight_basis(const OpeAlgebra& a, const BigRational& weight, int ghost, bool odd);

/// Rewrites x, an expression over `source`, in the algebra of `target` by
/// replacing every generator g with images[g] (or with the target generator of
/// the same name when g has no image) and re-forming the normal products.
FieldExpr substitute(OpeEngine& target, const OpeAlgebra& source, const FieldExpr& x,
                     const std::map<std::string, FieldExpr>& images);

/// Some y with dy = x, or nullopt. x must be homogeneous; zero maps to zero.
std::optional<FieldExpr> is_total_derivative(OpeEngine& e, const FieldExpr& x);

/// Canonical representatives of one graded slice modulo total derivatives.
/// reduce(x) vanishes exactly when x is a derivative; x must lie in the slice.
/// Monomials listed in `keep` are moved to the end of the elimination order,
/// so representatives avoid eliminating them where possible.
class DerivativeQuotient {
 public:
  DerivativeQuotient(OpeEngine& e, const Grading& g, const std::vector<Monomial>& keep = {});
  FieldExpr reduce(const FieldExpr& x) const;
  /// Monomials that never occur in a reduced expression.
  const std::set<Monomial>& eliminated() const { return eliminated_; }

 private:
  std::vector<std::pair<Monomial, FieldExpr>> rows_;  // pivot monomial, row with unit pivot
  std::set<Monomial> eliminated_;
};

}  // namespace wbrst::ope
