#pragma once

#include <string>
#include <unordered_map>

#include "wbrst/ope/algebra.hpp"

namespace wbrst::ope {

struct RewriteFuelExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TableGap : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Rewrite-rule switches. The defaults are the correct rules; turning one off
/// gives a deliberately broken engine for mutation tests of the mode oracle.
struct RuleSet {
  bool wick_binomial = true;  // binomial weight on the nested Wick contractions
};

/// OPE evaluation session over one algebra. Results are memoized per
/// session, so an engine must not be shared between threads; separate
/// engines over the same algebra are independent.
class OpeEngine {
 public:
  explicit OpeEngine(OpeAlgebra alg, int max_depth = 4000, RuleSet rules = {});

  const OpeAlgebra& algebra() const { return alg_; }

  PoleSeries ope(const FieldExpr& x, const FieldExpr& y);
  FieldExpr pole(const FieldExpr& x, const FieldExpr& y, int n);
  FieldExpr normal_product(const FieldExpr& x, const FieldExpr& y);
  FieldExpr derivative(const FieldExpr& x, int k = 1);
  /// Given the poles of A(z)B(w), the poles of B(z)A(w).
  PoleSeries flip(const PoleSeries& ab, bool a_odd, bool b_odd);

  /// Convenience for generator names.
  FieldExpr f(const std::string& name, int derivs = 0) const { return alg_.field(name, derivs); }

  std::size_t cache_entries() const;

 private:
  OpeAlgebra alg_;
  int max_depth_;
  RuleSet rules_;
  int depth_ = 0;
  std::unordered_map<Monomial, PoleSeries, MonomialHash> ope_cache_;
  std::unordered_map<Monomial, FieldExpr, MonomialHash> insert_cache_;
  std::unordered_map<Monomial, FieldExpr, MonomialHash> np_cache_;
  std::unordered_map<Monomial, FieldExpr, MonomialHash> deriv_cache_;

  struct DepthGuard {
    explicit DepthGuard(OpeEngine& e);
    ~DepthGuard() { --e_.depth_; }
    OpeEngine& e_;
  };

  bool odd(Factor f) const { return alg_.generator(factor_gen(f)).odd; }
  const PoleSeries& ope_gen(Factor a, Factor b);
  const PoleSeries& ope_mono(const Monomial& a, const Monomial& b);
  PoleSeries ope_expr_mono(const FieldExpr& x, const Monomial& b);
  const FieldExpr& insert(Factor a, const Monomial& m);
  FieldExpr insert_expr(Factor a, const FieldExpr& x);
  const FieldExpr& np_mono(const Monomial& a, const Monomial& b);
  const FieldExpr& deriv_mono(const Monomial& m);
};

}  // namespace wbrst::ope
