#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wbrst/ope/field.hpp"

namespace wbrst::ope {

struct GeneratorDecl {
  std::string name;
  BigRational weight;
  bool odd = false;
  int ghost = 0;
};

struct Grading {
  BigRational weight;
  bool odd = false;
  int ghost = 0;
  friend bool operator==(const Grading&, const Grading&) = default;
};

/// Generators plus the singular OPEs between them. One orientation per
/// unordered pair is stored; the other follows from flip. Pairs absent from
/// the table are an error unless declared regular or regular_by_default is set.
class OpeAlgebra {
 public:
  std::string name;
  std::vector<std::string> params;
  std::vector<std::pair<std::string, RF>> defs;
  bool regular_by_default = false;

  int add_generator(const GeneratorDecl& g);
  const std::vector<GeneratorDecl>& generators() const { return gens_; }
  const GeneratorDecl& generator(int i) const { return gens_.at(static_cast<std::size_t>(i)); }
  int index(const std::string& name) const;  // throws std::out_of_range
  std::optional<int> find(const std::string& name) const;

  FieldExpr field(const std::string& name, int derivs = 0, const RF& coeff = RF(1)) const;

  void set_ope(const std::string& a, const std::string& b, PoleSeries poles);
  void set_regular(const std::string& a, const std::string& b);
  const std::map<std::pair<int, int>, PoleSeries>& table() const { return table_; }
  /// Table entry for (a,b) as stored, if that orientation is stored.
  const PoleSeries* stored(int a, int b) const;
  bool declared_regular(int a, int b) const;
  const std::set<std::pair<int, int>>& regular_pairs() const { return regular_; }

  Grading grading(const Monomial& m) const;
  /// Common grading of all terms; nullopt for zero or inhomogeneous input.
  std::optional<Grading> grading(const FieldExpr& e) const;
  bool odd(const Monomial& m) const;

  /// Substitutes parameter values into every coefficient of the table.
  OpeAlgebra bind(const std::map<std::string, BigRational>& values) const;
  /// Applies f to every table coefficient.
  OpeAlgebra map_coeffs(const std::function<RF(const RF&)>& f) const;

  std::string monomial_str(const Monomial& m) const;
  std::string expr_str(const FieldExpr& e) const;

 private:
  std::vector<GeneratorDecl> gens_;
  std::map<std::string, int> by_name_;
  std::map<std::pair<int, int>, PoleSeries> table_;
  std::set<std::pair<int, int>> regular_;
};

}  // namespace wbrst::ope
