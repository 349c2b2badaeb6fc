#include "wbrst/ope/algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace wbrst::ope {

int OpeAlgebra::add_generator(const GeneratorDecl& g) {
  if (g.name.empty()) throw std::invalid_argument("empty generator name");
  if (by_name_.count(g.name)) throw std::invalid_argument("duplicate generator " + g.name);
  bool derivative_like = g.name[0] == 'D' && g.name.find_first_not_of("0123456789", 1) == std::string::npos;
  if (g.name.empty() || g.name == "one" || g.name == "N" || derivative_like)
    throw std::invalid_argument("reserved generator name " + g.name);
  gens_.push_back(g);
  int id = static_cast<int>(gens_.size()) - 1;
  by_name_[g.name] = id;
  return id;
}

int OpeAlgebra::index(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw std::out_of_range("unknown field " + name);
  return it->second;
}

std::optional<int> OpeAlgebra::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

FieldExpr OpeAlgebra::field(const std::string& name, int derivs, const RF& coeff) const {
  return FieldExpr::monomial({make_factor(index(name), derivs)}, coeff);
}

void OpeAlgebra::set_ope(const std::string& a, const std::string& b, PoleSeries poles) {
  prune(poles);
  if (poles.empty()) return set_regular(a, b);
  int ia = index(a), ib = index(b);
  if (ia != ib && table_.count({ib, ia})) table_.erase({ib, ia});
  regular_.erase({std::min(ia, ib), std::max(ia, ib)});
  table_[{ia, ib}] = std::move(poles);
}

void OpeAlgebra::set_regular(const std::string& a, const std::string& b) {
  int ia = index(a), ib = index(b);
  table_.erase({ia, ib});
  table_.erase({ib, ia});
  regular_.insert({std::min(ia, ib), std::max(ia, ib)});
}

const PoleSeries* OpeAlgebra::stored(int a, int b) const {
  auto it = table_.find({a, b});
  return it == table_.end() ? nullptr : &it->second;
}

bool OpeAlgebra::declared_regular(int a, int b) const {
  return regular_by_default || regular_.count({std::min(a, b), std::max(a, b)}) != 0;
}

Grading OpeAlgebra::grading(const Monomial& m) const {
  Grading g;
  for (Factor f : m) {
    const auto& d = gens_[static_cast<std::size_t>(factor_gen(f))];
    g.weight += d.weight + factor_deriv(f);
    g.odd ^= d.odd;
    g.ghost += d.ghost;
  }
  return g;
}

bool OpeAlgebra::odd(const Monomial& m) const {
  bool o = false;
  for (Factor f : m) o ^= gens_[static_cast<std::size_t>(factor_gen(f))].odd;
  return o;
}

std::optional<Grading> OpeAlgebra::grading(const FieldExpr& e) const {
  std::optional<Grading> g;
  for (const auto& [m, c] : e.terms()) {
    Grading h = grading(m);
    if (!g)
      g = h;
    else if (!(*g == h))
      return std::nullopt;
  }
  return g;
}

OpeAlgebra OpeAlgebra::map_coeffs(const std::function<RF(const RF&)>& f) const {
  OpeAlgebra r = *this;
  for (auto it = r.table_.begin(); it != r.table_.end();) {
    for (auto& [n, e] : it->second) e = e.map_coeffs(f);
    prune(it->second);
    if (it->second.empty()) {
      r.regular_.insert({std::min(it->first.first, it->first.second), std::max(it->first.first, it->first.second)});
      it = r.table_.erase(it);
    } else {
      ++it;
    }
  }
  for (auto& [name, v] : r.defs) v = f(v);
  return r;
}

OpeAlgebra OpeAlgebra::bind(const std::map<std::string, BigRational>& values) const {
  auto ids = to_param_bindings(values);
  OpeAlgebra r = map_coeffs([&](const RF& x) { return x.eval(ids); });
  std::erase_if(r.params, [&](const std::string& p) { return values.count(p) != 0; });
  return r;
}

std::string OpeAlgebra::monomial_str(const Monomial& m) const {
  if (m.empty()) return "one";
  auto fac = [&](Factor f) {
    const std::string& n = gens_[static_cast<std::size_t>(factor_gen(f))].name;
    int k = factor_deriv(f);
    if (k == 0) return n;
    return (k == 1 ? std::string("D") : "D" + std::to_string(k)) + "(" + n + ")";
  };
  std::string s = fac(m.back());
  for (std::size_t i = m.size() - 1; i-- > 0;) s = "N(" + fac(m[i]) + "," + s + ")";
  return s;
}

std::string OpeAlgebra::expr_str(const FieldExpr& e) const {
  if (e.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : e.terms()) {
    std::string mono = monomial_str(m);
    std::string term;
    bool negative = false;
    if (c.is_constant()) {
      BigRational v = c.constant_value();
      negative = v < 0;
      if (negative) v = -v;
      term = v == 1 ? mono : v.get_str() + "*" + mono;
    } else {
      term = "(" + c.str() + ")*" + mono;
    }
    if (out.empty())
      out = (negative ? "-" : "") + term;
    else
      out += (negative ? " - " : " + ") + term;
  }
  return out;
}

}  // namespace wbrst::ope
