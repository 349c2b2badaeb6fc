#include "wbrst/ope/field.hpp"

namespace wbrst::ope {

FieldExpr FieldExpr::unit(const RF& coeff) { return monomial({}, coeff); }

FieldExpr FieldExpr::monomial(Monomial m, const RF& coeff) {
  FieldExpr e;
  if (!coeff.is_zero()) e.terms_.emplace(std::move(m), coeff);
  return e;
}

RF FieldExpr::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? RF() : it->second;
}

void FieldExpr::add(const Monomial& m, const RF& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void FieldExpr::add_scaled(const FieldExpr& o, const RF& c) {
  if (c.is_zero()) return;
  bool one = c.is_one();
  for (const auto& [m, v] : o.terms_) add(m, one ? v : v * c);
}

FieldExpr FieldExpr::operator-() const {
  FieldExpr r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

FieldExpr& FieldExpr::operator+=(const FieldExpr& o) {
  for (const auto& [m, v] : o.terms_) add(m, v);
  return *this;
}

FieldExpr& FieldExpr::operator-=(const FieldExpr& o) {
  for (const auto& [m, v] : o.terms_) add(m, -v);
  return *this;
}

FieldExpr& FieldExpr::operator*=(const RF& s) {
  if (s.is_zero()) {
    terms_.clear();
  } else if (!s.is_one()) {
    for (auto& [m, v] : terms_) v *= s;
  }
  return *this;
}

FieldExpr FieldExpr::map_coeffs(const std::function<RF(const RF&)>& f) const {
  FieldExpr r;
  for (const auto& [m, v] : terms_) r.add(m, f(v));
  return r;
}

void prune(PoleSeries& p) { std::erase_if(p, [](const auto& kv) { return kv.second.is_zero(); }); }

bool poles_equal(PoleSeries a, PoleSeries b) {
  prune(a);
  prune(b);
  return a == b;
}

}  // namespace wbrst::ope
