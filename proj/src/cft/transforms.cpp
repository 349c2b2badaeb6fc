#include "wbrst/cft/transforms.hpp"

#include "wbrst/ope/analysis.hpp"

namespace wbrst::cft {

using ope::OpeEngine;
using ope::PoleSeries;

TransformReport verify_transform(const OpeAlgebra& source, const OpeAlgebra& target,
                                 const std::map<std::string, FieldExpr>& images) {
  TransformReport r;
  OpeEngine src(source), tgt(target);
  auto image_of = [&](const std::string& name) {
    auto it = images.find(name);
    return it != images.end() ? it->second : tgt.f(name);
  };
  int n = static_cast<int>(source.generators().size());
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const std::string& a = source.generator(i).name;
      const std::string& b = source.generator(j).name;
      PoleSeries want = src.ope(src.f(a), src.f(b));
      PoleSeries got = tgt.ope(image_of(a), image_of(b));
      int top = 0;
      if (!want.empty()) top = want.rbegin()->first;
      if (!got.empty()) top = std::max(top, got.rbegin()->first);
      for (int p = 1; p <= top; ++p) {
        FieldExpr w = want.count(p) ? ope::substitute(tgt, source, want[p], images) : FieldExpr();
        FieldExpr g = got.count(p) ? got[p] : FieldExpr();
        FieldExpr d = g - w;
        if (!d.is_zero()) r.mismatches.push_back({a, b, p, d});
      }
    }
  }
  return r;
}

std::map<std::string, FieldExpr> w3_ghost_images(const OpeAlgebra& deformed, const RF& g1, const RF& g2) {
  OpeEngine e(deformed);
  FieldExpr bcc = e.normal_product(e.f("b_T"), e.normal_product(e.f("c_W", 1), e.f("c_W")));
  FieldExpr bbc = e.normal_product(e.f("b_T", 1), e.normal_product(e.f("b_T"), e.f("c_W")));
  return {{"b_T", e.f("b_T")},
          {"c_T", e.f("c_T") - bcc * ((g1 + g2) / RF(2))},
          {"b_W", e.f("b_W") - bbc * ((g1 - g2) / RF(2))},
          {"c_W", e.f("c_W")}};
}

TransformReport verify_ghost_transform_w3(std::optional<BigRational> g1, std::optional<BigRational> g2) {
  RF v1 = g1 ? RF(*g1) : RF::param("g1");
  RF v2 = g2 ? RF(*g2) : RF::param("g2");
  OpeAlgebra canonical = w3_ghosts(BigRational(0), BigRational(0));
  OpeAlgebra deformed = w3_ghosts(g1, g2);
  TransformReport r = verify_transform(canonical, deformed, w3_ghost_images(deformed, v1, v2));

  // Ghost stress tensor at g1 = 0, g2 as given.
  OpeAlgebra d0 = w3_ghosts(BigRational(0), g2);
  OpeEngine e0(d0);
  auto images0 = w3_ghost_images(d0, RF(0), v2);
  FieldExpr from_canonical = ope::substitute(e0, canonical, ghost_stress_w3(canonical), images0);
  FieldExpr direct = ghost_stress_w3(d0);
  r.stress_tensor_checked = true;
  r.stress_tensor_invariant = from_canonical == direct;
  if (!r.stress_tensor_invariant)
    r.notes.push_back("ghost stress tensor changes at g1 = 0: difference " + d0.expr_str(from_canonical - direct));
  return r;
}

std::map<std::string, FieldExpr> w32_ghost_images(const OpeAlgebra& canonical) {
  OpeEngine e(canonical);
  FieldExpr cbb = e.normal_product(e.f("c_T"), e.normal_product(e.f("b_U", 1), e.f("b_U")));
  FieldExpr bcc = e.normal_product(e.f("b_U"), e.normal_product(e.f("c_p"), e.f("c_m")));
  return {{"bt_T", e.f("b_T") - cbb * RF(2)}, {"ct_U", e.f("c_U") - bcc * RF(4)}};
}

TransformReport verify_ghost_transform_w32() {
  OpeAlgebra canonical = w32_canonical_ghosts();
  return verify_transform(w32_ghosts(), canonical, w32_ghost_images(canonical));
}

}  // namespace wbrst::cft
