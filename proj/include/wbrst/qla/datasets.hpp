#pragma once

#include <string>
#include <vector>

#include "wbrst/qla/axioms.hpp"

namespace wbrst::qla {

struct QlaFile {
  std::string name;
  QlaData data;
  Tensor phi;
  std::string phi_mode;  // superperm, sigma or explicit
};

/// so(3): permutation sigma, c^k_{ij} = epsilon_{ijk}, permutation phi.
QlaFile so3();
/// E even, F odd with EF - FE = F and F^2 = 0; super-permutation sigma and the
/// Lie superalgebra twist phi.
QlaFile super_ef();
/// Involutive non-permutation braid matrix on C^2 built from the index swap,
/// with c = 0 and phi = sigma.
QlaFile lyubashenko();
std::vector<QlaFile> bundled_qla();

/// Text format, one statement per line, '#' starts a comment, indices 1-based:
///   name so3
///   dim 3
///   parities 0 0 0          (or even/odd words; default all even)
///   sigma = superperm       (or sparse entries "sigma k l i j = coeff" for sigma^{kl}_{ij})
///   c i j k = coeff         (c^k_{ij})
///   phi = superperm | liesuper | sigma | explicit   (explicit: "phi k l i j = coeff")
/// Throws std::runtime_error with a line number on malformed input.
QlaFile parse_qla(const std::string& text);
QlaFile load_qla(const std::string& path);
std::string write_qla(const QlaFile& f);

}  // namespace wbrst::qla
