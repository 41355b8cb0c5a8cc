#pragma once

// Singular value decomposition of doubled-up matrices with respect to the
// indefinite J-form: N = V N̂ W♭ with V, W Bogoliubov and N̂ canonical.

#include <vector>

#include "lqss/krein_spectral.hpp"

namespace lqss {

// Where a spectral class lands in the canonical coupling matrix.  Column
// indices refer to the first half of W, row indices to the first half of V.
struct ClassPlacement {
  Index w_begin = 0, w_count = 0;
  Index v_begin = 0, v_count = 0;
};

struct BogoliubovSvd {
  KreinSpectrum spectrum;
  std::vector<ClassPlacement> placement;  // parallel to spectrum.classes
  BogoliubovMatrix v;                     // 2m x 2m
  BogoliubovMatrix w;                     // 2n x 2n
  DoubledUpMatrix n_hat;                  // 2m x 2n canonical form
  double residual = 0.0;                  // ‖N - V N̂ W♭‖_F / ‖N‖_F
};

struct DuSvdOptions {
  SpectralOptions spectral;
  double max_condition = 1e12;  // refuse to invert worse-conditioned canonical blocks
  double structure_tol = 1e-8;
};

// Canonical doubled-up block N̄ for a class, of half size v_count x w_count.
// Degenerate zero classes are not handled here (their block is H, H).
DoubledUpMatrix canonical_block(const EigenClass& cls);

// 1-mode coupling √|λ| [[sinh x, cosh x], [cosh x, sinh x]] with N̂♭N̂ = λ < 0.
DoubledUpMatrix active_port_damped_form(double lambda, double x);

BogoliubovSvd bogoliubov_svd(const DoubledUpMatrix& n, const DuSvdOptions& opts = {});

// Factorizations for a precomputed spectrum.  jordan2_factor requires at
// least one Jordan class; degenerate_factor requires degenerate zero classes
// and throws ErrorKind::unsupported when P P♭ != 0.
BogoliubovSvd jordan2_factor(const DoubledUpMatrix& n, const KreinSpectrum& spectrum,
                             const DuSvdOptions& opts = {});
BogoliubovSvd degenerate_factor(const DoubledUpMatrix& n, const KreinSpectrum& spectrum,
                                const DuSvdOptions& opts = {});

// Real quadrature counterpart: X = V X̂ W♯ with symplectic V, W.
struct SymplecticSvd {
  RMatrix v, w, x_hat;
  double residual = 0.0;
};
SymplecticSvd symplectic_svd(const RMatrix& x, const DuSvdOptions& opts = {});

}  // namespace lqss
