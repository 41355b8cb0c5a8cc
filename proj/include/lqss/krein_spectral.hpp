#pragma once

// Spectral structure of 𝒩 = N♭N for a doubled-up coupling matrix N.

#include <string>
#include <vector>

#include "lqss/krein.hpp"

namespace lqss {

enum class EigenClassKind {
  real_positive,    // λ > 0
  real_negative,    // λ < 0
  complex_pair,     // λ, conj(λ) with Im λ > 0
  jordan2,          // real λ carrying a 2x2 Jordan block and its conjugate partner
  zero_degenerate,  // λ = 0 eigenvector outside Ker N
  zero_kernel,      // λ = 0 eigenvector inside Ker N
};

const char* to_string(EigenClassKind kind);

// One canonical block of the decomposition.  `columns` are the columns it
// contributes to the first half of W; the second half is their
// krein_conjugate.  Real and zero classes have one column, complex pairs and
// Jordan blocks two.
struct EigenClass {
  EigenClassKind kind;
  cd value;
  CMatrix columns;
  bool eigenvector_in_kernel = false;  // only meaningful for jordan2 at λ = 0
};

struct SpectralOptions {
  double class_tol = 1e-8;    // |Im λ| below this (relative) counts as real
  double rank_tol = 1e-8;     // relative singular value threshold for null spaces
  double cluster_tol = 1e-4;  // relative radius; a perturbed Jordan chain of length k splits by ~ε^(1/k)
};

struct KreinSpectrum {
  std::vector<EigenClass> classes;

  Index count(EigenClassKind kind) const;
  // First half of W: concatenation of the class columns in order.
  CMatrix first_half() const;
  // W = [Z, krein_conjugate(Z)], a Bogoliubov matrix.
  CMatrix w() const;
};

// 𝒩 = N♭N
DoubledUpMatrix caln(const DoubledUpMatrix& n);

// Groups eigenvalues of 𝒩 into classes with J-orthonormal eigenvectors in the
// canonical order: positive, negative, complex, Jordan, degenerate zero,
// kernel zero.  Throws ErrorKind::unsupported for Jordan blocks larger than 2
// (or more than one Jordan pair per eigenvalue, or defective complex
// eigenvalues).
KreinSpectrum krein_spectral_decomposition(const DoubledUpMatrix& n,
                                           const SpectralOptions& opts = {});

enum class Nondegeneracy { nondegenerate, degenerate_special, degenerate_unsupported };

struct NondegeneracyReport {
  Nondegeneracy status;
  double pp_flat_residual = 0.0;  // ‖P P♭‖_F, zero unless degenerate
  Index degenerate_dimension = 0;
};

// P = N [Z, C Z] over the degenerate zero directions.
CMatrix degenerate_block(const DoubledUpMatrix& n, const KreinSpectrum& spectrum);

NondegeneracyReport check_nondegenerate(const DoubledUpMatrix& n, const SpectralOptions& opts = {});

}  // namespace lqss
