#pragma once

// Test-side reference computations.  These are written from the defining
// formulas without going through the library's factorization code, so that
// agreement with the library is evidence rather than tautology.

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "lqss/krein.hpp"

namespace oracle {

using lqss::cd;
using lqss::CMatrix;
using lqss::Index;

inline CMatrix jmat(Index k) {
  CMatrix j = CMatrix::Zero(2 * k, 2 * k);
  for (Index i = 0; i < k; ++i) {
    j(i, i) = 1.0;
    j(k + i, k + i) = -1.0;
  }
  return j;
}

inline CMatrix smat(Index k) {
  CMatrix s = CMatrix::Zero(2 * k, 2 * k);
  for (Index i = 0; i < k; ++i) {
    s(i, k + i) = 1.0;
    s(k + i, i) = 1.0;
  }
  return s;
}

inline CMatrix flat(const CMatrix& x) { return jmat(x.cols() / 2) * x.adjoint() * jmat(x.rows() / 2); }

inline CMatrix doubled(const CMatrix& a, const CMatrix& b) {
  CMatrix x(2 * a.rows(), 2 * a.cols());
  x << a, b, b.conjugate(), a.conjugate();
  return x;
}

// Explicit resolvent of the state-space model built from (M, N, S):
// C (sI - A)⁻¹ B + D with A = -iM - ½N†N, B = -N†S, C = N, D = S.
inline CMatrix passive_tf(const CMatrix& m, const CMatrix& n, const CMatrix& s, cd freq) {
  const cd i(0, 1);
  const CMatrix a = -i * m - 0.5 * n.adjoint() * n;
  const CMatrix res = freq * CMatrix::Identity(a.rows(), a.cols()) - a;
  const CMatrix inv = res.fullPivLu().inverse();
  return n * inv * (-n.adjoint() * s) + s;
}

// Same for doubled-up models: A = -iJM - ½N♭N, B = -N♭S.
inline CMatrix general_tf(const CMatrix& m, const CMatrix& n, const CMatrix& s, cd freq) {
  const cd i(0, 1);
  const Index k = m.rows() / 2;
  const CMatrix a = -i * jmat(k) * m - 0.5 * flat(n) * n;
  const CMatrix res = freq * CMatrix::Identity(a.rows(), a.cols()) - a;
  const CMatrix inv = res.fullPivLu().inverse();
  return n * inv * (-flat(n) * s) + s;
}

// Distance between two matrices up to independent phases of their columns:
// Σ_j min_φ ‖a_j - e^{iφ} b_j‖².
inline double column_phase_distance(const CMatrix& a, const CMatrix& b) {
  double total = 0.0;
  for (Index j = 0; j < a.cols(); ++j) {
    const cd ip = b.col(j).dot(a.col(j));
    const cd ph = std::abs(ip) > 0 ? ip / std::abs(ip) : cd(1, 0);
    total += (a.col(j) - ph * b.col(j)).squaredNorm();
  }
  return std::sqrt(total);
}

inline CMatrix gaussian(Index r, Index c, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix a(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) a(i, j) = scale * cd(g(rng), g(rng));
  return a;
}

inline CMatrix hermitian(Index k, std::mt19937_64& rng, double scale = 1.0) {
  const CMatrix a = gaussian(k, k, rng, scale);
  return 0.5 * (a + a.adjoint());
}

inline CMatrix unitary(Index k, std::mt19937_64& rng) {
  Eigen::HouseholderQR<CMatrix> qr(gaussian(k, k, rng));
  return qr.householderQ();
}

inline double max_abs(const CMatrix& x) { return x.cwiseAbs().maxCoeff(); }

}  // namespace oracle
