#pragma once

// Transfer function realization of passive linear quantum stochastic
// systems: pre-processing multi-beam splitter, reduced system of cavities
// closed through a feedback multi-beam splitter, post-processing multi-beam
// splitter.

#include "lqss/network.hpp"

namespace lqss {

// da = (-iM - ½N†N) a dt - N†S dU,  dY = N a dt + S dU
struct PassiveModel {
  CMatrix m;  // n x n Hermitian
  CMatrix n;  // m x n coupling
  CMatrix s;  // m x m unitary

  Index modes() const { return m.rows(); }
  Index channels() const { return n.rows(); }
  // Throws ErrorKind::validation on shape, Hermiticity or unitarity violations.
  void validate(double tol = kStructureTol) const;
};

CMatrix passive_tf(const PassiveModel& model, cd s);
StateSpace passive_state_space(const PassiveModel& model);

// N = V N̂ W† with N̂ = diag(√κ_1, ..., √κ_r, 0, ...).
struct PassiveSvd {
  CMatrix v, w, n_hat;
  Index rank = 0;
  double residual = 0.0;  // ‖N - V N̂ W†‖_F / ‖N‖_F
};
// Singular values below rank_tol * σ_max are treated as zero.  Each right
// singular vector has its largest entry made real positive.
PassiveSvd passive_svd(const CMatrix& n, double rank_tol = 1e-10);

// X = (I - R)⁻¹ (I + R); throws UnitEigenvalueError if R has eigenvalue 1.
CMatrix cayley(const CMatrix& r);
// R = (X - I)(X + I)⁻¹; throws ErrorKind::numerical if X has eigenvalue -1.
CMatrix inverse_cayley(const CMatrix& x);

struct PassiveSynthOptions {
  RVector detunings;           // per cavity; empty means all zero
  RVector interconnect_kappa;  // per cavity; empty means all one
  double rank_tol = 1e-10;
};

struct PassiveRealization {
  PassiveSvd svd;
  CMatrix m_hat;      // W† M W
  CMatrix x;          // skew-Hermitian feedback generator
  CMatrix r;          // n x n unitary feedback
  CMatrix pre, post;  // V† S and V
  CavityBank bank;
  RVector detunings, interconnect_kappa;
};

PassiveRealization synthesize_passive(const PassiveModel& model, const PassiveSynthOptions& opts = {});

// Reduced system Ĝ(s) with Hamiltonian M̂ and coupling N̂ (scattering I).
CMatrix reduced_passive_tf(const PassiveRealization& real, cd s);

}  // namespace lqss
