#pragma once

// Transfer function realization of general (active) linear quantum
// stochastic systems in doubled-up form.

#include <cstdint>

#include "lqss/dusvd.hpp"
#include "lqss/network.hpp"
#include "lqss/synth_passive.hpp"

namespace lqss {

// dǎ = (-iJM - ½N♭N) ǎ dt - N♭S dǓ,  dY̌ = N ǎ dt + S dǓ
struct GeneralModel {
  DoubledUpMatrix m;  // 2n x 2n Hermitian
  DoubledUpMatrix n;  // 2m x 2n
  BogoliubovMatrix s;

  Index modes() const { return m.half_rows(); }
  Index channels() const { return n.half_rows(); }
  void validate(double tol = kStructureTol) const;
  static GeneralModel from_passive(const PassiveModel& p);
};

// Doubled-up transfer function, 2m x 2m.
CMatrix general_tf(const GeneralModel& model, cd s);
StateSpace general_state_space(const GeneralModel& model);

// X = (I + R)(I - R)⁻¹; throws UnitEigenvalueError if R has eigenvalue 1.
CMatrix general_cayley(const CMatrix& r);
// R = (X - I)(X + I)⁻¹
CMatrix general_inverse_cayley(const CMatrix& x);

struct GeneralSynthOptions {
  RVector detunings;           // per reduced mode; complex pairs share the first entry
  RVector interconnect_kappa;  // per reduced mode; empty means all one
  DuSvdOptions svd;
  std::uint64_t seed = 42;     // drives the interconnect perturbation retries
  int max_retries = 3;
};

struct GeneralRealization {
  BogoliubovSvd svd;
  CMatrix m_hat;       // W† M W
  CMatrix m_conc;      // Hamiltonian of the cavity bank
  CMatrix x;           // ♭-skew feedback generator
  CMatrix r;           // Bogoliubov feedback matrix
  CMatrix pre, post;   // V♭ S and V
  CavityBank bank;
  RVector detunings, interconnect_kappa;
  int retries = 0;            // interconnect perturbations needed for X + I
  double bank_residual = 0.0;  // ‖N_bank - N̂‖_F
};

// Cavity realization of the canonical coupling in `svd`.
CavityBank build_cavity_bank(const BogoliubovSvd& svd, const RVector& detunings,
                             const RVector& interconnect_kappa);

GeneralRealization synthesize_general(const GeneralModel& model, const GeneralSynthOptions& opts = {});

// Interconnect coupling Ñ = diag(√κ̃, √κ̃).
CMatrix interconnect_coupling(const RVector& interconnect_kappa);

// Reduced drift obtained from the Cayley generator:
// -iJ M_conc - ½ N̂♭N̂ - ½ Ñ♭ X Ñ
CMatrix cayley_drift(const GeneralRealization& real);
// The same drift by direct elimination of the feedback loop of the bank.
CMatrix eliminated_drift(const GeneralRealization& real);

CMatrix reduced_general_tf(const GeneralRealization& real, cd s);

}  // namespace lqss
