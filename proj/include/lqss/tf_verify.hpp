#pragma once

// Netlists of synthesized realizations and their verification against the
// original transfer function.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lqss/static_decomp.hpp"
#include "lqss/synth_general.hpp"
#include "lqss/synth_passive.hpp"

namespace lqss {

enum class ModelType { passive, general };

struct Model {
  ModelType type = ModelType::passive;
  PassiveModel passive;  // used when type == passive
  GeneralModel general;  // used when type == general
  RVector detunings;
  RVector interconnect_kappa;

  Index modes() const;
  Index channels() const;
  // m x m for passive models, 2m x 2m doubled-up for general ones.
  CMatrix tf(cd s) const;
  double hamiltonian_norm() const;
};

struct ClassSummary {
  std::string kind;
  cd value;
};

// Everything needed to rebuild the realization: static networks before and
// after the reduced system, the cavity bank, and the feedback network on the
// interconnection ports.
struct Netlist {
  ModelType type = ModelType::passive;
  Index modes = 0, channels = 0;
  CMatrix pre, post;        // m x m (passive) or 2m x 2m
  DeviceSchedule pre_schedule, post_schedule;
  CavityBank bank;
  CMatrix feedback;         // R: n x n (passive) or 2n x 2n
  DeviceSchedule feedback_schedule;
  // reduced-system data kept for inspection
  CMatrix n_hat, m_hat, m_conc, x;
  std::vector<ClassSummary> classes;
  std::map<std::string, double> residuals;
};

Netlist make_netlist(const PassiveRealization& real);
Netlist make_netlist(const GeneralRealization& real);

// Synthesizes either kind of model with the detunings and interconnect
// couplings it carries.
Netlist synthesize(const Model& model, std::uint64_t seed = 42);

// Transfer function of the assembled network: post * Ĝ(s) * pre where Ĝ
// closes the bank's interconnection ports through the feedback matrix.
CMatrix netlist_tf(const Netlist& net, cd s);

// Largest mismatch between each schedule and the matrix it implements.
double schedule_mismatch(const Netlist& net);

// `count` sample points: ω log-spaced over [1e-2, 1e3] * scale with a small
// seeded jitter, alternating between the imaginary axis and Re s = 0.1.
std::vector<cd> verification_grid(double scale, int count, std::uint64_t seed);

struct FrequencyError {
  cd s;
  double error;  // ‖G_ref - G_net‖_F / (1 + ‖G_ref‖_F)
};

struct VerifyReport {
  std::vector<FrequencyError> samples;
  double max_error = 0.0;
  double tol = 0.0;
  bool pass = false;
};

VerifyReport compare_tf(const std::function<CMatrix(cd)>& reference,
                        const std::function<CMatrix(cd)>& candidate,
                        const std::vector<cd>& grid, double tol);

struct VerifyOptions {
  int freqs = 20;
  std::uint64_t seed = 42;
  double tol = 1e-8;
};

VerifyReport verify(const Model& model, const Netlist& net, const VerifyOptions& opts = {});

}  // namespace lqss
