#pragma once

// Static linear optical networks: Bloch-Messiah reduction of Bogoliubov
// matrices and beam splitter / phase shifter / squeezer schedules.

#include <variant>
#include <vector>

#include "lqss/krein.hpp"

namespace lqss {

// Acts on channels (a, b) as
// e^{iζ} [[e^{i(φ+ψ)/2} cos θ/2,  e^{i(ψ-φ)/2} sin θ/2],
//         [-e^{i(φ-ψ)/2} sin θ/2, e^{-i(φ+ψ)/2} cos θ/2]]
struct BeamSplitter {
  Index a = 0, b = 1;
  double theta = 0.0, phi = 0.0, psi = 0.0, zeta = 0.0;

  CMatrix matrix() const;  // 2x2
  static BeamSplitter from_unitary(Index a, Index b, const CMatrix& u);
};

struct PhaseShifter {
  Index channel = 0;
  double phase = 0.0;  // multiplies the field by e^{i phase}
};

// Single-mode squeezer on (u, u*):
// [[e^{i(φ+ψ)} cosh x, e^{i(ψ-φ)} sinh x], [e^{i(φ-ψ)} sinh x, e^{-i(φ+ψ)} cosh x]]
struct Squeezer {
  Index channel = 0;
  double x = 0.0, phi = 0.0, psi = 0.0;

  CMatrix matrix() const;  // 2x2 in (u, u*) coordinates
};

using Device = std::variant<BeamSplitter, PhaseShifter, Squeezer>;

enum class ScheduleKind { unitary, bogoliubov };

// Devices listed in the order the signal meets them.
struct DeviceSchedule {
  Index dimension = 0;
  ScheduleKind kind = ScheduleKind::unitary;
  std::vector<Device> devices;

  // Product of the devices: m x m for unitary schedules, 2m x 2m doubled-up
  // for Bogoliubov ones.  Squeezers are rejected in unitary schedules.
  CMatrix matrix() const;
  Index count_beam_splitters() const;
  Index count_squeezers() const;
};

// R = diag(U2, conj U2) [[cosh X, sinh X], [sinh X, cosh X]] diag(U1, conj U1)
// with x sorted in descending order.
struct BlochMessiah {
  CMatrix u1, u2;
  RVector x;
  double residual = 0.0;  // ‖R - reconstruction‖_F
};
BlochMessiah bloch_messiah(const BogoliubovMatrix& r);

// Nulls the strictly lower triangle column by column from the bottom with
// adjacent-channel beam splitters; remaining diagonal phases become phase
// shifters applied first.
DeviceSchedule reck_decompose(const CMatrix& u);

// Bloch-Messiah followed by Reck on both unitaries.  Squeezers with
// |x| below 1e-12 are omitted, so passive inputs get no squeezers.
DeviceSchedule schedule_static(const BogoliubovMatrix& r);

}  // namespace lqss
