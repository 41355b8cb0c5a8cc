#pragma once

// Optical building blocks for realizations: multi-port cavities, their
// cascade into a bank, and static feedback elimination.

#include <string>
#include <variant>
#include <vector>

#include "lqss/krein.hpp"

namespace lqss {

// Input/output model dx = A x dt + B du, dy = C x dt + D du.
struct StateSpace {
  CMatrix a, b, c, d;

  // C (sI - A)⁻¹ B + D; throws ErrorKind::pole when sI - A is singular.
  CMatrix eval(cd s) const;
};

// One port of a single-mode cavity on system channel `channel`.  The mode
// enters the channel's output as passive * a + active * a*, i.e. the
// coupling rate is |passive|² (partially transmitting mirror) and the
// active (parametric) rate is |active|².
struct CavityPort {
  Index channel = 0;
  cd passive = 0.0;
  cd active = 0.0;
};

struct Cavity {
  double detuning = 0.0;
  std::vector<CavityPort> ports;
  double interconnect_kappa = 1.0;  // rate of the extra passive feedback port
  std::string role;                  // which canonical block it realizes
};

// Passive 2x2 device acting on two system channels inside the bank.
struct ChannelMixer {
  Index channel_a = 0, channel_b = 0;
  CMatrix unitary;
};

// Signal-flow order of the bank: cavities (by index) and channel mixers.
using BankStage = std::variant<Index, ChannelMixer>;

struct CavityBank {
  Index channels = 0;
  std::vector<Cavity> cavities;
  std::vector<BankStage> stages;
};

// Doubled-up (S, N, M) triple of a network with channel count m and mode count n.
struct SlhTriple {
  CMatrix s;  // 2m x 2m
  CMatrix n;  // 2m x 2n
  CMatrix m;  // 2n x 2n
};

// Series product over the stages, with modes ordered by cavity index.
SlhTriple bank_model(const CavityBank& bank);

// Open network of the bank with its interconnection ports exposed.  Inputs
// and outputs are ordered [system, interconnect, conj(system), conj(interconnect)].
StateSpace bank_state_space(const CavityBank& bank);

// Closes u_int = R y_int on the last `n_int` channels of each half of a
// doubled-up open network.  R is doubled-up of size 2 n_int.  Throws
// UnitEigenvalueError if I - R D_ii is singular.
StateSpace close_feedback(const StateSpace& open, Index n_int, const CMatrix& r);

// Passive variant: plain (non-doubled) ordering [system, interconnect].
StateSpace close_feedback_passive(const StateSpace& open, Index n_int, const CMatrix& r);

}  // namespace lqss
