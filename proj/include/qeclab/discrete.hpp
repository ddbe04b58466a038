// Copyright 2026 the qeclab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>

#include "qeclab/codes.hpp"
#include "qeclab/noise.hpp"

// The discrete-time model: per-step error map, recovery with fresh ancillas,
// and the closed-form fidelity lower bound the runs are checked against.

namespace qeclab {

// One correction step: error map E for a clock period, then the recovery
// unitary, then (optionally) a gate-noise dressing map E' after recovery.
struct CorrectionCycle {
  Code code;
  RecoveryCircuit circuit;
  HilbertLayout layout;          // register = code qubits, ancillas = circuit's
  Matrix recovery_unitary;       // dense, precomputed once
  DiscreteErrorMap error;        // E  (period noise)
  DiscreteErrorMap gate_noise;   // E' (post-recovery dressing; may be identity)
  bool has_gate_noise = false;
};

CorrectionCycle make_cycle(const Code& code, RecoveryStyle style,
                           double lambda_sq, double t_clock,
                           std::optional<double> gate_noise_weight = {});

struct DiscreteRun {
  int T = 0;
  // trajectory[k] = fidelity of the register state after the k-th recovery
  // (k = 0 is the initial state): the almost-final value for a run of k
  // steps. Length T + 1.
  std::vector<double> trajectory;
  std::vector<double> traces;    // tr rho at the same instants
  std::vector<double> purities;  // tr rho^2 at the same instants
  std::vector<double> min_eigs;  // smallest-eigenvalue estimate, same grid
  double final_fidelity = 1.0;   // after the trailing dressing map, if any
  bool include_gate_noise = false;
};

// Fidelities <psi| E^t(P_psi) |psi> for t = 0..T, with E the per-qubit
// mixture of the given weight on every register qubit (no recovery).
DiscreteRun run_uncorrected(const HilbertLayout& lay, double weight,
                            int T, const Vector& psi_register);

// T repetitions of [error, recovery, (dressing)], refreshing the ancilla
// block to |0...0> between cycles.
DiscreteRun run_corrected(const CorrectionCycle& cycle, int T,
                          const Vector& psi_register);

// (1-mu)^T - B [1 - (1-mu)^T]; may be negative (then vacuous but returned).
double fidelity_lower_bound(double mu, double B, int T);

// Accuracy needed for total error epsilon over T steps: eps / ((B+1) T).
double required_mu(double epsilon, double B, int T);

}  // namespace qeclab
