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

#include <nlohmann/json_fwd.hpp>

#include "qeclab/codes.hpp"

// Finite-width pulse schedules: each gate becomes a normalized pulse
// f(t) >= 0 times a fixed Hermitian generator, H(t) = sum_alpha f_alpha(t)
// h^alpha. Pulses on overlapping qubit sets never overlap in time; pulses on
// disjoint sets may run in parallel.

namespace qeclab {

enum class PulseShape { box, raised_cosine, truncated_gaussian };
std::string shape_name(PulseShape s);
PulseShape shape_from_name(const std::string& name);

// Density value f(t) for a unit-integral pulse of the given shape centered
// at c with support width t0 (truncated-gaussian: sigma = t0/6, renormalized
// on the support).
double pulse_value(PulseShape shape, double c, double t0, double t);
// Exact integral of f over [a, b] (clipped to the support).
double pulse_integral(PulseShape shape, double c, double t0, double a,
                      double b);
// sup_t f(t): 1/t0 (box), 2/t0 (raised-cosine), analytic peak (gaussian).
double pulse_sup(PulseShape shape, double t0);

struct Pulse {
  PulseShape shape = PulseShape::raised_cosine;
  double center = 0.0;
  double width = 0.0;           // t0 of this pulse
  Matrix generator;             // Hermitian h on `sites` (2^|sites| square)
  std::vector<int> sites;       // 1 or 2 qubits
  CircuitOp source;             // elementary gate this pulse implements
  int slot = 0;                 // scheduling layer index

  double support_lo() const { return center - width / 2.0; }
  double support_hi() const { return center + width / 2.0; }
};

struct Schedule {
  std::vector<Pulse> pulses;
  double tau = 0.0;
  double t0_min = 0.0;
  HilbertLayout layout;

  // Invariant checks (width >= t0_min; same-site pulses time-disjoint;
  // supports within [0, tau]); throws ConfigError on violation.
  void validate() const;
};

enum class Alignment { uniform, packed_split, packed_end };
std::string alignment_name(Alignment a);
Alignment alignment_from_name(const std::string& name);

struct CompileOptions {
  PulseShape shape = PulseShape::raised_cosine;
  double t0 = 0.0;                // pulse width
  double tau = 0.0;               // period
  double t0_min = 0.0;            // 0: defaults to t0
  Alignment alignment = Alignment::uniform;
};

// Principal Hermitian generator h with U = exp(-i h), eigenphases in
// (-pi, pi]. Closed forms: (pi/2)(I - U) for Hermitian unitaries, phase
// diagonal for diagonal gates.
Matrix gate_generator(Gate g);

// Expands macros, layers gates greedily (each gate starts as soon as all its
// qubits are free), assigns slot time windows per the alignment, and emits
// one pulse per elementary gate. The noiseless time-ordered propagator over
// [0, tau] reproduces the circuit unitary. Throws on schedule overflow.
Schedule compile_circuit(const RecoveryCircuit& circuit,
                         const CompileOptions& opt);

// H(t) as a dense full-dimension operator (testing surface; the integrators
// use the per-pulse structure directly).
Matrix evaluate_hamiltonian(const Schedule& schedule, double t);

struct PulseSpeedEntry {
  std::size_t pulse_index = 0;
  double sup_f = 0.0;
  double norm_h = 0.0;    // ||h||_inf
  double measured = 0.0;  // sup f * 2 ||h||
  double limit = 0.0;     // C / t0_min
  bool pass = false;
};
struct SpeedReport {
  double C = 0.0;
  double t0_min = 0.0;
  std::vector<PulseSpeedEntry> entries;
  bool all_pass = true;
};

SpeedReport check_speed_constraint(const Schedule& schedule, double C);

struct TimedGate {
  double center = 0.0;
  CircuitOp op;
};

// Collapses every pulse to an instantaneous gate at its center, ordered by
// time (ties: slot-parallel gates act on disjoint sites and commute; they
// are emitted in ascending first-site order).
std::vector<TimedGate> delta_limit_schedule(const Schedule& schedule);

nlohmann::json serialize_schedule(const Schedule& schedule);
Schedule parse_schedule(const nlohmann::json& doc);

}  // namespace qeclab
