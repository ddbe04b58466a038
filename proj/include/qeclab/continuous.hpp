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

#include "qeclab/noise.hpp"
#include "qeclab/pulse.hpp"

// Continuous-time engine: master-equation integration under a pulse
// schedule, the noiseless propagator, interaction-frame channels, the
// series-expansion fidelity with a certified tail, and the period-propagator
// factorization check.

namespace qeclab {

enum class Method { strang, splitting4, rk4 };
std::string method_name(Method m);
Method method_from_name(const std::string& name);

struct IntegratorConfig {
  Method method = Method::strang;
  // 0 = auto (smallest pulse width / substeps_per_pulse). Must resolve
  // every pulse with at least 10 steps.
  double step_size = 0.0;
  // Auto step granularity; only used when step_size == 0.
  int substeps_per_pulse = 50;
  // Extra knots inside zero-Hamiltonian gaps so trajectories sample them
  // (the flow across a gap is exact regardless).
  int gap_substeps = 16;
  // Record a trajectory point every this many knots (boundaries always
  // recorded).
  int record_stride = 1;
  // Check the smallest eigenvalue every this many knots.
  int positivity_check_stride = 25;
};

// Integration/sampling knots: pulse supports subdivided to the step size,
// gap interiors subdivided per gap_substeps, all slot boundaries included.
std::vector<double> build_grid(const Schedule& schedule,
                               const IntegratorConfig& config);

struct TrajectoryPoint {
  double t = 0.0;
  double fidelity = 0.0;  // overlap with the initial encoded projector, in
                          // the frame that undoes the noiseless gate action
  double trace = 0.0;
  double purity = 0.0;
  double min_eig = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  Matrix final_rho;                  // at tau, physical frame
  double final_fidelity = 0.0;       // frame value at tau
  double final_fidelity_physical = 0.0;  // <psi|Tr_A rho(tau)|psi>
  double max_trace_drift = 0.0;
  double min_eig_seen = 0.0;
};

// Evolves |psi_register> (x) |0...0> under drho/dt = -i[H(t), rho]
// + lambda_sq sum_k (Phi_k rho - rho) with k over register qubits.
Trajectory integrate_master_equation(const Schedule& schedule,
                                     double lambda_sq,
                                     const Vector& psi_register,
                                     const IntegratorConfig& config);

// T repetitions of the period, refreshing ancillas to |0...0> in between;
// returns the physical register fidelity after each period (length T).
std::vector<double> run_periods(const Schedule& schedule, double lambda_sq,
                                const Vector& psi_register, int periods,
                                const IntegratorConfig& config);

// U(t, s): time-ordered propagator of H alone. Exact (pulse exponentials
// telescope through the closed-form partial integrals).
Matrix hamiltonian_propagator(const Schedule& schedule, double s, double t);

// Kraus operators of X -> U(t,0)^dag Phi_k(U(t,0) X U(t,0)^dag) U(t,0).
std::vector<Matrix> interaction_phi(const Schedule& schedule, int k, double t);

struct DysonResult {
  double fidelity = 0.0;    // truncated series value at t
  double tail_bound = 0.0;  // residual Poisson mass e^{-a} sum_{n>N} a^n/n!
  int order_used = 0;
  int order_required = 0;   // smallest N meeting the requested tail tolerance
};

// Frame fidelity F(t) as prefactor e^{-lambda_sq M t} times the series of
// iterated time-integrals of the conjugated replacement channels, truncated
// at order N (grid trapezoid quadrature); tail certified by Poisson mass.
DysonResult dyson_fidelity(const Schedule& schedule, double lambda_sq,
                           const Vector& psi_register, double t, int order,
                           double tail_tolerance,
                           const IntegratorConfig& config);

struct RecoveryConditionReport {
  double residual = 0.0;  // || U(tau,0) - e^{i phase} I (x) V ||_inf
  bool pass = false;      // residual <= recovery_residual tolerance
  double phase = 0.0;
  Matrix ancilla_unitary;
};

// Checks that the noiseless period propagator acts as identity on the
// register (x) some ancilla unitary, up to a global phase.
RecoveryConditionReport check_recovery_condition(const Schedule& schedule);

}  // namespace qeclab
