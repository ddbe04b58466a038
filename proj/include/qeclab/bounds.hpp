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

#include "qeclab/continuous.hpp"

// Analysis layer: the protection profile x(t), the error lower bound and
// its ODE consistency check, boundary-window derivative bound, per-period
// fidelity ceilings, and the overall fidelity-vs-volume model.

namespace qeclab {

using XSample = std::pair<double, double>;  // (t, x)

// x(t) = 1 - max over register qubits k of the largest eigenvalue of the
// conjugated replacement channel applied to P_psi (x) 1_A. Computed from
// the noiseless propagator only (no density-matrix integration): the value
// reduces to a Gram-matrix eigenproblem of the propagated frame columns.
double x_of_t(const Schedule& schedule, const Vector& psi_register, double t);

// x on the integration grid of the schedule (one propagator walk).
std::vector<XSample> x_profile(const Schedule& schedule,
                               const Vector& psi_register,
                               const IntegratorConfig& config);

// x at explicit, ascending sample times (one propagator walk). Used to
// evaluate x on exactly the times a recorded trajectory carries.
std::vector<XSample> x_profile(const Schedule& schedule,
                               const Vector& psi_register,
                               const std::vector<double>& times);

// Quadrature of lambda_sq M int_0^tau e^{-lambda_sq M (tau - s)} x(s) ds.
double error_lower_bound(const std::vector<XSample>& x_samples,
                         double lambda_sq, int m_register, double tau);

struct OdeReport {
  bool pass = false;
  double slack = 0.0;           // 10x Richardson-estimated truncation error
  double min_X = 0.0;           // most negative reconstructed X
  double worst_gap = 0.0;       // most negative X - x over the grid
  std::size_t points_checked = 0;
};

// Reconstructs X(t) from the error trajectory E(t) = 1 - F(t) through
// dE/dt = lambda_sq M (X - E) with centered differences plus Richardson
// refinement, then checks X >= 0 and X >= x within the estimated slack.
OdeReport verify_error_ode(const std::vector<TrajectoryPoint>& trajectory,
                           const std::vector<XSample>& x_samples,
                           double lambda_sq, int m_register);

struct DerivReport {
  bool pass = false;
  double max_slope = 0.0;  // max |dx/dt| inside the two boundary windows
  double limit = 0.0;      // 4 C / t0_min
};

// Finite-difference |dx/dt| over [0, t0_min] and [tau - t0_min, tau].
DerivReport derivative_bound_check(const std::vector<XSample>& x_samples,
                                   double t0_min, double tau, double C);

enum class Regime { small, crossover, large };
std::string regime_name(Regime r);

struct Ceiling {
  Regime regime = Regime::small;
  double value = 1.0;  // 1 - kappa M q (small), 1/2 (large); the crossover
                       // uses 1 - kappa M q clamped below at 1/2
};

// Per-period fidelity ceiling for register size M and q = lambda_sq t0_min,
// with the small-regime proportionality constant kappa supplied by the
// caller (fitted from sweeps, never assumed 1).
Ceiling fidelity_ceiling(int m_register, double q, double kappa);

// Largest sustainable step count, 1 / (lambda_sq t0_min).
double t_max_estimate(double lambda_sq, double t0_min);

// exp(-lambda_sq t0 V), with V = periods x register qubits by convention.
double total_fidelity_model(double lambda_sq, double t0, double volume);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
};
LinearFit linear_fit(const std::vector<double>& xs,
                     const std::vector<double>& ys);

struct BoundReport {
  std::vector<XSample> x_samples;
  double E_tau_measured = 0.0;
  double E_tau_lower_bound = 0.0;
  double q = 0.0;   // lambda_sq * t0_min
  double Mq = 0.0;
  Regime regime = Regime::small;
  double x0 = 0.0;  // boundary values
  double x_tau = 0.0;
  double max_derivative_observed = 0.0;
  // inputs, for reproducibility
  double lambda_sq = 0.0;
  double t0 = 0.0;
  double tau = 0.0;
  int m_register = 0;
  double C = 0.0;
  double kappa = 0.0;
  std::size_t grid_points = 0;
};

nlohmann::json bound_report_to_json(const BoundReport& report);

}  // namespace qeclab
