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

#include <algorithm>
#include <cmath>
#include <vector>

#include "qeclab/continuous.hpp"
#include "qeclab/kernels.hpp"

// Internals shared by the continuous engine and the analysis layer: the
// incremental pulse-exponential propagator and the grid builder. Not part
// of the public interface.

namespace qeclab::detail {

inline constexpr double kGridEps = 1e-12;

// Integration knots; `refine` multiplies the subdivision counts (used for
// quadrature refinement studies). Window subdivision counts are rounded up
// to even so composite Simpson pairs never straddle a support edge.
std::vector<double> build_grid_impl(const Schedule& schedule,
                                    const IntegratorConfig& config,
                                    int refine);

// Applies the exact time-ordered Hamiltonian flow of an interval through
// per-pulse closed-form exponentials. Caches each pulse's generator
// eigendecomposition; intervals never straddle a support edge, so every
// active pulse covers the whole interval and same-interval pulses commute.
class StepPropagator {
 public:
  explicit StepPropagator(const Schedule& schedule);

  // Indices of pulses whose support contains the interval's midpoint,
  // ordered by (slot, leading site).
  std::vector<std::size_t> active(double lo, double hi) const;

  // a <- U(hi, lo) a  (signed: lo > hi gives the inverse flow).
  void lmul_interval(Matrix& a, double lo, double hi) const;
  // rho <- U rho U^dag over the interval.
  void conj_interval(Matrix& rho, double lo, double hi) const;

  // Gate exponential exp(-i theta h) of one pulse.
  Matrix pulse_exp(std::size_t index, double theta) const;

  const Schedule& schedule() const { return *schedule_; }

 private:
  const Schedule* schedule_;
  struct Cache {
    Matrix vectors;
    Eigen::VectorXd phases;
  };
  std::vector<Cache> cache_;
};

// Warm-started smallest-eigenvalue monitor for density matrices: a power
// iteration on s*I - rho whose Rayleigh quotient gives a one-sided bound
// (the true smallest eigenvalue is <= the returned estimate). Exact solve
// below `exact_dim`.
class MinEigMonitor {
 public:
  explicit MinEigMonitor(std::int64_t dim, int exact_dim = 128);
  double estimate(const Matrix& rho);

 private:
  std::int64_t dim_;
  int exact_dim_;
  Vector v_;
  bool warm_ = false;
};

// Largest singular value, estimated by power iteration on M^dag M with a
// deterministic start; exact SVD below `exact_dim`. Returns a pair
// (estimate, certified upper bound).
std::pair<double, double> spectral_norm_est(const Matrix& m,
                                            int exact_dim = 256);

// Columns psi (x) e_a for every ancilla basis state: the projector onto
// psi's subspace is frame * frame^dag, and overlaps reduce to small
// contractions against these columns.
Matrix make_frame(const HilbertLayout& lay, const Vector& psi_register);

}  // namespace qeclab::detail
