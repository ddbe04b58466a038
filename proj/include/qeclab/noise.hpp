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

#include <vector>

#include "qeclab/tensor.hpp"

// The noise family used throughout: the single-qubit replacement channel
// Phi_k (trace out qubit k, refill with the maximally mixed state), the
// generator of its continuous semigroup, and the discrete-time error maps
// obtained by running that semigroup for a clock period.

namespace qeclab {

// Phi_k: rho -> (1/2) Tr_k(rho) (x) 1_k on the given qubit.
struct ReplacementChannel {
  HilbertLayout layout;
  int qubit = 0;

  static ReplacementChannel make(const HilbertLayout& lay, int qubit);

  // The four 2x2 Kraus operators (1/sqrt 2)|mu><nu|.
  std::vector<Matrix> small_kraus() const;
  // The same operators embedded at the target qubit (full dimension).
  std::vector<Matrix> kraus() const;
};

// In-place Phi_q application (pure channel, mixing weight 1).
void apply_phi(Matrix& rho, int qubit, const HilbertLayout& lay);
DensityMatrix apply_phi(const DensityMatrix& rho, int qubit);

// Generator L rho = lambda_sq * sum_{k in register} (Phi_k rho - rho).
// Noise acts on register qubits only; ancillas are noiseless by design
// (the assumption most favorable to recovery).
struct LindbladGenerator {
  HilbertLayout layout;
  double lambda_sq = 0.0;

  static LindbladGenerator make(const HilbertLayout& lay, double lambda_sq);
};

// Returns L(rho): traceless Hermitian, zero on the maximally mixed register.
Matrix apply_lindblad(const LindbladGenerator& gen, const Matrix& rho);

// Mixture weight of the exact one-qubit semigroup step e^{tL_k}
//   = (1-w) Id + w Phi_k,  w = 1 - exp(-lambda_sq * t).
double semigroup_weight(double lambda_sq, double t);

// A product of independent per-qubit mixtures (1-w)Id + w Phi_q, the
// discrete-time error map for one clock period.
struct DiscreteErrorMap {
  struct Stage {
    int qubit = 0;
    double weight = 0.0;                // w in [0,1]
    std::vector<Matrix> small_kraus;    // 2x2 Kraus set of this stage
  };
  HilbertLayout layout;
  std::vector<Stage> stages;
  double deviation_bound = 0.0;         // measured/bounded distance from Id

  // Applies the whole map in place.
  void apply(Matrix& rho) const;
  Matrix applied(const Matrix& rho) const;
};

// e^{t_clock L} restricted to the register qubits of the layout.
DiscreteErrorMap discrete_error_from_time(const HilbertLayout& lay,
                                          double lambda_sq, double t_clock);

// Identity map on the layout (zero stages, deviation 0).
DiscreteErrorMap identity_error_map(const HilbertLayout& lay);

// Normalized-Choi trace-distance from the identity channel:
//   D(E) = (1/2) || C_E - C_Id ||_1,   Tr C = 1.
// Exact for this product-of-mixtures family at every size: the per-qubit
// Choi factors are simultaneously diagonal, giving the closed form
//   D = 1 - prod_q (1 - (3/4) w_eff_q),
// with w_eff the composed weight of all stages touching qubit q. Tests
// cross-check the formula against an explicit Choi construction.
double deviation_from_identity(const DiscreteErrorMap& map);

// Normalized Choi state of a channel given by full-dimension Kraus operators
// acting on a dim-dimensional space (used by tests and the deviation proxy).
Matrix choi_state(const std::vector<Matrix>& kraus, std::int64_t dim);

}  // namespace qeclab
