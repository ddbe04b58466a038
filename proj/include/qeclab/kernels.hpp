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

#include <span>

#include "qeclab/types.hpp"

// Hot inner loops of both engines. The default entry points parallelize with
// OpenMP on large problems; the kern::ref versions are plain serial loops kept
// as the reference implementation (tests assert agreement, tools/bench_kernels
// compares throughput). All writes are elementwise, so the parallel results
// are bitwise identical to the serial ones.

namespace qeclab::kern {

// a <- U_embedded * a, where u is 2^k x 2^k on the given sites and `a` has
// full row dimension lay.dim() (any column count: works for vectors, column
// blocks and full matrices).
void lmul_gate(Matrix& a, const Matrix& u, std::span<const int> sites,
               const HilbertLayout& lay);

// a <- a * U_embedded^dag (column-side partner of lmul_gate).
void rmul_gate_dag(Matrix& a, const Matrix& u, std::span<const int> sites,
                   const HilbertLayout& lay);

// rho <- U rho U^dag.
void conj_gate(Matrix& rho, const Matrix& u, std::span<const int> sites,
               const HilbertLayout& lay);

// rho <- (1-w) rho + w * Phi_q(rho), with Phi_q the trace-out-and-refill
// channel on one qubit. w=1 applies Phi_q itself; w = 1-exp(-lambda^2 s)
// is the exact one-qubit dissipator semigroup step.
void replace_mix(Matrix& rho, int qubit, double w, const HilbertLayout& lay);

namespace ref {
void lmul_gate(Matrix& a, const Matrix& u, std::span<const int> sites,
               const HilbertLayout& lay);
void rmul_gate_dag(Matrix& a, const Matrix& u, std::span<const int> sites,
                   const HilbertLayout& lay);
void conj_gate(Matrix& rho, const Matrix& u, std::span<const int> sites,
               const HilbertLayout& lay);
void replace_mix(Matrix& rho, int qubit, double w, const HilbertLayout& lay);
}  // namespace ref

}  // namespace qeclab::kern
