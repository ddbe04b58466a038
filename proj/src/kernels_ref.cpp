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

#include "qeclab/kernels.hpp"

#include "kernels_detail.hpp"

// Serial reference kernels: the same per-element arithmetic as the parallel
// entry points, with plain loops. Kept for correctness testing and as the
// baseline in tools/bench_kernels.

namespace qeclab::kern::ref {

void lmul_gate(Matrix& a, const Matrix& u, std::span<const int> sites,
               const HilbertLayout& lay) {
  if (a.rows() != lay.dim())
    throw ConfigError("lmul_gate: row dimension does not match layout");
  const detail::GatePlan p = detail::make_gate_plan(u, sites, lay);
  for (Eigen::Index c = 0; c < a.cols(); ++c)
    for (std::int64_t r = 0; r < p.dr; ++r)
      detail::lmul_slice(a, u, p, p.rest_ix[std::size_t(r)], c);
}

void rmul_gate_dag(Matrix& a, const Matrix& u, std::span<const int> sites,
                   const HilbertLayout& lay) {
  if (a.cols() != lay.dim())
    throw ConfigError("rmul_gate_dag: column dimension does not match layout");
  const detail::GatePlan p = detail::make_gate_plan(u, sites, lay);
  for (std::int64_t r = 0; r < p.dr; ++r)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      detail::rmul_dag_slice(a, u, p, p.rest_ix[std::size_t(r)], i);
}

void conj_gate(Matrix& rho, const Matrix& u, std::span<const int> sites,
               const HilbertLayout& lay) {
  lmul_gate(rho, u, sites, lay);
  rmul_gate_dag(rho, u, sites, lay);
}

void replace_mix(Matrix& rho, int qubit, double w, const HilbertLayout& lay) {
  if (rho.rows() != lay.dim() || rho.cols() != lay.dim())
    throw ConfigError("replace_mix: dimension does not match layout");
  if (w < -1.0 || w > 1.0)
    throw ConfigError("replace_mix: weight outside [-1, 1]");
  // Negative weights arise only inside the order-4 splitting integrator,
  // whose backward half-steps are linear but not completely positive; the
  // caller monitors positivity of the full state.
  const detail::MixPlan p = detail::make_mix_plan(qubit, lay);
  for (std::int64_t jr = 0; jr < p.half; ++jr)
    for (std::int64_t ir = 0; ir < p.half; ++ir)
      detail::mix_cell(rho, p, w, p.clear_ix[std::size_t(ir)],
                       p.clear_ix[std::size_t(jr)]);
}

}  // namespace qeclab::kern::ref
