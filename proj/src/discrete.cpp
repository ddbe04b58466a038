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

#include "qeclab/discrete.hpp"

#include <cmath>

#include "qeclab/kernels.hpp"

namespace qeclab {

CorrectionCycle make_cycle(const Code& code, RecoveryStyle style,
                           double lambda_sq, double t_clock,
                           std::optional<double> gate_noise_weight) {
  CorrectionCycle cycle;
  cycle.code = code;
  cycle.circuit = build_recovery(code, style);
  cycle.layout = cycle.circuit.layout();
  cycle.recovery_unitary = circuit_unitary(cycle.circuit.ops, cycle.layout);
  cycle.error = discrete_error_from_time(cycle.layout, lambda_sq, t_clock);
  if (gate_noise_weight) {
    const double w = *gate_noise_weight;
    if (w < 0.0 || w > 1.0)
      throw ConfigError("gate-noise weight outside [0, 1]");
    DiscreteErrorMap dressing = identity_error_map(cycle.layout);
    for (int q = 0; q < cycle.layout.register_qubits; ++q)
      dressing.stages.push_back({q, w, {}});
    dressing.deviation_bound = deviation_from_identity(dressing);
    cycle.gate_noise = dressing;
    cycle.has_gate_noise = w > 0.0;
  } else {
    cycle.gate_noise = identity_error_map(cycle.layout);
  }
  return cycle;
}

namespace {

void record_state_stats(DiscreteRun& run, const Matrix& rho) {
  const cx tr = rho.trace();
  if (std::abs(tr.imag()) > tol().trace_unity)
    throw NumericalError("density matrix trace acquired an imaginary part");
  run.traces.push_back(tr.real());
  run.purities.push_back(purity(rho));
  run.min_eigs.push_back(min_eigenvalue_est(rho));
}

}  // namespace

DiscreteRun run_uncorrected(const HilbertLayout& lay, double weight,
                            int T, const Vector& psi_register) {
  if (T < 0) throw ConfigError("step count must be >= 0");
  if (weight < 0.0 || weight > 1.0)
    throw ConfigError("error weight outside [0, 1]");
  if (psi_register.size() != lay.register_dim())
    throw ConfigError("state dimension does not match the register");
  const HilbertLayout reg = HilbertLayout::make(lay.register_qubits, 0);
  Matrix rho = psi_register * psi_register.adjoint();
  DiscreteRun run;
  run.T = T;
  run.trajectory.reserve(std::size_t(T) + 1);
  run.trajectory.push_back(state_fidelity(psi_register, rho));
  record_state_stats(run, rho);
  for (int t = 1; t <= T; ++t) {
    for (int q = 0; q < reg.register_qubits; ++q)
      kern::replace_mix(rho, q, weight, reg);
    run.trajectory.push_back(state_fidelity(psi_register, rho));
    record_state_stats(run, rho);
  }
  run.final_fidelity = run.trajectory.back();
  return run;
}

DiscreteRun run_corrected(const CorrectionCycle& cycle, int T,
                          const Vector& psi_register) {
  if (T < 0) throw ConfigError("step count must be >= 0");
  const HilbertLayout& lay = cycle.layout;
  if (psi_register.size() != lay.register_dim())
    throw ConfigError("state dimension does not match the register");

  // F = Tr[(P_psi (x) 1_A) rho] through the frame columns psi (x) e_a.
  const Matrix frame = [&] {
    Matrix w = Matrix::Zero(lay.dim(), lay.ancilla_dim());
    for (std::int64_t a = 0; a < lay.ancilla_dim(); ++a)
      for (std::int64_t r = 0; r < lay.register_dim(); ++r)
        w(r * lay.ancilla_dim() + a, a) = psi_register[r];
    return w;
  }();
  const auto fidelity = [&](const Matrix& rho) {
    const cx f = (frame.adjoint() * rho * frame).trace();
    if (std::abs(f.imag()) > tol().fidelity_imag)
      throw NumericalError("fidelity acquired an imaginary part");
    return f.real();
  };
  const auto refresh_ancillas = [&](Matrix& rho) {
    const Matrix reg = trace_out_ancillas(rho, lay);
    Matrix anc = Matrix::Zero(lay.ancilla_dim(), lay.ancilla_dim());
    anc(0, 0) = 1.0;
    rho = tensor_product(reg, anc);
  };

  const Vector full = with_fresh_ancillas(lay, psi_register);
  Matrix rho = full * full.adjoint();

  DiscreteRun run;
  run.T = T;
  run.include_gate_noise = cycle.has_gate_noise;
  run.trajectory.reserve(std::size_t(T) + 1);
  run.trajectory.push_back(fidelity(rho));
  record_state_stats(run, rho);
  run.final_fidelity = run.trajectory.back();
  for (int t = 1; t <= T; ++t) {
    cycle.error.apply(rho);
    rho = cycle.recovery_unitary * rho * cycle.recovery_unitary.adjoint();
    run.trajectory.push_back(fidelity(rho));
    record_state_stats(run, rho);
    if (cycle.has_gate_noise) cycle.gate_noise.apply(rho);
    if (t == T) run.final_fidelity = fidelity(rho);
    refresh_ancillas(rho);
  }
  return run;
}

double fidelity_lower_bound(double mu, double B, int T) {
  if (T < 0) throw ConfigError("step count must be >= 0");
  if (mu < 0.0 || mu > 1.0) throw ConfigError("accuracy outside [0, 1]");
  if (B < 0.0) throw ConfigError("residual constant must be >= 0");
  const double survive = std::pow(1.0 - mu, T);
  return survive - B * (1.0 - survive);
}

double required_mu(double epsilon, double B, int T) {
  if (T <= 0) throw ConfigError("step count must be positive");
  if (!(epsilon > 0.0)) throw ConfigError("error budget must be positive");
  if (B < 0.0) throw ConfigError("residual constant must be >= 0");
  return epsilon / ((B + 1.0) * double(T));
}

}  // namespace qeclab
