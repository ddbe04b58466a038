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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "qeclab/discrete.hpp"
#include "test_util.hpp"

using namespace qeclab;

TEST_CASE("uncorrected single qubit follows the closed-form decay") {
  // One qubit under the weight-w mixture: the |+> overlap decays as
  // (1 + (1-w)^t) / 2.
  const HilbertLayout lay = HilbertLayout::make(1, 0);
  const double lambda_sq = 1.0, t_clock = 1.0;
  const double w = semigroup_weight(lambda_sq, t_clock);
  Vector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const DiscreteRun run = run_uncorrected(lay, w, 3, plus);
  REQUIRE(run.trajectory.size() == 4);
  for (int t = 0; t <= 3; ++t) {
    const double expect =
        0.5 * (1.0 + std::exp(-lambda_sq * t_clock * double(t)));
    CHECK(run.trajectory[std::size_t(t)] ==
          doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK(run.final_fidelity == doctest::Approx(run.trajectory.back()));
  for (double tr : run.traces) CHECK(tr == doctest::Approx(1.0));
  for (double p : run.purities) CHECK(p <= 1.0 + 1e-12);
  for (double e : run.min_eigs) CHECK(e > -1e-10);
}

TEST_CASE("uncorrected product state on three qubits: independent marginals") {
  // |000> under per-qubit mixtures: each qubit is |0><0| with weight
  // 1 - v/2 where v = 1-(1-w)^t, so F(t) = (1 - v/2)^3.
  const HilbertLayout lay = HilbertLayout::make(3, 0);
  const double w = 0.2;
  Vector zero = Vector::Zero(8);
  zero[0] = 1.0;
  const DiscreteRun run = run_uncorrected(lay, w, 5, zero);
  for (int t = 0; t <= 5; ++t) {
    const double v = 1.0 - std::pow(1.0 - w, double(t));
    const double expect = std::pow(1.0 - v / 2.0, 3.0);
    CHECK(run.trajectory[std::size_t(t)] ==
          doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("correction cycle assembly") {
  const Code code = Code::repetition(3);
  const double lambda_sq = 0.1, t_clock = 1.0;
  const CorrectionCycle cycle =
      make_cycle(code, RecoveryStyle::syndrome_correct, lambda_sq, t_clock);
  CHECK(cycle.layout.register_qubits == 3);
  CHECK(cycle.layout.ancilla_qubits == 2);
  CHECK_FALSE(cycle.has_gate_noise);
  const double w = semigroup_weight(lambda_sq, t_clock);
  REQUIRE(cycle.error.stages.size() == 3);
  for (const auto& st : cycle.error.stages)
    CHECK(st.weight == doctest::Approx(w));
  CHECK(testutil::max_abs(
            Matrix(cycle.recovery_unitary -
                   circuit_unitary(cycle.circuit.ops, cycle.layout))) < 1e-12);

  const CorrectionCycle dressed =
      make_cycle(code, RecoveryStyle::syndrome_correct, lambda_sq, t_clock,
                 0.05);
  CHECK(dressed.has_gate_noise);
  REQUIRE(dressed.gate_noise.stages.size() == 3);
  for (const auto& st : dressed.gate_noise.stages)
    CHECK(st.weight == doctest::Approx(0.05));
}

TEST_CASE("corrected run with zero noise stays at fidelity one") {
  for (const Code& code : {Code::repetition(3), Code::perfect5()}) {
    for (const RecoveryStyle style :
         {RecoveryStyle::syndrome_correct, RecoveryStyle::decode_reencode}) {
      const CorrectionCycle cycle = make_cycle(code, style, 0.0, 1.0);
      const DiscreteRun run =
          run_corrected(cycle, 3, sample_frame(code)[2]);
      for (double f : run.trajectory)
        CHECK(f == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("one corrected cycle on repetition-3 matches the majority-vote law") {
  // The replacement mixture acts diagonally on |000>: each qubit flips to
  // |1> with probability w/2 independently, and the syndrome circuit undoes
  // single flips, so F(1) = (1-p)^3 + 3 p (1-p)^2 with p = w/2.
  const Code code = Code::repetition(3);
  const double lambda_sq = 0.1, t_clock = 1.0;
  const CorrectionCycle cycle =
      make_cycle(code, RecoveryStyle::syndrome_correct, lambda_sq, t_clock);
  const DiscreteRun run = run_corrected(cycle, 1, code.logical_zero);
  const double p = semigroup_weight(lambda_sq, t_clock) / 2.0;
  const double expect =
      std::pow(1.0 - p, 3.0) + 3.0 * p * std::pow(1.0 - p, 2.0);
  CHECK(run.trajectory.at(1) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("corrected trajectories keep density-matrix invariants") {
  const Code code = Code::repetition(3);
  const CorrectionCycle cycle =
      make_cycle(code, RecoveryStyle::decode_reencode, 0.3, 1.0);
  const DiscreteRun run = run_corrected(cycle, 6, sample_frame(code)[3]);
  REQUIRE(run.trajectory.size() == 7);
  REQUIRE(run.traces.size() == 7);
  for (double tr : run.traces) CHECK(std::abs(tr - 1.0) < 1e-10);
  for (double p : run.purities) {
    CHECK(p <= 1.0 + 1e-12);
    CHECK(p >= 1.0 / 32.0 - 1e-12);
  }
  for (double e : run.min_eigs) CHECK(e > -1e-9);
  // Fidelity decays overall under steady noise.
  CHECK(run.trajectory.back() < run.trajectory.front());
}

TEST_CASE("gate-noise dressing lowers the final fidelity only") {
  const Code code = Code::repetition(3);
  const CorrectionCycle plain =
      make_cycle(code, RecoveryStyle::syndrome_correct, 0.1, 1.0);
  const CorrectionCycle dressed =
      make_cycle(code, RecoveryStyle::syndrome_correct, 0.1, 1.0, 0.2);
  const Vector psi = sample_frame(code)[2];
  const DiscreteRun a = run_corrected(plain, 4, psi);
  const DiscreteRun b = run_corrected(dressed, 4, psi);
  // The almost-final trajectory sees the dressing of earlier cycles but the
  // final_fidelity also applies the trailing dressing map.
  CHECK(b.final_fidelity < b.trajectory.back());
  CHECK(a.final_fidelity == doctest::Approx(a.trajectory.back()));
  CHECK(b.trajectory.back() < a.trajectory.back());
}

TEST_CASE("closed-form bound and accuracy requirement") {
  CHECK(fidelity_lower_bound(0.0, 5.0, 7) == doctest::Approx(1.0));
  const double mu = 0.01, B = 2.0;
  for (const int T : {1, 5, 20}) {
    const double pw = std::pow(1.0 - mu, double(T));
    CHECK(fidelity_lower_bound(mu, B, T) ==
          doctest::Approx(pw - B * (1.0 - pw)).epsilon(1e-14));
  }
  // Large horizons make the bound vacuous but still well defined.
  CHECK(fidelity_lower_bound(0.2, 3.0, 50) < 0.0);

  const double eps = 0.05;
  const double need = required_mu(eps, B, 10);
  CHECK(need == doctest::Approx(eps / ((B + 1.0) * 10.0)));
  // Running at the required accuracy meets the budget:
  // (1-mu)^T >= 1 - T mu makes the bound at least 1 - (B+1) T mu = 1 - eps.
  CHECK(fidelity_lower_bound(need, B, 10) >= 1.0 - eps - 1e-12);
}
