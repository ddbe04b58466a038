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

#include <nlohmann/json.hpp>

#include <cmath>
#include <map>
#include <vector>

#include "qeclab/pulse.hpp"
#include "qeclab/tensor.hpp"
#include "test_util.hpp"

using namespace qeclab;
using testutil::Rng;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Peak density of the unit-integral truncated gaussian (sigma = t0/6):
// g(0)/Z with Z the mass kept on the support, i.e. 6/(sqrt(2 pi) erf(3/sqrt 2)).
double gaussian_peak_constant() {
  return 6.0 / (std::sqrt(2.0 * kPi) * std::erf(3.0 / std::sqrt(2.0)));
}

// Simpson quadrature clipped to the support, where every shape is smooth
// (outside it the density is identically zero, so nothing is lost).
double simpson(PulseShape shape, double c, double t0, double a, double b,
               int n) {
  a = std::max(a, c - t0 / 2.0);
  b = std::min(b, c + t0 / 2.0);
  if (b <= a) return 0.0;
  double sum = pulse_value(shape, c, t0, a) + pulse_value(shape, c, t0, b);
  const double h = (b - a) / n;
  for (int i = 1; i < n; ++i)
    sum += pulse_value(shape, c, t0, a + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("pulse shapes: unit mass, clipped integrals, closed-form peaks") {
  Rng rng(51);
  for (const PulseShape shape : {PulseShape::box, PulseShape::raised_cosine,
                                 PulseShape::truncated_gaussian}) {
    const double c = 0.7, t0 = 0.4;
    // Unit integral over the full support (and beyond: clipping).
    CHECK(pulse_integral(shape, c, t0, c - t0, c + t0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pulse_integral(shape, c, t0, -10.0, 10.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // Zero outside the support.
    CHECK(pulse_value(shape, c, t0, c - 0.51 * t0) == 0.0);
    CHECK(pulse_value(shape, c, t0, c + 0.51 * t0) == 0.0);
    CHECK(pulse_integral(shape, c, t0, c + t0, c + 2 * t0) == 0.0);

    // Additivity and agreement with an independent quadrature.
    for (int trial = 0; trial < 6; ++trial) {
      const double a = rng.uniform(c - 0.7 * t0, c + 0.7 * t0);
      const double b = rng.uniform(a, c + 0.7 * t0);
      const double m = rng.uniform(a, b);
      const double whole = pulse_integral(shape, c, t0, a, b);
      CHECK(pulse_integral(shape, c, t0, a, m) +
                pulse_integral(shape, c, t0, m, b) ==
            doctest::Approx(whole).epsilon(1e-12));
      CHECK(whole == doctest::Approx(simpson(shape, c, t0, a, b, 8000))
                         .epsilon(1e-9));
    }

    // The peak sits at the center and matches the closed form.
    CHECK(pulse_value(shape, c, t0, c) ==
          doctest::Approx(pulse_sup(shape, t0)).epsilon(1e-12));
    double grid_max = 0.0;
    for (int i = 0; i <= 2000; ++i)
      grid_max = std::max(
          grid_max, pulse_value(shape, c, t0, c - t0 / 2 + i * t0 / 2000.0));
    CHECK(grid_max <= pulse_sup(shape, t0) * (1.0 + 1e-12));
  }
  CHECK(pulse_sup(PulseShape::box, 0.25) == doctest::Approx(4.0));
  CHECK(pulse_sup(PulseShape::raised_cosine, 0.25) == doctest::Approx(8.0));
  CHECK(pulse_sup(PulseShape::truncated_gaussian, 0.25) ==
        doctest::Approx(gaussian_peak_constant() / 0.25).epsilon(1e-12));
}

TEST_CASE("gate generators: hermitian, principal phases, exact exponential") {
  for (const Gate g : {Gate::X, Gate::Z, Gate::H, Gate::S, Gate::Sdg, Gate::T,
                       Gate::Tdg, Gate::CNOT, Gate::CZ, Gate::CCX}) {
    const Matrix h = gate_generator(g);
    CHECK(is_hermitian(h, 1e-12));
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    REQUIRE(es.info() == Eigen::Success);
    // Eigenphases stay in the principal branch.
    CHECK(es.eigenvalues().minCoeff() > -kPi - 1e-12);
    CHECK(es.eigenvalues().maxCoeff() <= kPi + 1e-12);
    // exp(-i h) reconstructs the gate exactly.
    Matrix exp_h = Matrix::Zero(h.rows(), h.cols());
    for (int k = 0; k < es.eigenvalues().size(); ++k) {
      const Vector v = es.eigenvectors().col(k);
      exp_h += std::exp(cx(0.0, -es.eigenvalues()[k])) * (v * v.adjoint());
    }
    CHECK(testutil::max_abs(Matrix(exp_h - gate_matrix(g))) < 1e-12);
  }
  // Half- and quarter-turn gates expose smaller generator norms.
  CHECK(operator_norm(gate_generator(Gate::X)) == doctest::Approx(kPi));
  CHECK(operator_norm(gate_generator(Gate::S)) == doctest::Approx(kPi / 2));
  CHECK(operator_norm(gate_generator(Gate::T)) == doctest::Approx(kPi / 4));
}

TEST_CASE("compiled schedules pass their own invariant checks") {
  const Code code = Code::repetition(3);
  for (const RecoveryStyle style :
       {RecoveryStyle::syndrome_correct, RecoveryStyle::decode_reencode}) {
    const RecoveryCircuit circuit = build_recovery(code, style);
    for (const Alignment align :
         {Alignment::uniform, Alignment::packed_split, Alignment::packed_end}) {
      CompileOptions opt;
      opt.shape = PulseShape::raised_cosine;
      opt.t0 = 0.01;
      opt.tau = 1.0;
      opt.alignment = align;
      const Schedule s = compile_circuit(circuit, opt);
      CHECK_NOTHROW(s.validate());
      CHECK(s.tau == doctest::Approx(1.0));
      CHECK(s.t0_min == doctest::Approx(0.01));
      CHECK(!s.pulses.empty());
      // Parallel layering: fewer slots than gates.
      int max_slot = 0;
      for (const Pulse& p : s.pulses) max_slot = std::max(max_slot, p.slot);
      CHECK(max_slot + 1 < int(s.pulses.size()));
    }
  }
}

TEST_CASE("alignment policies place the slots where they promise") {
  const Code code = Code::repetition(3);
  const RecoveryCircuit circuit =
      build_recovery(code, RecoveryStyle::decode_reencode);
  CompileOptions opt;
  opt.t0 = 0.05;
  opt.tau = 1.0;

  opt.alignment = Alignment::packed_end;
  const Schedule at_end = compile_circuit(circuit, opt);
  double hi = 0.0, lo = 1e9;
  for (const Pulse& p : at_end.pulses) {
    hi = std::max(hi, p.support_hi());
    lo = std::min(lo, p.support_lo());
  }
  CHECK(hi == doctest::Approx(1.0));
  CHECK(lo > 0.3);  // everything packed into the trailing window

  // packed_split leaves a silent hold in the middle of the period.
  opt.alignment = Alignment::packed_split;
  const Schedule split = compile_circuit(circuit, opt);
  CHECK(testutil::max_abs(evaluate_hamiltonian(split, 0.5)) < 1e-14);
  bool head_near_start = false, tail_near_end = false;
  for (const Pulse& p : split.pulses) {
    if (p.support_lo() < 0.05) head_near_start = true;
    if (p.support_hi() > 0.95) tail_near_end = true;
  }
  CHECK(head_near_start);
  CHECK(tail_near_end);
}

TEST_CASE("hamiltonian evaluation is the pulse sum") {
  Rng rng(52);
  const Code code = Code::repetition(3);
  const RecoveryCircuit circuit =
      build_recovery(code, RecoveryStyle::syndrome_correct);
  CompileOptions opt;
  opt.t0 = 0.02;
  opt.tau = 1.0;
  opt.alignment = Alignment::uniform;
  const Schedule s = compile_circuit(circuit, opt);
  const HilbertLayout lay = s.layout;
  for (int trial = 0; trial < 5; ++trial) {
    const double t = rng.uniform(0.0, 1.0);
    Matrix expect = Matrix::Zero(lay.dim(), lay.dim());
    for (const Pulse& p : s.pulses)
      expect += pulse_value(p.shape, p.center, p.width, t) *
                embed(p.generator, p.sites, lay);
    CHECK(testutil::max_abs(Matrix(evaluate_hamiltonian(s, t) - expect)) <
          1e-11);
  }
}

TEST_CASE("schedule invariants reject malformed hand-built schedules") {
  const HilbertLayout lay = HilbertLayout::make(1, 0);
  Pulse p;
  p.shape = PulseShape::box;
  p.center = 0.5;
  p.width = 0.2;
  p.generator = gate_generator(Gate::X);
  p.sites = {0};
  p.source = CircuitOp{Gate::X, {0}};

  Schedule ok;
  ok.pulses = {p};
  ok.tau = 1.0;
  ok.t0_min = 0.2;
  ok.layout = lay;
  CHECK_NOTHROW(ok.validate());

  Schedule thin = ok;
  thin.t0_min = 0.3;  // pulse width below the declared minimum
  CHECK_THROWS_AS(thin.validate(), ConfigError);

  Schedule clipped = ok;
  clipped.pulses[0].center = 0.05;  // support leaks past t = 0
  CHECK_THROWS_AS(clipped.validate(), ConfigError);

  Schedule overlapping = ok;
  Pulse q = p;
  q.center = 0.55;  // same site, intersecting supports
  overlapping.pulses.push_back(q);
  CHECK_THROWS_AS(overlapping.validate(), ConfigError);

  // Disjoint sites may overlap in time.
  const HilbertLayout lay2 = HilbertLayout::make(2, 0);
  Schedule parallel = ok;
  parallel.layout = lay2;
  Pulse r = p;
  r.sites = {1};
  parallel.pulses.push_back(r);
  CHECK_NOTHROW(parallel.validate());
}

TEST_CASE("schedule overflow throws a config error") {
  const Code code = Code::repetition(3);
  const RecoveryCircuit circuit =
      build_recovery(code, RecoveryStyle::syndrome_correct);
  CompileOptions opt;
  opt.t0 = 0.1;  // depth * t0 far beyond tau
  opt.tau = 1.0;
  CHECK_THROWS_AS(compile_circuit(circuit, opt), ConfigError);
}

TEST_CASE("speed constraint: measured values match per-shape closed forms") {
  const std::map<PulseShape, double> shape_peak{
      {PulseShape::box, 1.0},
      {PulseShape::raised_cosine, 2.0},
      {PulseShape::truncated_gaussian, gaussian_peak_constant()}};
  const std::map<Gate, double> h_norm{
      {Gate::X, kPi},     {Gate::Z, kPi},    {Gate::H, kPi},
      {Gate::S, kPi / 2}, {Gate::Sdg, kPi / 2}, {Gate::T, kPi / 4},
      {Gate::Tdg, kPi / 4}, {Gate::CNOT, kPi}, {Gate::CZ, kPi}};

  const Code code = Code::repetition(3);
  const RecoveryCircuit circuit =
      build_recovery(code, RecoveryStyle::syndrome_correct);
  CompileOptions opt;
  opt.t0 = 0.02;
  opt.tau = 1.0;
  const double C = 4.0 * kPi;
  for (const auto& [shape, peak] : shape_peak) {
    opt.shape = shape;
    const Schedule s = compile_circuit(circuit, opt);
    const SpeedReport report = check_speed_constraint(s, C);
    CHECK(report.C == doctest::Approx(C));
    CHECK(report.t0_min == doctest::Approx(0.02));
    REQUIRE(report.entries.size() == s.pulses.size());
    for (const PulseSpeedEntry& e : report.entries) {
      const Gate g = s.pulses[e.pulse_index].source.g;
      REQUIRE(h_norm.count(g) == 1);
      const double expect = (peak / 0.02) * 2.0 * h_norm.at(g);
      CHECK(std::abs(e.measured - expect) < 1e-9 * (1.0 + expect));
      CHECK(e.limit == doctest::Approx(C / 0.02));
      CHECK(e.pass == (e.measured <= e.limit * (1.0 + 1e-12)));
    }
    // Raised-cosine full-turn pulses sit exactly at the 4 pi budget; the
    // wider gaussian peak exceeds it; boxes stay well inside.
    if (shape == PulseShape::box) CHECK(report.all_pass);
    if (shape == PulseShape::raised_cosine) CHECK(report.all_pass);
    if (shape == PulseShape::truncated_gaussian) CHECK_FALSE(report.all_pass);
  }
}

TEST_CASE("halving the width doubles every measured speed value") {
  const Code code = Code::repetition(3);
  const RecoveryCircuit circuit =
      build_recovery(code, RecoveryStyle::decode_reencode);
  CompileOptions opt;
  opt.t0 = 0.04;
  opt.tau = 1.0;
  const Schedule wide = compile_circuit(circuit, opt);
  opt.t0 = 0.02;
  const Schedule narrow = compile_circuit(circuit, opt);
  const SpeedReport rw = check_speed_constraint(wide, 4.0 * kPi);
  const SpeedReport rn = check_speed_constraint(narrow, 4.0 * kPi);
  REQUIRE(rw.entries.size() == rn.entries.size());
  for (std::size_t i = 0; i < rw.entries.size(); ++i) {
    CHECK(rn.entries[i].measured ==
          doctest::Approx(2.0 * rw.entries[i].measured).epsilon(1e-9));
  }
}

TEST_CASE("delta-limit collapse preserves order and the total unitary") {
  const Code code = Code::repetition(3);
  const RecoveryCircuit circuit =
      build_recovery(code, RecoveryStyle::syndrome_correct);
  CompileOptions opt;
  opt.t0 = 0.015;
  opt.tau = 1.0;
  opt.alignment = Alignment::packed_end;
  const Schedule s = compile_circuit(circuit, opt);
  const std::vector<TimedGate> gates = delta_limit_schedule(s);
  REQUIRE(gates.size() == s.pulses.size());
  for (std::size_t i = 1; i < gates.size(); ++i)
    CHECK(gates[i].center >= gates[i - 1].center - 1e-15);

  Matrix u = Matrix::Identity(s.layout.dim(), s.layout.dim());
  for (const TimedGate& tg : gates)
    u = embed(gate_matrix(tg.op.g), tg.op.sites, s.layout) * u;
  const Matrix expect = circuit_unitary(expand_macros(circuit.ops), s.layout);
  CHECK(testutil::max_abs(Matrix(u - expect)) < 1e-11);
}

TEST_CASE("schedule serialization round trip is exact") {
  const Code code = Code::repetition(3);
  const RecoveryCircuit circuit =
      build_recovery(code, RecoveryStyle::decode_reencode);
  CompileOptions opt;
  opt.shape = PulseShape::truncated_gaussian;
  opt.t0 = 0.03;
  opt.tau = 1.0;
  opt.alignment = Alignment::packed_split;
  const Schedule s = compile_circuit(circuit, opt);

  const nlohmann::json doc = serialize_schedule(s);
  const Schedule back = parse_schedule(doc);
  CHECK_NOTHROW(back.validate());
  CHECK(back.tau == s.tau);
  CHECK(back.t0_min == s.t0_min);
  CHECK(back.layout == s.layout);
  REQUIRE(back.pulses.size() == s.pulses.size());
  for (std::size_t i = 0; i < s.pulses.size(); ++i) {
    CHECK(back.pulses[i].shape == s.pulses[i].shape);
    CHECK(back.pulses[i].center == s.pulses[i].center);
    CHECK(back.pulses[i].width == s.pulses[i].width);
    CHECK(back.pulses[i].sites == s.pulses[i].sites);
    CHECK(back.pulses[i].slot == s.pulses[i].slot);
    CHECK(back.pulses[i].source.g == s.pulses[i].source.g);
    CHECK(testutil::max_abs(
              Matrix(back.pulses[i].generator - s.pulses[i].generator)) == 0.0);
  }
  CHECK(serialize_schedule(back) == doc);
}
