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
#include <functional>
#include <vector>

#include <nlohmann/json.hpp>

#include "qeclab/bounds.hpp"
#include "qeclab/codes.hpp"
#include "test_util.hpp"

using namespace qeclab;
using testutil::Rng;

namespace {

Schedule compile_code(const Code& code, RecoveryStyle style, double t0,
                      double tau, Alignment align = Alignment::packed_split) {
  CompileOptions opt;
  opt.shape = PulseShape::raised_cosine;
  opt.t0 = t0;
  opt.tau = tau;
  opt.alignment = align;
  return compile_circuit(build_recovery(code, style), opt);
}

Schedule silent_qubit(double tau) {
  Schedule s;
  s.tau = tau;
  s.t0_min = tau / 4.0;
  s.layout = HilbertLayout::make(1, 0);
  return s;
}

std::vector<XSample> sampled(double tau, int n,
                             const std::function<double(double)>& f) {
  std::vector<XSample> out;
  out.reserve(std::size_t(n));
  for (int i = 0; i < n; ++i) {
    const double t = tau * double(i) / double(n - 1);
    out.emplace_back(t, f(t));
  }
  return out;
}

}  // namespace

TEST_CASE("protection profile at the period boundaries") {
  const Code rep = Code::repetition(3);
  const Schedule s =
      compile_code(rep, RecoveryStyle::decode_reencode, 0.05, 1.0);
  const std::vector<Vector> frame = sample_frame(rep);
  // Product codewords sit exactly at one half; states with maximally mixed
  // marginals sit at three quarters.
  const std::vector<double> expect = {0.5, 0.5, 0.75, 0.75};
  for (std::size_t i = 0; i < frame.size(); ++i) {
    CHECK(x_of_t(s, frame[i], 0.0) == doctest::Approx(expect[i]).epsilon(1e-10));
    CHECK(x_of_t(s, frame[i], s.tau) ==
          doctest::Approx(expect[i]).epsilon(1e-9));
  }

  const Code p5 = Code::perfect5();
  const Schedule s5 =
      compile_code(p5, RecoveryStyle::decode_reencode, 0.008, 1.0);
  for (const Vector& psi : sample_frame(p5))
    CHECK(x_of_t(s5, psi, 0.0) == doctest::Approx(0.75).epsilon(1e-10));
}

TEST_CASE("protection collapses to zero while the data is parked") {
  const Schedule s = compile_code(Code::repetition(3),
                                  RecoveryStyle::decode_reencode, 0.05, 1.0,
                                  Alignment::packed_split);
  const std::vector<Vector> frame = sample_frame(Code::repetition(3));
  CHECK(x_of_t(s, frame[0], 0.5) < 1e-9);  // product state
  CHECK(x_of_t(s, frame[2], 0.5) < 1e-9);  // superposition state
}

TEST_CASE("a bare qubit holds exactly one half of protection") {
  const Schedule s = silent_qubit(1.0);
  Rng rng(77);
  for (int rep = 0; rep < 4; ++rep) {
    const Vector psi = testutil::random_state(2, rng);
    for (const double t : {0.0, 0.33, 1.0})
      CHECK(x_of_t(s, psi, t) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("profile sampling matches pointwise evaluation") {
  const Schedule s = compile_code(Code::repetition(3),
                                  RecoveryStyle::decode_reencode, 0.05, 1.0);
  const Vector psi = sample_frame(Code::repetition(3))[2];
  IntegratorConfig cfg;
  cfg.substeps_per_pulse = 10;
  const std::vector<XSample> prof = x_profile(s, psi, cfg);
  REQUIRE(prof.size() > 20);
  CHECK(prof.front().first == doctest::Approx(0.0));
  CHECK(prof.back().first == doctest::Approx(1.0));
  for (std::size_t i = 0; i < prof.size(); i += 7)
    CHECK(prof[i].second ==
          doctest::Approx(x_of_t(s, psi, prof[i].first)).epsilon(1e-10));

  const std::vector<double> times = {0.0, 0.25, 0.5, 1.0};
  const std::vector<XSample> few = x_profile(s, psi, times);
  REQUIRE(few.size() == times.size());
  for (std::size_t i = 0; i < few.size(); ++i) {
    CHECK(few[i].first == doctest::Approx(times[i]));
    CHECK(few[i].second ==
          doctest::Approx(x_of_t(s, psi, times[i])).epsilon(1e-10));
  }
  CHECK_THROWS_AS(x_profile(s, psi, std::vector<double>{0.5, 0.2}),
                  ConfigError);
  CHECK_THROWS_AS(x_of_t(s, psi, 1.5), ConfigError);
}

TEST_CASE("error lower bound quadrature against closed forms") {
  const double lambda_sq = 0.4;
  const int m = 3;
  const double tau = 1.0;
  const double a = lambda_sq * double(m);

  const auto flat = sampled(tau, 201, [](double) { return 0.65; });
  const double expect_flat = 0.65 * (1.0 - std::exp(-a * tau));
  CHECK(error_lower_bound(flat, lambda_sq, m, tau) ==
        doctest::Approx(expect_flat).epsilon(1e-9));

  const auto ramp = sampled(tau, 201, [&](double t) { return t / tau; });
  const double expect_ramp =
      (1.0 - std::exp(-a * tau)) -
      (1.0 - std::exp(-a * tau) * (1.0 + a * tau)) / (a * tau);
  CHECK(error_lower_bound(ramp, lambda_sq, m, tau) ==
        doctest::Approx(expect_ramp).epsilon(1e-8));

  CHECK_THROWS_AS(error_lower_bound({{0.0, 0.5}}, lambda_sq, m, tau),
                  ConfigError);
  CHECK_THROWS_AS(error_lower_bound(flat, lambda_sq, 0, tau), ConfigError);
  CHECK_THROWS_AS(error_lower_bound(flat, -0.1, m, tau), ConfigError);
  auto off = flat;
  off.back().first = 0.9;  // no longer spans the full period
  CHECK_THROWS_AS(error_lower_bound(off, lambda_sq, m, tau), ConfigError);
}

TEST_CASE("ODE reconstruction accepts an exactly consistent trajectory") {
  const double lambda_sq = 0.4;
  const int m = 5;
  const double a = lambda_sq * double(m);
  const double omega = 2.0 * M_PI;
  const auto x_true = [&](double t) {
    return 0.6 + 0.1 * std::sin(omega * t);
  };
  // E' = a (x - E), E(0) = 0, solved in closed form for the sinusoid.
  const auto e_true = [&](double t) {
    const double den = a * a + omega * omega;
    const double particular =
        a * (a * std::sin(omega * t) - omega * std::cos(omega * t)) / den;
    const double homogeneous = a * omega / den * std::exp(-a * t);
    return 0.6 * (1.0 - std::exp(-a * t)) + 0.1 * (particular + homogeneous);
  };

  const int n = 401;
  std::vector<TrajectoryPoint> traj(n);
  std::vector<XSample> xs(n);
  for (int i = 0; i < n; ++i) {
    const double t = double(i) / double(n - 1);
    traj[std::size_t(i)].t = t;
    traj[std::size_t(i)].fidelity = 1.0 - e_true(t);
    xs[std::size_t(i)] = {t, x_true(t)};
  }

  const OdeReport ok = verify_error_ode(traj, xs, lambda_sq, m);
  CHECK(ok.pass);
  CHECK(ok.points_checked == std::size_t(n - 4));
  CHECK(ok.min_X > 0.45);
  CHECK(std::abs(ok.worst_gap) < 1e-4);  // reconstruction lands on x itself

  // Claiming a higher profile than the dynamics support must fail.
  std::vector<XSample> inflated = xs;
  for (auto& [t, x] : inflated) x += 0.3;
  CHECK_FALSE(verify_error_ode(traj, inflated, lambda_sq, m).pass);

  // A decay profile that implies negative X must fail too.
  std::vector<TrajectoryPoint> shrink(n);
  std::vector<XSample> zeros(n);
  for (int i = 0; i < n; ++i) {
    const double t = double(i) / double(n - 1);
    shrink[std::size_t(i)].t = t;
    shrink[std::size_t(i)].fidelity = 1.0 - 0.5 * std::exp(-3.0 * t);
    zeros[std::size_t(i)] = {t, 0.0};
  }
  const OdeReport bad = verify_error_ode(shrink, zeros, lambda_sq, m);
  CHECK_FALSE(bad.pass);
  CHECK(bad.min_X < -0.01);

  CHECK_THROWS_AS(verify_error_ode(traj, xs, 0.0, m), ConfigError);
  std::vector<XSample> short_xs(xs.begin(), xs.end() - 1);
  CHECK_THROWS_AS(verify_error_ode(traj, short_xs, lambda_sq, m), ConfigError);
}

TEST_CASE("boundary-window derivative check") {
  const double t0 = 0.1, tau = 1.0, C = 1.0;
  // Piecewise-linear profile: slope 2 inside both windows, flat in between.
  const auto mild = sampled(tau, 201, [&](double t) {
    if (t <= 0.1) return 0.5 + 2.0 * t;
    if (t >= 0.9) return 0.5 + 2.0 * (1.0 - t);
    return 0.7;
  });
  const DerivReport ok = derivative_bound_check(mild, t0, tau, C);
  CHECK(ok.limit == doctest::Approx(4.0 * C / t0).epsilon(1e-15));
  CHECK(ok.max_slope == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(ok.pass);

  // A slope past the limit inside a window is flagged...
  const auto steep = sampled(tau, 201, [&](double t) {
    return t <= 0.1 ? 50.0 * t : 5.0;
  });
  const DerivReport fail = derivative_bound_check(steep, t0, tau, C);
  CHECK_FALSE(fail.pass);
  CHECK(fail.max_slope == doctest::Approx(50.0).epsilon(1e-9));

  // ...while arbitrarily steep interior behavior is out of scope.
  const auto interior = sampled(tau, 201, [&](double t) {
    return (t > 0.45 && t < 0.55) ? 60.0 * (t - 0.45) : 0.0;
  });
  CHECK(derivative_bound_check(interior, t0, tau, C).pass);

  CHECK_THROWS_AS(derivative_bound_check(mild, 0.0, tau, C), ConfigError);
}

TEST_CASE("per-period ceiling regimes and their values") {
  const Ceiling small = fidelity_ceiling(3, 0.01, 2.0);
  CHECK(small.regime == Regime::small);
  CHECK(small.value == doctest::Approx(1.0 - 2.0 * 0.03).epsilon(1e-15));

  const Ceiling large = fidelity_ceiling(3, 5.0, 2.0);
  CHECK(large.regime == Regime::large);
  CHECK(large.value == doctest::Approx(0.5));

  const Ceiling mid = fidelity_ceiling(3, 0.2, 0.5);
  CHECK(mid.regime == Regime::crossover);
  CHECK(mid.value == doctest::Approx(1.0 - 0.5 * 0.6).epsilon(1e-15));
  // Deep in the crossover the ceiling clamps at one half.
  CHECK(fidelity_ceiling(3, 0.2, 2.0).value == doctest::Approx(0.5));

  CHECK(fidelity_ceiling(1, 0.1, 1.0).regime == Regime::small);
  CHECK(fidelity_ceiling(1, 10.0, 1.0).regime == Regime::large);

  CHECK(regime_name(Regime::small) == "small");
  CHECK(regime_name(Regime::crossover) == "crossover");
  CHECK(regime_name(Regime::large) == "large");

  CHECK_THROWS_AS(fidelity_ceiling(0, 0.1, 1.0), ConfigError);
  CHECK_THROWS_AS(fidelity_ceiling(3, -0.1, 1.0), ConfigError);
  CHECK_THROWS_AS(fidelity_ceiling(3, 0.1, -1.0), ConfigError);
}

TEST_CASE("sustainable step count and the volume fidelity model") {
  CHECK(t_max_estimate(0.2, 0.05) == doctest::Approx(100.0).epsilon(1e-15));
  CHECK_THROWS_AS(t_max_estimate(0.0, 0.05), ConfigError);

  CHECK(total_fidelity_model(0.1, 0.05, 60.0) ==
        doctest::Approx(std::exp(-0.3)).epsilon(1e-15));
  CHECK(total_fidelity_model(0.1, 0.05, 0.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(total_fidelity_model(-0.1, 0.05, 60.0), ConfigError);
}

TEST_CASE("least-squares line fit") {
  const std::vector<double> xs = {0.0, 1.0, 2.0, 3.0};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(2.0 * x + 1.0);
  const LinearFit exact = linear_fit(xs, ys);
  CHECK(exact.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(exact.intercept == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(exact.r2 == doctest::Approx(1.0).epsilon(1e-12));

  const LinearFit flat = linear_fit(xs, {4.0, 4.0, 4.0, 4.0});
  CHECK(flat.slope == doctest::Approx(0.0));
  CHECK(flat.r2 == doctest::Approx(1.0));  // zero variance is fit perfectly

  const LinearFit noisy = linear_fit(xs, {1.0, 3.2, 4.8, 7.1});
  CHECK(noisy.r2 > 0.9);
  CHECK(noisy.r2 < 1.0);

  CHECK_THROWS_AS(linear_fit({1.0}, {2.0}), ConfigError);
  CHECK_THROWS_AS(linear_fit(xs, {1.0, 2.0}), ConfigError);
  CHECK_THROWS_AS(linear_fit({2.0, 2.0, 2.0}, {1.0, 2.0, 3.0}), ConfigError);
}

TEST_CASE("bound report serialization carries every field") {
  BoundReport r;
  r.x_samples = {{0.0, 0.5}, {1.0, 0.5}};
  r.E_tau_measured = 0.125;
  r.E_tau_lower_bound = 0.118;
  r.q = 4.0;
  r.Mq = 12.0;
  r.regime = Regime::large;
  r.x0 = 0.5;
  r.x_tau = 0.5;
  r.max_derivative_observed = 3.25;
  r.lambda_sq = 40.0;
  r.t0 = 0.1;
  r.tau = 2.5;
  r.m_register = 3;
  r.C = 4.0 * M_PI;
  r.kappa = 4.2;
  r.grid_points = 2;

  const nlohmann::json doc = bound_report_to_json(r);
  CHECK(doc.at("E_tau_measured").get<double>() == doctest::Approx(0.125));
  CHECK(doc.at("E_tau_lower_bound").get<double>() == doctest::Approx(0.118));
  CHECK(doc.at("q").get<double>() == doctest::Approx(4.0));
  CHECK(doc.at("Mq").get<double>() == doctest::Approx(12.0));
  CHECK(doc.at("regime").get<std::string>() == "large");
  CHECK(doc.at("boundary_values").size() == 2);
  CHECK(doc.at("x_samples").size() == 2);
  CHECK(doc.at("m_register").get<int>() == 3);
  CHECK(doc.at("kappa").get<double>() == doctest::Approx(4.2));
  CHECK(doc.at("grid_points").get<int>() == 2);
}
