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

#include "qeclab/bounds.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include "continuous_detail.hpp"

namespace qeclab {

namespace {

// 1 - (1/2) max over register qubits of the largest eigenvalue of the
// replacement channel applied to the propagated frame projector W W^dag,
// computed through the Gram matrix of the frame's row blocks.
double x_from_frame(const Matrix& frame, const HilbertLayout& lay) {
  const std::int64_t dim = lay.dim();
  const std::int64_t cols = frame.cols();
  double worst = 0.0;
  for (int k = 0; k < lay.register_qubits; ++k) {
    const std::int64_t bit = std::int64_t(1) << lay.bit(k);
    Matrix stacked(dim / 2, 2 * cols);  // [rows with bit 0 | rows with bit 1]
    std::int64_t r = 0;
    for (std::int64_t i = 0; i < dim; ++i) {
      if (i & bit) continue;
      stacked.row(r).head(cols) = frame.row(i);
      stacked.row(r).tail(cols) = frame.row(i | bit);
      ++r;
    }
    const Matrix gram = stacked.adjoint() * stacked;
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
    if (es.info() != Eigen::Success)
      throw NumericalError("Gram eigensolve failed in the x profile");
    worst = std::max(worst, es.eigenvalues().maxCoeff());
  }
  return 1.0 - 0.5 * worst;
}

// Incremental frame walker over ascending sample times: partial pulse
// exponentials telescope, so pushing each pulse's integral over the
// advanced span in center order reproduces the exact time-ordered flow.
class FrameWalker {
 public:
  FrameWalker(const Schedule& schedule, const Vector& psi_register)
      : sched_(schedule),
        prop_(schedule),
        frame_(detail::make_frame(schedule.layout, psi_register)) {
    order_.resize(schedule.pulses.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    std::sort(order_.begin(), order_.end(),
              [&](std::size_t a, std::size_t b) {
                const Pulse& pa = schedule.pulses[a];
                const Pulse& pb = schedule.pulses[b];
                if (pa.center != pb.center) return pa.center < pb.center;
                return pa.sites[0] < pb.sites[0];
              });
  }

  // Advances to time t (>= current time); returns true if any gate factor
  // was applied (x can only change in that case).
  bool advance(double t) {
    if (t < cursor_ - 1e-12)
      throw ConfigError("x profile times must be ascending");
    bool moved = false;
    for (std::size_t i : order_) {
      const Pulse& p = sched_.pulses[i];
      if (p.support_hi() <= cursor_ + 1e-15) continue;
      if (p.support_lo() >= t - 1e-15) continue;  // not started yet
      const double theta =
          pulse_integral(p.shape, p.center, p.width, cursor_, t);
      if (theta == 0.0) continue;
      kern::lmul_gate(frame_, prop_.pulse_exp(i, theta), p.sites,
                      sched_.layout);
      moved = true;
    }
    cursor_ = t;
    return moved;
  }

  const Matrix& frame() const { return frame_; }

 private:
  const Schedule& sched_;
  detail::StepPropagator prop_;
  Matrix frame_;
  std::vector<std::size_t> order_;
  double cursor_ = 0.0;
};

}  // namespace

double x_of_t(const Schedule& schedule, const Vector& psi_register,
              double t) {
  if (t < -1e-12 || t > schedule.tau + 1e-12)
    throw ConfigError("x evaluation time outside [0, tau]");
  FrameWalker walker(schedule, psi_register);
  walker.advance(std::clamp(t, 0.0, schedule.tau));
  return x_from_frame(walker.frame(), schedule.layout);
}

std::vector<XSample> x_profile(const Schedule& schedule,
                               const Vector& psi_register,
                               const std::vector<double>& times) {
  FrameWalker walker(schedule, psi_register);
  std::vector<XSample> out;
  out.reserve(times.size());
  double last_x = 0.0;
  bool have = false;
  for (double t : times) {
    if (t < -1e-12 || t > schedule.tau + 1e-12)
      throw ConfigError("x profile time outside [0, tau]");
    const bool moved = walker.advance(std::clamp(t, 0.0, schedule.tau));
    if (moved || !have) {
      last_x = x_from_frame(walker.frame(), schedule.layout);
      have = true;
    }
    out.emplace_back(t, last_x);
  }
  return out;
}

std::vector<XSample> x_profile(const Schedule& schedule,
                               const Vector& psi_register,
                               const IntegratorConfig& config) {
  return x_profile(schedule, psi_register, build_grid(schedule, config));
}

double error_lower_bound(const std::vector<XSample>& x_samples,
                         double lambda_sq, int m_register, double tau) {
  if (x_samples.size() < 2)
    throw ConfigError("error bound needs at least two x samples");
  if (!(lambda_sq >= 0.0) || m_register < 1 || !(tau > 0.0))
    throw ConfigError("error bound parameters out of range");
  if (std::abs(x_samples.front().first) > 1e-9 ||
      std::abs(x_samples.back().first - tau) > 1e-9)
    throw ConfigError("x samples must span [0, tau]");
  const double rate = lambda_sq * double(m_register);
  const auto g = [&](const XSample& s) {
    return s.second * std::exp(-rate * (tau - s.first));
  };
  // Composite Simpson on uniform triples (the grid is uniform inside each
  // pulse window and each gap); trapezoid fallback elsewhere.
  double integral = 0.0;
  std::size_t i = 0;
  while (i + 1 < x_samples.size()) {
    const double h1 = x_samples[i + 1].first - x_samples[i].first;
    if (i + 2 < x_samples.size()) {
      const double h2 = x_samples[i + 2].first - x_samples[i + 1].first;
      if (std::abs(h2 - h1) <= 1e-9 * std::max(h1, h2)) {
        integral += (h1 + h2) / 6.0 *
                    (g(x_samples[i]) + 4.0 * g(x_samples[i + 1]) +
                     g(x_samples[i + 2]));
        i += 2;
        continue;
      }
    }
    integral += h1 / 2.0 * (g(x_samples[i]) + g(x_samples[i + 1]));
    i += 1;
  }
  return rate * integral;
}

OdeReport verify_error_ode(const std::vector<TrajectoryPoint>& trajectory,
                           const std::vector<XSample>& x_samples,
                           double lambda_sq, int m_register) {
  if (trajectory.size() != x_samples.size())
    throw ConfigError("trajectory and x samples must share a grid");
  const double rate = lambda_sq * double(m_register);
  if (!(rate > 0.0))
    throw ConfigError("ODE check needs a positive noise rate");
  const std::size_t n = trajectory.size();
  if (n < 5) throw ConfigError("ODE check needs at least five points");
  std::vector<double> ts(n), es(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(trajectory[i].t - x_samples[i].first) > 1e-9)
      throw ConfigError("trajectory and x samples must share a grid");
    ts[i] = trajectory[i].t;
    es[i] = 1.0 - trajectory[i].fidelity;
  }
  const auto d3 = [&](std::size_t lo, std::size_t mid, std::size_t hi) {
    const double h1 = ts[mid] - ts[lo];
    const double h2 = ts[hi] - ts[mid];
    return -h2 / (h1 * (h1 + h2)) * es[lo] +
           (h2 - h1) / (h1 * h2) * es[mid] +
           h1 / (h2 * (h1 + h2)) * es[hi];
  };
  OdeReport report;
  report.pass = true;
  report.min_X = 1.0;
  report.worst_gap = 1.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double d_narrow = d3(i - 1, i, i + 1);
    const double d_wide = d3(i - 2, i, i + 2);
    // The wide-vs-narrow difference estimates the truncation error of the
    // narrow stencil; refining the step shrinks both together.
    const double slack_d = 10.0 * std::abs(d_narrow - d_wide) +
                           1e-9 * (1.0 + std::abs(d_narrow));
    const double X = es[i] + d_narrow / rate;
    const double slack_X = slack_d / rate + 1e-12;
    report.min_X = std::min(report.min_X, X);
    report.worst_gap = std::min(report.worst_gap, X - x_samples[i].second);
    report.slack = std::max(report.slack, slack_X);
    if (X < -slack_X || X < x_samples[i].second - slack_X)
      report.pass = false;
    ++report.points_checked;
  }
  return report;
}

DerivReport derivative_bound_check(const std::vector<XSample>& x_samples,
                                   double t0_min, double tau, double C) {
  if (!(t0_min > 0.0) || !(tau > 0.0) || !(C > 0.0))
    throw ConfigError("derivative bound parameters out of range");
  DerivReport report;
  report.limit = 4.0 * C / t0_min;
  const auto in_window = [&](double t) {
    return t <= t0_min + 1e-12 || t >= tau - t0_min - 1e-12;
  };
  for (std::size_t i = 0; i + 1 < x_samples.size(); ++i) {
    const auto& [ta, xa] = x_samples[i];
    const auto& [tb, xb] = x_samples[i + 1];
    if (!(in_window(ta) && in_window(tb))) continue;
    const double dt = tb - ta;
    if (dt < 1e-12) continue;
    report.max_slope =
        std::max(report.max_slope, std::abs(xb - xa) / dt);
  }
  report.pass = report.max_slope <= report.limit * (1.0 + 1e-12);
  return report;
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::small: return "small";
    case Regime::crossover: return "crossover";
    case Regime::large: return "large";
  }
  throw ConfigError("unknown regime");
}

Ceiling fidelity_ceiling(int m_register, double q, double kappa) {
  if (m_register < 1) throw ConfigError("register size must be >= 1");
  if (!(q >= 0.0)) throw ConfigError("q must be >= 0");
  if (!(kappa >= 0.0)) throw ConfigError("kappa must be >= 0");
  const double mq = double(m_register) * q;
  Ceiling c;
  if (mq <= 0.1) {
    c.regime = Regime::small;
    c.value = 1.0 - kappa * mq;
  } else if (mq >= 10.0) {
    c.regime = Regime::large;
    c.value = 0.5;
  } else {
    c.regime = Regime::crossover;
    c.value = std::max(0.5, 1.0 - kappa * mq);
  }
  return c;
}

double t_max_estimate(double lambda_sq, double t0_min) {
  if (!(lambda_sq > 0.0) || !(t0_min > 0.0))
    throw ConfigError("step-count estimate needs positive inputs");
  return 1.0 / (lambda_sq * t0_min);
}

double total_fidelity_model(double lambda_sq, double t0, double volume) {
  if (!(lambda_sq >= 0.0) || !(t0 >= 0.0) || !(volume >= 0.0))
    throw ConfigError("fidelity model needs nonnegative inputs");
  return std::exp(-lambda_sq * t0 * volume);
}

LinearFit linear_fit(const std::vector<double>& xs,
                     const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw ConfigError("linear fit needs matching samples (>= 2)");
  const double n = double(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-300)
    throw ConfigError("linear fit is degenerate (constant abscissa)");
  LinearFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double mean_y = sy / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double pred = fit.intercept + fit.slope * xs[i];
    ss_res += (ys[i] - pred) * (ys[i] - pred);
    ss_tot += (ys[i] - mean_y) * (ys[i] - mean_y);
  }
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

nlohmann::json bound_report_to_json(const BoundReport& report) {
  nlohmann::json doc;
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& [t, x] : report.x_samples) samples.push_back({t, x});
  doc["x_samples"] = std::move(samples);
  doc["E_tau_measured"] = report.E_tau_measured;
  doc["E_tau_lower_bound"] = report.E_tau_lower_bound;
  doc["q"] = report.q;
  doc["Mq"] = report.Mq;
  doc["regime"] = regime_name(report.regime);
  doc["boundary_values"] = {report.x0, report.x_tau};
  doc["max_derivative_observed"] = report.max_derivative_observed;
  doc["lambda_sq"] = report.lambda_sq;
  doc["t0"] = report.t0;
  doc["tau"] = report.tau;
  doc["m_register"] = report.m_register;
  doc["C"] = report.C;
  doc["kappa"] = report.kappa;
  doc["grid_points"] = report.grid_points;
  return doc;
}

}  // namespace qeclab
