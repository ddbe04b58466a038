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

#include "qeclab/continuous.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "continuous_detail.hpp"

namespace qeclab {

std::string method_name(Method m) {
  switch (m) {
    case Method::strang: return "strang";
    case Method::splitting4: return "splitting-4";
    case Method::rk4: return "rk4";
  }
  throw ConfigError("unknown integrator");
}

Method method_from_name(const std::string& name) {
  if (name == "strang") return Method::strang;
  if (name == "splitting-4") return Method::splitting4;
  if (name == "rk4") return Method::rk4;
  throw ConfigError("unknown integrator '" + name + "'");
}

// ---------------------------------------------------------------------------
// Grid and propagator internals
// ---------------------------------------------------------------------------

namespace detail {

namespace {
int rounded_even(int n) { return n + (n % 2); }
}  // namespace

std::vector<double> build_grid_impl(const Schedule& schedule,
                                    const IntegratorConfig& config,
                                    int refine) {
  if (config.gap_substeps < 1)
    throw ConfigError("gap substep count must be >= 1");
  if (config.record_stride < 1)
    throw ConfigError("record stride must be >= 1");
  if (config.positivity_check_stride < 1)
    throw ConfigError("positivity check stride must be >= 1");
  if (refine < 1) throw ConfigError("grid refinement must be >= 1");
  if (config.substeps_per_pulse < 10)
    throw ConfigError("substeps_per_pulse must be >= 10");

  double min_width = schedule.tau;
  for (const Pulse& p : schedule.pulses)
    min_width = std::min(min_width, p.width);
  const double base_step =
      config.step_size > 0.0 ? config.step_size
                             : min_width / double(config.substeps_per_pulse);
  for (const Pulse& p : schedule.pulses)
    if (base_step > p.width / 10.0 + kGridEps)
      throw ConfigError(
          "integration step must resolve every pulse with at least 10 "
          "steps");
  const double step = base_step / double(refine);

  // Distinct support windows, merged if they ever overlap.
  std::vector<std::pair<double, double>> windows;
  for (const Pulse& p : schedule.pulses)
    windows.emplace_back(p.support_lo(), p.support_hi());
  std::sort(windows.begin(), windows.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& w : windows) {
    if (!merged.empty() && w.first < merged.back().second - kGridEps)
      merged.back().second = std::max(merged.back().second, w.second);
    else if (!merged.empty() && std::abs(w.first - merged.back().first) <
                                    kGridEps &&
             std::abs(w.second - merged.back().second) < kGridEps)
      continue;  // same slot, same window
    else
      merged.push_back(w);
  }

  std::vector<double> knots;
  knots.push_back(0.0);
  const auto emit_span = [&](double lo, double hi, int n) {
    for (int i = 1; i <= n; ++i)
      knots.push_back(lo + (hi - lo) * double(i) / double(n));
  };
  const int gap_n =
      std::max(2, rounded_even(config.gap_substeps * refine));
  double cursor = 0.0;
  for (const auto& [lo, hi] : merged) {
    const double wlo = std::max(0.0, lo);
    const double whi = std::min(schedule.tau, hi);
    if (wlo > cursor + kGridEps) emit_span(cursor, wlo, gap_n);
    const int n = rounded_even(
        std::max(2, int(std::ceil((whi - wlo) / step - kGridEps))));
    emit_span(wlo, whi, n);
    cursor = whi;
  }
  if (schedule.tau > cursor + kGridEps)
    emit_span(cursor, schedule.tau, gap_n);
  knots.back() = schedule.tau;

  std::vector<double> out;
  out.reserve(knots.size());
  for (double t : knots)
    if (out.empty() || t > out.back() + kGridEps) out.push_back(t);
  return out;
}

StepPropagator::StepPropagator(const Schedule& schedule)
    : schedule_(&schedule) {
  cache_.reserve(schedule.pulses.size());
  for (const Pulse& p : schedule.pulses) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(p.generator);
    if (es.info() != Eigen::Success)
      throw NumericalError("pulse generator eigendecomposition failed");
    cache_.push_back(Cache{es.eigenvectors(), es.eigenvalues()});
  }
}

std::vector<std::size_t> StepPropagator::active(double lo, double hi) const {
  const double mid = 0.5 * (lo + hi);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < schedule_->pulses.size(); ++i) {
    const Pulse& p = schedule_->pulses[i];
    if (p.support_lo() < mid && mid < p.support_hi()) idx.push_back(i);
  }
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const Pulse& pa = schedule_->pulses[a];
    const Pulse& pb = schedule_->pulses[b];
    if (pa.slot != pb.slot) return pa.slot < pb.slot;
    return pa.sites[0] < pb.sites[0];
  });
  return idx;
}

Matrix StepPropagator::pulse_exp(std::size_t index, double theta) const {
  const Cache& c = cache_[index];
  Vector phases(c.phases.size());
  for (Eigen::Index i = 0; i < c.phases.size(); ++i)
    phases[i] = std::polar(1.0, -theta * c.phases[i]);
  return c.vectors * phases.asDiagonal() * c.vectors.adjoint();
}

void StepPropagator::lmul_interval(Matrix& a, double lo, double hi) const {
  for (std::size_t i : active(std::min(lo, hi), std::max(lo, hi))) {
    const Pulse& p = schedule_->pulses[i];
    const double theta = pulse_integral(p.shape, p.center, p.width, lo, hi);
    if (theta == 0.0) continue;
    kern::lmul_gate(a, pulse_exp(i, theta), p.sites, schedule_->layout);
  }
}

void StepPropagator::conj_interval(Matrix& rho, double lo, double hi) const {
  for (std::size_t i : active(std::min(lo, hi), std::max(lo, hi))) {
    const Pulse& p = schedule_->pulses[i];
    const double theta = pulse_integral(p.shape, p.center, p.width, lo, hi);
    if (theta == 0.0) continue;
    kern::conj_gate(rho, pulse_exp(i, theta), p.sites, schedule_->layout);
  }
}

MinEigMonitor::MinEigMonitor(std::int64_t dim, int exact_dim)
    : dim_(dim), exact_dim_(exact_dim) {}

double MinEigMonitor::estimate(const Matrix& rho) {
  if (dim_ <= exact_dim_) return min_eigenvalue(rho);
  const double shift = 2.0;
  if (!warm_) {
    v_ = Vector(dim_);
    for (std::int64_t i = 0; i < dim_; ++i)
      v_[i] = 1.0 + 1e-3 * double((std::uint64_t(i) * 2654435761ull) % 97) /
                        97.0;
    v_.normalize();
  }
  const int cap = warm_ ? 60 : 200;
  double lambda = 0.0;
  for (int it = 0; it < cap; ++it) {
    Vector y = shift * v_ - rho * v_;
    lambda = std::real(cx(v_.adjoint() * y));
    const double resid = (y - lambda * v_).norm();
    const double nrm = y.norm();
    if (!(nrm > 0.0)) break;
    v_ = y / nrm;
    if (resid < 1e-10) break;
  }
  warm_ = true;
  // Rayleigh quotient underestimates lambda_max(shift*I - rho), so this is
  // an upper bound on the smallest eigenvalue of rho.
  return shift - lambda;
}

std::pair<double, double> spectral_norm_est(const Matrix& m, int exact_dim) {
  if (m.rows() <= exact_dim && m.cols() <= exact_dim) {
    const double s = operator_norm(m);
    return {s, s};
  }
  Vector v(m.cols());
  for (Eigen::Index i = 0; i < m.cols(); ++i)
    v[i] = 1.0 + 1e-3 * double((std::uint64_t(i) * 2654435761ull) % 97) / 97.0;
  v.normalize();
  double lambda = 0.0;
  double resid = 0.0;
  for (int it = 0; it < 300; ++it) {
    Vector y = m.adjoint() * (m * v);
    lambda = std::real(cx(v.adjoint() * y));
    resid = (y - lambda * v).norm();
    const double nrm = y.norm();
    if (!(nrm > 0.0)) {
      lambda = 0.0;
      resid = 0.0;
      break;
    }
    v = y / nrm;
    if (resid <= 1e-12 * std::max(1.0, lambda)) break;
  }
  const double est = std::sqrt(std::max(0.0, lambda));
  const double upper = std::sqrt(std::max(0.0, lambda + resid));
  return {est, upper};
}

Matrix make_frame(const HilbertLayout& lay, const Vector& psi_register) {
  Matrix w = Matrix::Zero(lay.dim(), lay.ancilla_dim());
  for (std::int64_t a = 0; a < lay.ancilla_dim(); ++a)
    for (std::int64_t r = 0; r < lay.register_dim(); ++r)
      w(r * lay.ancilla_dim() + a, a) = psi_register[r];
  return w;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Master-equation engine
// ---------------------------------------------------------------------------

std::vector<double> build_grid(const Schedule& schedule,
                               const IntegratorConfig& config) {
  return detail::build_grid_impl(schedule, config, 1);
}

namespace {

using detail::make_frame;

double frame_overlap(const Matrix& frame, const Matrix& rho) {
  const cx f = (frame.adjoint() * rho * frame).trace();
  if (std::abs(f.imag()) > tol().fidelity_imag)
    throw NumericalError("fidelity acquired an imaginary part");
  return f.real();
}

class Engine {
 public:
  Engine(const Schedule& schedule, double lambda_sq,
         const IntegratorConfig& config)
      : sched_(schedule),
        lambda_sq_(lambda_sq),
        cfg_(config),
        prop_(schedule),
        grid_(detail::build_grid_impl(schedule, config, 1)),
        mineig_(schedule.layout.dim()) {
    if (!(lambda_sq >= 0.0))
      throw ConfigError("coupling rate must be >= 0");
  }

  void init_state(const Vector& psi_register) {
    const HilbertLayout& lay = sched_.layout;
    if (psi_register.size() != lay.register_dim())
      throw ConfigError("state dimension does not match the register");
    if (std::abs(psi_register.norm() - 1.0) > tol().state_norm)
      throw ConfigError("initial state is not normalized");
    const Vector full = with_fresh_ancillas(lay, psi_register);
    rho_ = full * full.adjoint();
    frame0_ = make_frame(lay, psi_register);
    min_seen_ = 1.0;
    max_drift_ = 0.0;
  }

  // Advances rho across one period. If `traj` is given, records points on
  // the record stride (period-local times).
  void run_period(Trajectory* traj) {
    frame_ = frame0_;
    std::size_t since_check = 0;
    if (traj) record(traj, 0.0);
    for (std::size_t j = 0; j + 1 < grid_.size(); ++j) {
      step(grid_[j], grid_[j + 1]);
      const bool last = j + 2 == grid_.size();
      if (++since_check >= std::size_t(cfg_.positivity_check_stride) ||
          last) {
        since_check = 0;
        monitor(grid_[j + 1]);
      }
      if (traj && ((j + 1) % std::size_t(cfg_.record_stride) == 0 || last))
        record(traj, grid_[j + 1]);
    }
  }

  void refresh_ancillas() {
    const HilbertLayout& lay = sched_.layout;
    const Matrix reg = trace_out_ancillas(rho_, lay);
    Matrix anc = Matrix::Zero(lay.ancilla_dim(), lay.ancilla_dim());
    anc(0, 0) = 1.0;
    rho_ = tensor_product(reg, anc);
  }

  double physical_fidelity() const { return frame_overlap(frame0_, rho_); }
  double frame_fidelity() const { return frame_overlap(frame_, rho_); }
  const Matrix& rho() const { return rho_; }
  double max_drift() const { return max_drift_; }
  double min_seen() const { return min_seen_; }

 private:
  void dissipate(double span) {
    if (lambda_sq_ == 0.0 || span == 0.0) return;
    const double w = 1.0 - std::exp(-lambda_sq_ * span);
    for (int q = 0; q < sched_.layout.register_qubits; ++q)
      kern::replace_mix(rho_, q, w, sched_.layout);
  }

  void sub_strang(double a, double b) {
    dissipate((b - a) / 2.0);
    prop_.conj_interval(rho_, a, b);
    prop_.lmul_interval(frame_, a, b);
    dissipate((b - a) / 2.0);
  }

  Matrix rhs(const Matrix& r, double t,
             const std::vector<std::size_t>& active) const {
    const HilbertLayout& lay = sched_.layout;
    Matrix z = Matrix::Zero(r.rows(), r.cols());
    for (std::size_t i : active) {
      const Pulse& p = sched_.pulses[i];
      const double f = pulse_value(p.shape, p.center, p.width, t);
      if (f == 0.0) continue;
      Matrix tmp = r;
      kern::lmul_gate(tmp, p.generator, p.sites, lay);
      z += f * tmp;
    }
    Matrix out = cx(0.0, -1.0) * (z - z.adjoint());
    if (lambda_sq_ > 0.0)
      for (int q = 0; q < lay.register_qubits; ++q) {
        Matrix tmp = r;
        kern::replace_mix(tmp, q, 1.0, lay);
        out += lambda_sq_ * (tmp - r);
      }
    return out;
  }

  void step(double a, double b) {
    switch (cfg_.method) {
      case Method::strang:
        sub_strang(a, b);
        return;
      case Method::splitting4: {
        // Triple-jump composition: two forward second-order sub-steps
        // around one backward sub-step. The backward leg makes the
        // dissipator weight negative (linear, not completely positive);
        // positivity of the full state is monitored outside.
        const double w1 = 1.0 / (2.0 - std::cbrt(2.0));
        const double delta = b - a;
        const double t1 = a + w1 * delta;
        const double t2 = b - w1 * delta;
        sub_strang(a, t1);
        sub_strang(t1, t2);
        sub_strang(t2, b);
        return;
      }
      case Method::rk4: {
        const double h = b - a;
        const auto act = prop_.active(a, b);
        const Matrix k1 = rhs(rho_, a, act);
        const Matrix k2 = rhs(rho_ + (h / 2.0) * k1, a + h / 2.0, act);
        const Matrix k3 = rhs(rho_ + (h / 2.0) * k2, a + h / 2.0, act);
        const Matrix k4 = rhs(rho_ + h * k3, b, act);
        rho_ += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        prop_.lmul_interval(frame_, a, b);
        return;
      }
    }
    throw ConfigError("unknown integrator");
  }

  void monitor(double t) {
    const double tr = std::real(rho_.trace());
    max_drift_ = std::max(max_drift_, std::abs(tr - 1.0));
    if (max_drift_ > 1e-7)
      throw NumericalError("integrator trace drift at t=" +
                           std::to_string(t));
    const double est = mineig_.estimate(rho_);
    min_seen_ = std::min(min_seen_, est);
    if (est < -tol().positivity_slack)
      throw NumericalError("integrator positivity failure at t=" +
                           std::to_string(t));
  }

  void record(Trajectory* traj, double t) {
    TrajectoryPoint pt;
    pt.t = t;
    pt.fidelity = frame_fidelity();
    pt.trace = std::real(rho_.trace());
    pt.purity = rho_.squaredNorm();
    pt.min_eig = min_seen_;
    traj->points.push_back(pt);
  }

  const Schedule& sched_;
  double lambda_sq_;
  IntegratorConfig cfg_;
  detail::StepPropagator prop_;
  std::vector<double> grid_;
  detail::MinEigMonitor mineig_;
  Matrix rho_;
  Matrix frame0_;
  Matrix frame_;
  double max_drift_ = 0.0;
  double min_seen_ = 1.0;
};

}  // namespace

Trajectory integrate_master_equation(const Schedule& schedule,
                                     double lambda_sq,
                                     const Vector& psi_register,
                                     const IntegratorConfig& config) {
  Engine engine(schedule, lambda_sq, config);
  engine.init_state(psi_register);
  Trajectory traj;
  engine.run_period(&traj);
  traj.final_rho = engine.rho();
  traj.final_fidelity = engine.frame_fidelity();
  traj.final_fidelity_physical = engine.physical_fidelity();
  traj.max_trace_drift = engine.max_drift();
  traj.min_eig_seen = engine.min_seen();
  return traj;
}

std::vector<double> run_periods(const Schedule& schedule, double lambda_sq,
                                const Vector& psi_register, int periods,
                                const IntegratorConfig& config) {
  if (periods < 0) throw ConfigError("period count must be >= 0");
  Engine engine(schedule, lambda_sq, config);
  engine.init_state(psi_register);
  std::vector<double> out;
  out.reserve(std::size_t(periods));
  for (int p = 0; p < periods; ++p) {
    engine.run_period(nullptr);
    out.push_back(engine.physical_fidelity());
    engine.refresh_ancillas();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Noiseless propagator and interaction-frame channels
// ---------------------------------------------------------------------------

Matrix hamiltonian_propagator(const Schedule& schedule, double s, double t) {
  const double eps = 1e-9;
  if (s < -eps || s > schedule.tau + eps || t < -eps ||
      t > schedule.tau + eps)
    throw ConfigError("propagator endpoints outside [0, tau]");
  const double lo = std::min(s, t);
  const double hi = std::max(s, t);
  std::vector<std::size_t> order(schedule.pulses.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Pulse& pa = schedule.pulses[a];
    const Pulse& pb = schedule.pulses[b];
    if (pa.center != pb.center) return pa.center < pb.center;
    return pa.sites[0] < pb.sites[0];
  });
  const detail::StepPropagator prop(schedule);
  Matrix u = Matrix::Identity(schedule.layout.dim(), schedule.layout.dim());
  for (std::size_t i : order) {
    const Pulse& p = schedule.pulses[i];
    const double theta = pulse_integral(p.shape, p.center, p.width, lo, hi);
    if (theta == 0.0) continue;
    kern::lmul_gate(u, prop.pulse_exp(i, theta), p.sites, schedule.layout);
  }
  if (s > t) return u.adjoint();
  return u;
}

std::vector<Matrix> interaction_phi(const Schedule& schedule, int k,
                                    double t) {
  if (k < 0 || k >= schedule.layout.register_qubits)
    throw ConfigError("interaction channel qubit must be a register qubit");
  const Matrix u = hamiltonian_propagator(schedule, 0.0, t);
  std::vector<Matrix> out;
  for (const Matrix& kr :
       ReplacementChannel::make(schedule.layout, k).kraus())
    out.push_back(u.adjoint() * kr * u);
  return out;
}

// ---------------------------------------------------------------------------
// Series-expansion fidelity
// ---------------------------------------------------------------------------

namespace {

double poisson_tail(double a, int n) {
  // e^{-a} sum_{k > n} a^k / k!
  double term = std::exp(-a);
  double cum = term;
  for (int k = 1; k <= n; ++k) {
    term *= a / double(k);
    cum += term;
  }
  return std::max(0.0, 1.0 - cum);
}

// sum_k Phi_k(A) over register qubits.
Matrix sum_phi(const Matrix& a, const HilbertLayout& lay) {
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  for (int q = 0; q < lay.register_qubits; ++q) {
    Matrix tmp = a;
    kern::replace_mix(tmp, q, 1.0, lay);
    out += tmp;
  }
  return out;
}

// Trapezoid walk of the interaction series, carried in the lab frame so
// every update is a cheap gate push: levels evolve under the pulses while
// each one sources the next through the replacement channels.
double dyson_walk(const Schedule& schedule, double lambda_sq,
                  const Vector& psi_register, double t, int order,
                  const IntegratorConfig& config, int refine) {
  const HilbertLayout& lay = schedule.layout;
  const detail::StepPropagator prop(schedule);
  std::vector<double> grid;
  for (double knot : detail::build_grid_impl(schedule, config, refine)) {
    if (knot < t - detail::kGridEps)
      grid.push_back(knot);
    else
      break;
  }
  grid.push_back(t);

  const Vector full = with_fresh_ancillas(lay, psi_register);
  std::vector<Matrix> levels(std::size_t(order) + 1);
  std::vector<Matrix> prev_src(std::size_t(order) + 1);
  levels[0] = full * full.adjoint();
  for (int n = 1; n <= order; ++n)
    levels[std::size_t(n)] = Matrix::Zero(lay.dim(), lay.dim());
  prev_src[0] = Matrix();  // unused
  for (int n = 1; n <= order; ++n)
    prev_src[std::size_t(n)] =
        n == 1 ? sum_phi(levels[0], lay)
               : Matrix::Zero(lay.dim(), lay.dim());
  Matrix frame = make_frame(lay, psi_register);

  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    const double a = grid[j];
    const double b = grid[j + 1];
    const double delta = b - a;
    for (int n = 0; n <= order; ++n)
      prop.conj_interval(levels[std::size_t(n)], a, b);
    for (int n = 1; n <= order; ++n)
      prop.conj_interval(prev_src[std::size_t(n)], a, b);
    prop.lmul_interval(frame, a, b);
    for (int n = 1; n <= order; ++n) {
      Matrix src = sum_phi(levels[std::size_t(n - 1)], lay);
      levels[std::size_t(n)] +=
          (delta / 2.0) * (prev_src[std::size_t(n)] + src);
      prev_src[std::size_t(n)] = std::move(src);
    }
  }

  const double prefactor =
      std::exp(-lambda_sq * double(lay.register_qubits) * t);
  double series = 0.0;
  double coeff = 1.0;
  for (int n = 0; n <= order; ++n) {
    series += coeff * frame_overlap(frame, levels[std::size_t(n)]);
    coeff *= lambda_sq;
  }
  return prefactor * series;
}

}  // namespace

DysonResult dyson_fidelity(const Schedule& schedule, double lambda_sq,
                           const Vector& psi_register, double t, int order,
                           double tail_tolerance,
                           const IntegratorConfig& config) {
  if (!(lambda_sq >= 0.0)) throw ConfigError("coupling rate must be >= 0");
  if (!(t > 0.0) || t > schedule.tau + 1e-9)
    throw ConfigError("series time must lie in (0, tau]");
  if (!(tail_tolerance > 0.0))
    throw ConfigError("tail tolerance must be positive");
  const double a = lambda_sq * double(schedule.layout.register_qubits) * t;

  DysonResult result;
  result.order_required = [&] {
    for (int n = 0; n <= 64; ++n)
      if (poisson_tail(a, n) <= tail_tolerance) return n;
    throw ConfigError(
        "series truncation cannot meet the tail tolerance by order 64; "
        "reduce lambda_sq * M * t");
  }();
  result.order_used = order > 0 ? order : result.order_required;
  if (result.order_used > 32)
    throw ConfigError("series order above 32 is not supported");
  result.tail_bound = poisson_tail(a, result.order_used);

  // Trapezoid values on the grid and its 2x refinement; the Richardson
  // combination cancels the leading quadrature error.
  const double f1 = dyson_walk(schedule, lambda_sq, psi_register, t,
                               result.order_used, config, 1);
  const double f2 = dyson_walk(schedule, lambda_sq, psi_register, t,
                               result.order_used, config, 2);
  result.fidelity = (4.0 * f2 - f1) / 3.0;
  return result;
}

// ---------------------------------------------------------------------------
// Recovery-condition check
// ---------------------------------------------------------------------------

RecoveryConditionReport check_recovery_condition(const Schedule& schedule) {
  const HilbertLayout& lay = schedule.layout;
  const Matrix u = hamiltonian_propagator(schedule, 0.0, schedule.tau);
  std::vector<int> reg_sites;
  for (int q = 0; q < lay.register_qubits; ++q) reg_sites.push_back(q);
  const Matrix v_raw =
      partial_trace(u, lay, reg_sites) / double(lay.register_dim());
  Eigen::JacobiSVD<Matrix> svd(v_raw,
                               Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Matrix v_hat = svd.matrixU() * svd.matrixV().adjoint();
  const Matrix b = tensor_product(
      Matrix(Matrix::Identity(lay.register_dim(), lay.register_dim())),
      v_hat);
  const cx z = b.conjugate().cwiseProduct(u).sum();
  RecoveryConditionReport report;
  report.phase = std::abs(z) > 1e-12 ? std::arg(z) : 0.0;
  const Matrix diff = u - std::polar(1.0, report.phase) * b;
  const auto [est, upper] = detail::spectral_norm_est(diff);
  report.residual = est;
  report.pass = upper <= tol().recovery_residual;
  report.ancilla_unitary = v_hat;
  return report;
}

}  // namespace qeclab
