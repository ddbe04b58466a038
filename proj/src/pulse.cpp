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

#include "qeclab/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

namespace qeclab {

namespace {
constexpr double kTimeEps = 1e-12;
const double kTgZ = std::erf(3.0 / std::sqrt(2.0));  // support mass kept
}  // namespace

std::string shape_name(PulseShape s) {
  switch (s) {
    case PulseShape::box: return "box";
    case PulseShape::raised_cosine: return "raised-cosine";
    case PulseShape::truncated_gaussian: return "truncated-gaussian";
  }
  throw ConfigError("unknown pulse shape");
}

PulseShape shape_from_name(const std::string& name) {
  if (name == "box") return PulseShape::box;
  if (name == "raised-cosine") return PulseShape::raised_cosine;
  if (name == "truncated-gaussian") return PulseShape::truncated_gaussian;
  throw ConfigError("unknown pulse shape '" + name + "'");
}

double pulse_value(PulseShape shape, double c, double t0, double t) {
  if (!(t0 > 0.0)) throw ConfigError("pulse width must be positive");
  const double u = t - c;
  if (std::abs(u) > t0 / 2.0) return 0.0;
  switch (shape) {
    case PulseShape::box:
      return 1.0 / t0;
    case PulseShape::raised_cosine:
      return (1.0 + std::cos(2.0 * M_PI * u / t0)) / t0;
    case PulseShape::truncated_gaussian: {
      const double sigma = t0 / 6.0;
      const double v = u / sigma;
      return std::exp(-0.5 * v * v) / (sigma * std::sqrt(2.0 * M_PI) * kTgZ);
    }
  }
  throw ConfigError("unknown pulse shape");
}

double pulse_integral(PulseShape shape, double c, double t0, double a,
                      double b) {
  if (!(t0 > 0.0)) throw ConfigError("pulse width must be positive");
  if (a > b) return -pulse_integral(shape, c, t0, b, a);
  const double lo = std::max(a, c - t0 / 2.0);
  const double hi = std::min(b, c + t0 / 2.0);
  if (hi <= lo) return 0.0;
  switch (shape) {
    case PulseShape::box:
      return (hi - lo) / t0;
    case PulseShape::raised_cosine: {
      const auto prim = [&](double x) {
        const double u = x - c;
        return u / t0 + std::sin(2.0 * M_PI * u / t0) / (2.0 * M_PI);
      };
      return prim(hi) - prim(lo);
    }
    case PulseShape::truncated_gaussian: {
      const double sigma = t0 / 6.0;
      const auto prim = [&](double x) {
        return std::erf((x - c) / (sigma * std::sqrt(2.0)));
      };
      return (prim(hi) - prim(lo)) / (2.0 * kTgZ);
    }
  }
  throw ConfigError("unknown pulse shape");
}

double pulse_sup(PulseShape shape, double t0) {
  if (!(t0 > 0.0)) throw ConfigError("pulse width must be positive");
  switch (shape) {
    case PulseShape::box:
      return 1.0 / t0;
    case PulseShape::raised_cosine:
      return 2.0 / t0;
    case PulseShape::truncated_gaussian:
      return 6.0 / (t0 * std::sqrt(2.0 * M_PI) * kTgZ);
  }
  throw ConfigError("unknown pulse shape");
}

void Schedule::validate() const {
  if (!(tau > 0.0)) throw ConfigError("schedule period must be positive");
  if (!(t0_min > 0.0))
    throw ConfigError("schedule minimum pulse width must be positive");
  for (const Pulse& p : pulses) {
    if (p.width < t0_min - kTimeEps)
      throw ConfigError("pulse width below the minimum width");
    if (p.support_lo() < -kTimeEps || p.support_hi() > tau + kTimeEps)
      throw ConfigError("pulse support leaves [0, tau]");
    if (p.sites.empty() || p.sites.size() > 2)
      throw ConfigError("pulses act on one or two qubits");
    for (int s : p.sites)
      if (s < 0 || s >= layout.total_qubits())
        throw ConfigError("pulse site outside the layout");
    const auto d = std::int64_t(1) << p.sites.size();
    if (p.generator.rows() != d || p.generator.cols() != d)
      throw ConfigError("pulse generator dimension mismatch");
  }
  for (std::size_t i = 0; i < pulses.size(); ++i)
    for (std::size_t j = i + 1; j < pulses.size(); ++j) {
      const Pulse& a = pulses[i];
      const Pulse& b = pulses[j];
      const bool share = std::any_of(
          a.sites.begin(), a.sites.end(), [&](int s) {
            return std::find(b.sites.begin(), b.sites.end(), s) !=
                   b.sites.end();
          });
      if (!share) continue;
      const double gap = std::abs(a.center - b.center);
      if (gap + kTimeEps < (a.width + b.width) / 2.0)
        throw ConfigError(
            "pulses sharing a qubit overlap in time; scheduling bug");
    }
}

std::string alignment_name(Alignment a) {
  switch (a) {
    case Alignment::uniform: return "uniform";
    case Alignment::packed_split: return "packed-split";
    case Alignment::packed_end: return "packed-end";
  }
  throw ConfigError("unknown alignment");
}

Alignment alignment_from_name(const std::string& name) {
  if (name == "uniform") return Alignment::uniform;
  if (name == "packed-split") return Alignment::packed_split;
  if (name == "packed-end") return Alignment::packed_end;
  throw ConfigError("unknown alignment '" + name + "'");
}

Matrix gate_generator(Gate g) {
  switch (g) {
    case Gate::X:
    case Gate::Z:
    case Gate::H:
    case Gate::CNOT:
    case Gate::CZ:
    case Gate::CCX: {
      // These gates are Hermitian unitaries (eigenvalues +-1), so the
      // principal generator is (pi/2)(I - U): zero on the +1 eigenspace,
      // phase pi on the -1 eigenspace.
      const Matrix u = gate_matrix(g);
      return (M_PI / 2.0) *
             (Matrix::Identity(u.rows(), u.cols()) - u);
    }
    case Gate::S:
    case Gate::Sdg:
    case Gate::T:
    case Gate::Tdg: {
      // Diagonal gates: take the principal phase of each diagonal entry.
      const Matrix u = gate_matrix(g);
      Matrix h = Matrix::Zero(u.rows(), u.cols());
      for (Eigen::Index i = 0; i < u.rows(); ++i)
        h(i, i) = -std::arg(u(i, i));
      return h;
    }
    case Gate::W5:
    case Gate::W5INV:
      throw ConfigError(
          "macro gates have no pulse generator; expand them first");
  }
  throw ConfigError("unknown gate");
}

namespace {

// Greedy earliest-start layering: each op lands in the first slot where all
// of its qubits are free. Returns per-op slot indices; depth via max+1.
std::vector<int> layer_ops(const std::vector<CircuitOp>& ops, int qubits,
                           int* depth_out) {
  std::vector<int> next_free(std::size_t(qubits), 0);
  std::vector<int> slots;
  slots.reserve(ops.size());
  int depth = 0;
  for (const CircuitOp& op : ops) {
    int slot = 0;
    for (int s : op.sites) {
      if (s < 0 || s >= qubits)
        throw ConfigError("circuit op site outside the layout");
      slot = std::max(slot, next_free[std::size_t(s)]);
    }
    for (int s : op.sites) next_free[std::size_t(s)] = slot + 1;
    slots.push_back(slot);
    depth = std::max(depth, slot + 1);
  }
  if (depth_out) *depth_out = depth;
  return slots;
}

void require_fit(int slots, double t0, double tau) {
  if (double(slots) * t0 > tau + kTimeEps)
    throw ConfigError(
        "schedule overflow: " + std::to_string(slots) + " slots of width " +
        std::to_string(t0) + " do not fit in a period of " +
        std::to_string(tau));
}

}  // namespace

Schedule compile_circuit(const RecoveryCircuit& circuit,
                         const CompileOptions& opt) {
  if (!(opt.t0 > 0.0)) throw ConfigError("pulse width must be positive");
  if (!(opt.tau > 0.0)) throw ConfigError("period must be positive");
  const double t0_min = opt.t0_min > 0.0 ? opt.t0_min : opt.t0;
  if (opt.t0 < t0_min - kTimeEps)
    throw ConfigError("pulse width below the minimum width");

  Schedule sched;
  sched.tau = opt.tau;
  sched.t0_min = t0_min;
  sched.layout = circuit.layout();
  const int qubits = sched.layout.total_qubits();

  const std::size_t cut = std::min(circuit.head_count, circuit.ops.size());
  const std::vector<CircuitOp> head = expand_macros(
      std::vector<CircuitOp>(circuit.ops.begin(),
                             circuit.ops.begin() + std::ptrdiff_t(cut)));
  const std::vector<CircuitOp> tail = expand_macros(
      std::vector<CircuitOp>(circuit.ops.begin() + std::ptrdiff_t(cut),
                             circuit.ops.end()));

  // Section layout: (ops, slot index, absolute center of slot 0, stride).
  struct Section {
    std::vector<CircuitOp> ops;
    std::vector<int> slots;
    double first_center = 0.0;
    double stride = 0.0;
    int slot_base = 0;
  };
  std::vector<Section> sections;

  switch (opt.alignment) {
    case Alignment::uniform: {
      Section s;
      s.ops = head;
      s.ops.insert(s.ops.end(), tail.begin(), tail.end());
      int depth = 0;
      s.slots = layer_ops(s.ops, qubits, &depth);
      require_fit(depth, opt.t0, opt.tau);
      s.stride = depth > 0 ? opt.tau / double(depth) : 0.0;
      s.first_center = s.stride / 2.0;
      sections.push_back(std::move(s));
      break;
    }
    case Alignment::packed_end: {
      Section s;
      s.ops = head;
      s.ops.insert(s.ops.end(), tail.begin(), tail.end());
      int depth = 0;
      s.slots = layer_ops(s.ops, qubits, &depth);
      require_fit(depth, opt.t0, opt.tau);
      s.stride = opt.t0;
      s.first_center = opt.tau - (double(depth) - 0.5) * opt.t0;
      sections.push_back(std::move(s));
      break;
    }
    case Alignment::packed_split: {
      Section h, t;
      int dh = 0, dt = 0;
      h.ops = head;
      h.slots = layer_ops(h.ops, qubits, &dh);
      t.ops = tail;
      t.slots = layer_ops(t.ops, qubits, &dt);
      require_fit(dh + dt, opt.t0, opt.tau);
      h.stride = opt.t0;
      h.first_center = opt.t0 / 2.0;
      t.stride = opt.t0;
      t.first_center = opt.tau - (double(dt) - 0.5) * opt.t0;
      t.slot_base = dh;
      sections.push_back(std::move(h));
      sections.push_back(std::move(t));
      break;
    }
  }

  for (const Section& s : sections)
    for (std::size_t i = 0; i < s.ops.size(); ++i) {
      Pulse p;
      p.shape = opt.shape;
      p.width = opt.t0;
      p.slot = s.slot_base + s.slots[i];
      p.center = s.first_center + double(s.slots[i]) * s.stride;
      p.sites = s.ops[i].sites;
      p.generator = gate_generator(s.ops[i].g);
      p.source = s.ops[i];
      sched.pulses.push_back(std::move(p));
    }

  sched.validate();
  return sched;
}

Matrix evaluate_hamiltonian(const Schedule& schedule, double t) {
  if (t < -kTimeEps || t > schedule.tau + kTimeEps)
    throw ConfigError("time outside [0, tau]");
  const auto dim = schedule.layout.dim();
  Matrix h = Matrix::Zero(dim, dim);
  for (const Pulse& p : schedule.pulses) {
    const double f = pulse_value(p.shape, p.center, p.width, t);
    if (f == 0.0) continue;
    h += f * embed(p.generator, p.sites, schedule.layout);
  }
  return h;
}

SpeedReport check_speed_constraint(const Schedule& schedule, double C) {
  if (!(C > 0.0)) throw ConfigError("speed constant must be positive");
  SpeedReport report;
  report.C = C;
  report.t0_min = schedule.t0_min;
  const double limit = C / schedule.t0_min;
  for (std::size_t i = 0; i < schedule.pulses.size(); ++i) {
    const Pulse& p = schedule.pulses[i];
    PulseSpeedEntry e;
    e.pulse_index = i;
    e.sup_f = pulse_sup(p.shape, p.width);
    e.norm_h = operator_norm(p.generator);
    e.measured = e.sup_f * 2.0 * e.norm_h;
    e.limit = limit;
    e.pass = e.measured <= limit * (1.0 + 1e-12);
    report.all_pass = report.all_pass && e.pass;
    report.entries.push_back(e);
  }
  return report;
}

std::vector<TimedGate> delta_limit_schedule(const Schedule& schedule) {
  std::vector<TimedGate> out;
  out.reserve(schedule.pulses.size());
  for (const Pulse& p : schedule.pulses)
    out.push_back(TimedGate{p.center, p.source});
  std::stable_sort(out.begin(), out.end(),
                   [](const TimedGate& a, const TimedGate& b) {
                     if (a.center != b.center) return a.center < b.center;
                     return a.op.sites[0] < b.op.sites[0];
                   });
  return out;
}

nlohmann::json serialize_schedule(const Schedule& schedule) {
  nlohmann::json doc;
  doc["tau"] = schedule.tau;
  doc["t0_min"] = schedule.t0_min;
  doc["register_qubits"] = schedule.layout.register_qubits;
  doc["ancilla_qubits"] = schedule.layout.ancilla_qubits;
  nlohmann::json pulses = nlohmann::json::array();
  for (const Pulse& p : schedule.pulses) {
    nlohmann::json jp;
    jp["shape"] = shape_name(p.shape);
    jp["center"] = p.center;
    jp["width"] = p.width;
    jp["sites"] = p.sites;
    jp["slot"] = p.slot;
    jp["source"] = {{"gate", gate_name(p.source.g)},
                    {"sites", p.source.sites}};
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < p.generator.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < p.generator.cols(); ++c)
        row.push_back({p.generator(r, c).real(), p.generator(r, c).imag()});
      rows.push_back(std::move(row));
    }
    jp["generator"] = std::move(rows);
    pulses.push_back(std::move(jp));
  }
  doc["pulses"] = std::move(pulses);
  return doc;
}

Schedule parse_schedule(const nlohmann::json& doc) {
  Schedule sched;
  try {
    sched.tau = doc.at("tau").get<double>();
    sched.t0_min = doc.at("t0_min").get<double>();
    sched.layout = HilbertLayout::make(doc.at("register_qubits").get<int>(),
                                       doc.at("ancilla_qubits").get<int>());
    for (const auto& jp : doc.at("pulses")) {
      Pulse p;
      p.shape = shape_from_name(jp.at("shape").get<std::string>());
      p.center = jp.at("center").get<double>();
      p.width = jp.at("width").get<double>();
      p.sites = jp.at("sites").get<std::vector<int>>();
      p.slot = jp.at("slot").get<int>();
      const auto& src = jp.at("source");
      p.source.sites = src.at("sites").get<std::vector<int>>();
      p.source.g = [&] {
        const std::string name = src.at("gate").get<std::string>();
        for (Gate g : {Gate::X, Gate::Z, Gate::H, Gate::S, Gate::Sdg, Gate::T,
                       Gate::Tdg, Gate::CNOT, Gate::CZ, Gate::CCX, Gate::W5,
                       Gate::W5INV})
          if (gate_name(g) == name) return g;
        throw ConfigError("unknown gate '" + name + "' in schedule");
      }();
      const auto& rows = jp.at("generator");
      const auto d = std::int64_t(rows.size());
      p.generator = Matrix::Zero(d, d);
      for (std::int64_t r = 0; r < d; ++r)
        for (std::int64_t c = 0; c < d; ++c) {
          const auto& cell = rows.at(std::size_t(r)).at(std::size_t(c));
          p.generator(r, c) =
              cx(cell.at(0).get<double>(), cell.at(1).get<double>());
        }
      sched.pulses.push_back(std::move(p));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed schedule document: ") + e.what());
  }
  sched.validate();
  return sched;
}

}  // namespace qeclab
