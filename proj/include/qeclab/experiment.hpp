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

#include <nlohmann/json_fwd.hpp>

#include "qeclab/bounds.hpp"
#include "qeclab/discrete.hpp"

// Configuration-driven experiment runner: validates a JSON config against
// all module preconditions, executes the requested runs (sweep points on a
// worker pool with deterministic result ordering), and writes versioned CSV
// data, a bound-report JSON, and a manifest.

namespace qeclab {

enum class ExperimentKind {
  uncorrected,
  discrete_cycle,
  continuous_cycle,
  t0_sweep,
  m_sweep,
  lambda_sweep,
  dyson_validate,
  delta_limit,
  total_fidelity,
};
std::string kind_name(ExperimentKind k);
ExperimentKind kind_from_name(const std::string& name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::uncorrected;
  std::string code = "repetition-3";  // repetition-3 | repetition-M | perfect-5
  int m_override = 0;                 // register size for repetition-M
  RecoveryStyle style = RecoveryStyle::decode_reencode;
  double lambda_sq = 0.1;
  std::vector<double> lambda_grid;    // lambda-sweep points
  double t0 = 0.05;
  std::vector<double> t0_grid;        // t0-sweep points
  std::vector<int> m_grid;            // M-sweep points
  double tau = 1.0;
  double t0_min = 0.0;                // 0: defaults to t0
  int T = 1;                          // steps (discrete) / periods (total-fidelity)
  double t_clock = 1.0;               // discrete clock period
  // Speed-limit constant: sup f * 2||h|| <= C / t0_min must hold per pulse.
  // 4*pi covers raised-cosine pulses of full-angle (||h|| = pi) gates; box
  // pulses need only 2*pi, truncated-gaussian ones 4.8*pi.
  double C = 4.0 * 3.14159265358979323846;
  double kappa = 0.0;                 // 0: report crossover ceilings only
  PulseShape shape = PulseShape::raised_cosine;
  Alignment alignment = Alignment::packed_split;
  IntegratorConfig integrator;
  std::optional<double> gate_noise_weight;  // discrete E' dressing
  std::string psi = "plus";           // zero | one | plus | iy | frame
  int dyson_order = 0;                // 0: choose from tail tolerance
  double dyson_tail_tol = 1e-8;
  std::uint64_t seed = 0;             // reserved for randomized psi sampling
  std::string out_dir = ".";
};

ExperimentConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& config);

// Full precondition report; empty vector = valid.
std::vector<std::string> validate_config(const ExperimentConfig& config);

// FNV-1a over the canonical (sorted-key) JSON dump; hex string.
std::string config_hash(const ExperimentConfig& config);

struct RunResult {
  int exit_code = 0;  // 0 ok, 2 config error, 3 numerical error
  std::vector<std::string> errors;
  std::vector<std::string> files_written;
};

RunResult run_experiment(const ExperimentConfig& config,
                         const std::string& out_dir_override = "", int jobs = 1);

struct Preset {
  std::string name;
  std::string summary;
  ExperimentConfig config;
};
const std::vector<Preset>& presets();

std::string tool_version();

}  // namespace qeclab
