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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qeclab {

using cx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Hard cap on the total Hilbert space: dense storage only.
inline constexpr int kMaxQubits = 12;
inline constexpr std::int64_t kMaxDim = std::int64_t(1) << kMaxQubits;

// All numeric tolerances live here so every check in the library and the
// test suite reads the same constants.
struct Tolerances {
  double hermiticity = 1e-12;       // |rho - rho^dag| entrywise
  double trace_unity = 1e-12;       // |tr(rho) - 1|
  double positivity_slack = 1e-10;  // smallest eigenvalue >= -slack
  double state_norm = 1e-12;        // pure-state normalization
  double unitarity = 1e-10;         // |U U^dag - 1|
  double fidelity_imag = 1e-12;     // imaginary residue of <psi|rho|psi>
  double recovery_residual = 1e-6;  // period propagator factorization
  double trace_drift = 1e-9;        // integrator trace conservation
};

inline const Tolerances& tol() {
  static const Tolerances t{};
  return t;
}

// Raised on malformed input (maps to CLI exit code 2).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised on solver/eigensolver failure (maps to CLI exit code 3).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Register qubits come first, ancillas after. Qubit 0 is the MOST significant
// bit of a basis index, i.e. basis index b has qubit q in bit (n-1-q).
struct HilbertLayout {
  int register_qubits = 0;
  int ancilla_qubits = 0;

  int total_qubits() const { return register_qubits + ancilla_qubits; }
  std::int64_t dim() const { return std::int64_t(1) << total_qubits(); }
  std::int64_t register_dim() const {
    return std::int64_t(1) << register_qubits;
  }
  std::int64_t ancilla_dim() const { return std::int64_t(1) << ancilla_qubits; }

  // bit position (from the least significant end) of a qubit index
  int bit(int qubit) const { return total_qubits() - 1 - qubit; }

  bool operator==(const HilbertLayout&) const = default;

  static HilbertLayout make(int register_qubits, int ancilla_qubits) {
    if (register_qubits < 1)
      throw ConfigError("layout needs at least one register qubit");
    if (ancilla_qubits < 0)
      throw ConfigError("negative ancilla count");
    if (register_qubits + ancilla_qubits > kMaxQubits)
      throw ConfigError("layout exceeds the " + std::to_string(kMaxQubits) +
                        "-qubit dense-storage cap");
    return HilbertLayout{register_qubits, ancilla_qubits};
  }
};

}  // namespace qeclab
