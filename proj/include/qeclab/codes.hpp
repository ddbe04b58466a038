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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qeclab/tensor.hpp"

// Quantum codes, their encoders, and measurement-free recovery circuits
// built from a named gate set. Circuits keep CCX/W5/W5INV as opaque macro
// gates; expand_macros lowers them to 1-2 qubit elementary gates for pulse
// compilation.

namespace qeclab {

enum class Gate { X, Z, H, S, Sdg, T, Tdg, CNOT, CZ, CCX, W5, W5INV };

// Textual name used by circuit serialization. Only the serializable subset
// {X, Z, H, CNOT, CCX-coherent, W5, W5INV} may appear in stored circuits;
// the rest exist only inside macro expansions.
std::string gate_name(Gate g);
bool is_serializable(Gate g);
int gate_arity(Gate g);
// Dense matrix of the gate on its own sites (2^arity square).
Matrix gate_matrix(Gate g);

struct CircuitOp {
  Gate g;
  std::vector<int> sites;  // sites[0] is the most significant qubit of the op
};

enum class RecoveryStyle { syndrome_correct, decode_reencode };
std::string style_name(RecoveryStyle s);

// An ordered gate list acting on register qubits [0, register_qubits) and
// ancilla qubits [register_qubits, register_qubits + ancilla_count).
// head_count splits the list into a leading stage and a trailing stage; a
// schedule compiler may pack the head at the start of the period and the
// tail at its end (decode-reencode circuits protect the state in between).
struct RecoveryCircuit {
  std::vector<CircuitOp> ops;
  int register_qubits = 0;
  int ancilla_count = 0;
  RecoveryStyle style = RecoveryStyle::syndrome_correct;
  std::size_t head_count = 0;  // ops[0..head_count) form the leading stage

  HilbertLayout layout() const;
};

// Lowers CCX/W5/W5INV to elementary 1-2 qubit gates; other ops pass through.
std::vector<CircuitOp> expand_macros(const std::vector<CircuitOp>& ops);

// Dense unitary of the op list on the given layout (macro gates applied
// directly as dense blocks; no expansion needed).
Matrix circuit_unitary(const std::vector<CircuitOp>& ops,
                       const HilbertLayout& lay);

// One gate per line: "GATE_NAME site [site...]". Bit-exact round-trip.
std::string serialize_circuit(const std::vector<CircuitOp>& ops);
std::vector<CircuitOp> parse_circuit(const std::string& text);

struct Code {
  std::string name;      // "repetition-3", "repetition-M", "perfect-5"
  int n_physical = 0;    // M
  Vector logical_zero;   // register-dimension amplitudes
  Vector logical_one;

  static Code repetition(int m);  // m >= 1; m = 3 is the standard instance
  static Code perfect5();

  const Vector& logical(int bit) const;
  Matrix code_projector() const;  // |0L><0L| + |1L><1L|
};

// alpha |0_L> + beta |1_L>; amplitudes must be normalized.
Vector encode(const Code& code, cx alpha, cx beta);

// The four verification states {|0L>, |1L>, |+L>, |iL>}.
std::vector<Vector> sample_frame(const Code& code);

RecoveryCircuit build_recovery(const Code& code, RecoveryStyle style);

struct CorrectionReport {
  double fidelity_F1 = 0.0;  // min over samples
  double mu = 0.0;           // 1 - F1
  double B_est = 0.0;        // ||residual||_1 / mu (worst case over samples)
  bool b_est_defined = false;  // false when mu ~ 0 (residual has no scale)
  bool b_flagged = false;      // set when B_est > 10
  std::vector<double> sample_fidelities;
};

// In-place channel on the circuit's full layout.
using ChannelFn = std::function<void(Matrix&)>;

// Applies error then recovery to each frame state |psi> (x) |0...0>, and
// extracts the accuracy mu, the residual constant, and worst-case fidelity.
CorrectionReport verify_correction_property(const RecoveryCircuit& circuit,
                                            const Code& code,
                                            const ChannelFn& error,
                                            const std::vector<Vector>& samples);

struct ReadoutResult {
  int bit = 0;
  double confidence = 0.0;  // code-subspace weight of the winning logical
  bool tie = false;
  bool leaked = false;      // code-space weight < 1/2
};

// argmax_b <b_L| rho |b_L> renormalized over the code subspace.
ReadoutResult logical_readout(const Matrix& rho_register, const Code& code);

}  // namespace qeclab
