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

#include "qeclab/codes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>

#include "qeclab/kernels.hpp"

namespace qeclab {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// ---------------------------------------------------------------------------
// Frozen elementary-gate programs for the macro gates.
// ---------------------------------------------------------------------------

struct RawOp {
  Gate g;
  int a;
  int b;  // -1 for one-qubit gates
};

// Coherent Toffoli on (c1, c2, t) = template sites (0, 1, 2), lowered to
// {H, T, Tdg, CNOT}. Verified against the dense permutation matrix.
constexpr std::array<RawOp, 15> kCcxProgram = {{
    {Gate::H, 2, -1},    {Gate::CNOT, 1, 2}, {Gate::Tdg, 2, -1},
    {Gate::CNOT, 0, 2},  {Gate::T, 2, -1},   {Gate::CNOT, 1, 2},
    {Gate::Tdg, 2, -1},  {Gate::CNOT, 0, 2}, {Gate::T, 1, -1},
    {Gate::T, 2, -1},    {Gate::H, 2, -1},   {Gate::CNOT, 0, 1},
    {Gate::T, 0, -1},    {Gate::Tdg, 1, -1}, {Gate::CNOT, 0, 1},
}};

// Basis change D of the five-qubit code on template sites (0..4): it maps
// the four stabilizer generators to Z on sites 1..4, the logical Z to Z on
// site 0, the logical X to X on site 0, and the two logical basis states to
// |b>|0000> with a common phase. Every gate here is self-inverse, so the
// inverse program is just this list reversed. The layered depth is 32.
constexpr std::array<RawOp, 33> kW5Program = {{
    {Gate::CNOT, 1, 0}, {Gate::CNOT, 2, 0}, {Gate::CNOT, 3, 0},
    {Gate::CNOT, 4, 0}, {Gate::CNOT, 0, 1}, {Gate::CNOT, 0, 2},
    {Gate::CNOT, 0, 3}, {Gate::CNOT, 0, 4}, {Gate::CZ, 3, 1},
    {Gate::CZ, 3, 2},   {Gate::H, 3, -1},   {Gate::CNOT, 3, 1},
    {Gate::CNOT, 1, 3}, {Gate::CNOT, 3, 1}, {Gate::CNOT, 1, 2},
    {Gate::CNOT, 1, 4}, {Gate::CZ, 1, 2},   {Gate::CZ, 1, 3},
    {Gate::CNOT, 3, 4}, {Gate::CZ, 3, 2},   {Gate::H, 3, -1},
    {Gate::CNOT, 3, 2}, {Gate::CNOT, 2, 3}, {Gate::CNOT, 3, 2},
    {Gate::CNOT, 2, 3}, {Gate::CNOT, 2, 4}, {Gate::CZ, 2, 3},
    {Gate::CZ, 3, 4},   {Gate::H, 3, -1},   {Gate::CNOT, 3, 4},
    {Gate::H, 4, -1},   {Gate::X, 4, -1},   {Gate::Z, 4, -1},
}};

std::vector<CircuitOp> map_program(std::span<const RawOp> program,
                                   const std::vector<int>& sites,
                                   bool reversed) {
  std::vector<CircuitOp> out;
  out.reserve(program.size());
  auto emit = [&](const RawOp& r) {
    CircuitOp op;
    op.g = r.g;
    op.sites.push_back(sites[std::size_t(r.a)]);
    if (r.b >= 0) op.sites.push_back(sites[std::size_t(r.b)]);
    out.push_back(std::move(op));
  };
  if (reversed)
    for (auto it = program.rbegin(); it != program.rend(); ++it) emit(*it);
  else
    for (const RawOp& r : program) emit(r);
  return out;
}

Matrix two_by_two(cx a, cx b, cx c, cx d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Matrix macro_unitary(std::span<const RawOp> program, int qubits,
                     bool reversed) {
  const HilbertLayout lay = HilbertLayout::make(qubits, 0);
  std::vector<int> identity_sites(std::size_t(qubits), 0);
  for (int i = 0; i < qubits; ++i) identity_sites[std::size_t(i)] = i;
  Matrix u = Matrix::Identity(lay.dim(), lay.dim());
  for (const CircuitOp& op : map_program(program, identity_sites, reversed))
    kern::lmul_gate(u, gate_matrix(op.g), op.sites, lay);
  return u;
}

}  // namespace

std::string gate_name(Gate g) {
  switch (g) {
    case Gate::X: return "X";
    case Gate::Z: return "Z";
    case Gate::H: return "H";
    case Gate::S: return "S";
    case Gate::Sdg: return "Sdg";
    case Gate::T: return "T";
    case Gate::Tdg: return "Tdg";
    case Gate::CNOT: return "CNOT";
    case Gate::CZ: return "CZ";
    case Gate::CCX: return "CCX-coherent";
    case Gate::W5: return "W5";
    case Gate::W5INV: return "W5INV";
  }
  throw ConfigError("unknown gate");
}

bool is_serializable(Gate g) {
  switch (g) {
    case Gate::X:
    case Gate::Z:
    case Gate::H:
    case Gate::CNOT:
    case Gate::CCX:
    case Gate::W5:
    case Gate::W5INV:
      return true;
    default:
      return false;
  }
}

int gate_arity(Gate g) {
  switch (g) {
    case Gate::X:
    case Gate::Z:
    case Gate::H:
    case Gate::S:
    case Gate::Sdg:
    case Gate::T:
    case Gate::Tdg:
      return 1;
    case Gate::CNOT:
    case Gate::CZ:
      return 2;
    case Gate::CCX:
      return 3;
    case Gate::W5:
    case Gate::W5INV:
      return 5;
  }
  throw ConfigError("unknown gate");
}

Matrix gate_matrix(Gate g) {
  switch (g) {
    case Gate::X: return two_by_two(0, 1, 1, 0);
    case Gate::Z: return two_by_two(1, 0, 0, -1);
    case Gate::H:
      return two_by_two(kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);
    case Gate::S: return two_by_two(1, 0, 0, cx(0, 1));
    case Gate::Sdg: return two_by_two(1, 0, 0, cx(0, -1));
    case Gate::T: return two_by_two(1, 0, 0, std::polar(1.0, M_PI / 4));
    case Gate::Tdg: return two_by_two(1, 0, 0, std::polar(1.0, -M_PI / 4));
    case Gate::CNOT: {
      Matrix m = Matrix::Zero(4, 4);
      m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
      return m;
    }
    case Gate::CZ: {
      Matrix m = Matrix::Identity(4, 4);
      m(3, 3) = -1.0;
      return m;
    }
    case Gate::CCX: {
      Matrix m = Matrix::Identity(8, 8);
      m(6, 6) = m(7, 7) = 0.0;
      m(6, 7) = m(7, 6) = 1.0;
      return m;
    }
    case Gate::W5: {
      static const Matrix u = macro_unitary(kW5Program, 5, false);
      return u;
    }
    case Gate::W5INV: {
      static const Matrix u = macro_unitary(kW5Program, 5, true);
      return u;
    }
  }
  throw ConfigError("unknown gate");
}

std::string style_name(RecoveryStyle s) {
  return s == RecoveryStyle::syndrome_correct ? "syndrome-correct"
                                              : "decode-reencode";
}

HilbertLayout RecoveryCircuit::layout() const {
  return HilbertLayout::make(register_qubits, ancilla_count);
}

std::vector<CircuitOp> expand_macros(const std::vector<CircuitOp>& ops) {
  std::vector<CircuitOp> out;
  out.reserve(ops.size());
  for (const CircuitOp& op : ops) {
    switch (op.g) {
      case Gate::CCX: {
        auto part = map_program(kCcxProgram, op.sites, false);
        out.insert(out.end(), part.begin(), part.end());
        break;
      }
      case Gate::W5:
      case Gate::W5INV: {
        auto part =
            map_program(kW5Program, op.sites, /*reversed=*/op.g == Gate::W5INV);
        out.insert(out.end(), part.begin(), part.end());
        break;
      }
      default:
        out.push_back(op);
    }
  }
  return out;
}

Matrix circuit_unitary(const std::vector<CircuitOp>& ops,
                       const HilbertLayout& lay) {
  Matrix u = Matrix::Identity(lay.dim(), lay.dim());
  for (const CircuitOp& op : ops)
    kern::lmul_gate(u, gate_matrix(op.g), op.sites, lay);
  return u;
}

std::string serialize_circuit(const std::vector<CircuitOp>& ops) {
  std::ostringstream os;
  for (const CircuitOp& op : ops) {
    if (!is_serializable(op.g))
      throw ConfigError("serialize: gate " + gate_name(op.g) +
                        " is internal to pulse lowering and has no stored "
                        "form");
    if (int(op.sites.size()) != gate_arity(op.g))
      throw ConfigError("serialize: bad site count for " + gate_name(op.g));
    os << gate_name(op.g);
    for (int s : op.sites) os << ' ' << s;
    os << '\n';
  }
  return os.str();
}

std::vector<CircuitOp> parse_circuit(const std::string& text) {
  static const std::map<std::string, Gate> names = {
      {"X", Gate::X},   {"Z", Gate::Z},
      {"H", Gate::H},   {"CNOT", Gate::CNOT},
      {"CCX-coherent", Gate::CCX},
      {"W5", Gate::W5}, {"W5INV", Gate::W5INV},
  };
  std::vector<CircuitOp> ops;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string name;
    if (!(ls >> name)) continue;  // blank line
    auto it = names.find(name);
    if (it == names.end())
      throw ConfigError("circuit line " + std::to_string(lineno) +
                        ": unknown gate '" + name + "'");
    CircuitOp op;
    op.g = it->second;
    int site = 0;
    while (ls >> site) op.sites.push_back(site);
    if (!ls.eof())
      throw ConfigError("circuit line " + std::to_string(lineno) +
                        ": malformed site list");
    if (int(op.sites.size()) != gate_arity(op.g))
      throw ConfigError("circuit line " + std::to_string(lineno) + ": " +
                        name + " takes " + std::to_string(gate_arity(op.g)) +
                        " sites");
    ops.push_back(std::move(op));
  }
  return ops;
}

// ---------------------------------------------------------------------------
// Codes
// ---------------------------------------------------------------------------

Code Code::repetition(int m) {
  if (m < 1 || m > kMaxQubits)
    throw ConfigError("repetition code size must be in [1, " +
                      std::to_string(kMaxQubits) + "]");
  Code c;
  c.name = "repetition-" + std::to_string(m);
  c.n_physical = m;
  const std::int64_t dim = std::int64_t(1) << m;
  c.logical_zero = Vector::Zero(dim);
  c.logical_one = Vector::Zero(dim);
  c.logical_zero[0] = 1.0;
  c.logical_one[dim - 1] = 1.0;
  return c;
}

Code Code::perfect5() {
  Code c;
  c.name = "perfect-5";
  c.n_physical = 5;
  const HilbertLayout lay = HilbertLayout::make(5, 0);
  // Stabilizer generators as dense Pauli strings; the code projector is the
  // average of the 16 group elements.
  const char* strings[4] = {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"};
  std::array<Matrix, 4> gens;
  for (int i = 0; i < 4; ++i) {
    Matrix s = Matrix::Identity(lay.dim(), lay.dim());
    for (int q = 0; q < 5; ++q) {
      const char p = strings[i][q];
      if (p == 'I') continue;
      const int sites[1] = {q};
      kern::lmul_gate(s, gate_matrix(p == 'X' ? Gate::X : Gate::Z), sites,
                      lay);
    }
    gens[std::size_t(i)] = std::move(s);
  }
  Vector v = Vector::Zero(lay.dim());
  v[0] = 1.0;
  for (const Matrix& s : gens) v = 0.5 * (v + s * v);
  const double norm = v.norm();
  if (!(norm > 0.1))
    throw NumericalError("five-qubit code construction lost the seed state");
  v /= norm;
  // Fix the global phase so the |00000> amplitude is real positive.
  if (!(v[0].real() > 0.0))
    throw NumericalError("five-qubit code phase convention violated");
  c.logical_zero = v;
  // Logical one: flip every qubit.
  c.logical_one = Vector::Zero(lay.dim());
  for (std::int64_t i = 0; i < lay.dim(); ++i)
    c.logical_one[(lay.dim() - 1) ^ i] = v[i];
  return c;
}

const Vector& Code::logical(int bit) const {
  if (bit == 0) return logical_zero;
  if (bit == 1) return logical_one;
  throw ConfigError("logical bit must be 0 or 1");
}

Matrix Code::code_projector() const {
  return logical_zero * logical_zero.adjoint() +
         logical_one * logical_one.adjoint();
}

Vector encode(const Code& code, cx alpha, cx beta) {
  const double n2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(n2 - 1.0) > 1e-9)
    throw ConfigError("encode: logical amplitudes are not normalized");
  return alpha * code.logical_zero + beta * code.logical_one;
}

std::vector<Vector> sample_frame(const Code& code) {
  return {
      code.logical_zero,
      code.logical_one,
      encode(code, kInvSqrt2, kInvSqrt2),
      encode(code, kInvSqrt2, cx(0.0, kInvSqrt2)),
  };
}

// ---------------------------------------------------------------------------
// Recovery construction
// ---------------------------------------------------------------------------

namespace {

void emit(std::vector<CircuitOp>& ops, Gate g, std::initializer_list<int> s) {
  ops.push_back(CircuitOp{g, std::vector<int>(s)});
}

// Swap register qubit r with ancilla a via three CNOTs.
void emit_swap(std::vector<CircuitOp>& ops, int r, int a) {
  emit(ops, Gate::CNOT, {r, a});
  emit(ops, Gate::CNOT, {a, r});
  emit(ops, Gate::CNOT, {r, a});
}

// X on target conditioned on three controls, borrowing one dirty qubit:
// the borrow is toggled by c1 c2 and used to relay the triple product, and
// is returned to its initial value.
void emit_c3x(std::vector<CircuitOp>& ops, int c1, int c2, int c3, int target,
              int borrow) {
  emit(ops, Gate::CCX, {c3, borrow, target});
  emit(ops, Gate::CCX, {c1, c2, borrow});
  emit(ops, Gate::CCX, {c3, borrow, target});
  emit(ops, Gate::CCX, {c1, c2, borrow});
}

// X on target conditioned on four controls, borrowing two dirty qubits.
void emit_c4x(std::vector<CircuitOp>& ops, const std::array<int, 4>& c,
              int target, int b1, int b2) {
  emit_c3x(ops, c[0], c[1], c[2], b1, b2);
  emit(ops, Gate::CCX, {c[3], b1, target});
  emit_c3x(ops, c[0], c[1], c[2], b1, b2);
  emit(ops, Gate::CCX, {c[3], b1, target});
}

// Decomposition of a dense Pauli string: u = phase * X^x Z^z with the X
// layer applied after the Z layer, bit q of x/z addressing qubit q.
struct PauliForm {
  std::int64_t x = 0;
  std::int64_t z = 0;
};

PauliForm pauli_form(const Matrix& u, const HilbertLayout& lay) {
  PauliForm f;
  // Column 0 locates the X pattern: u e_0 = phase e_x.
  Eigen::Index row = 0;
  double best = 0.0;
  for (Eigen::Index r = 0; r < u.rows(); ++r)
    if (std::abs(u(r, 0)) > best) {
      best = std::abs(u(r, 0));
      row = r;
    }
  if (best < 0.9)
    throw NumericalError("operator is not a Pauli string");
  const cx phase0 = u(row, 0);
  // Qubit q's bit position within state indices.
  for (int q = 0; q < lay.total_qubits(); ++q) {
    const std::int64_t bit = std::int64_t(1) << lay.bit(q);
    if (row & bit) f.x |= std::int64_t(1) << q;
    // Column with only qubit q's input bit set reveals z_q through its sign.
    const cx entry = u(row ^ bit, bit);
    const cx ratio = entry / phase0;
    if (std::abs(ratio - cx(1.0)) < 1e-6) continue;
    if (std::abs(ratio + cx(1.0)) < 1e-6)
      f.z |= std::int64_t(1) << q;
    else
      throw NumericalError("operator is not a Pauli string");
  }
  return f;
}

struct SyndromeFix {
  bool x0 = false;
  bool z0 = false;
};

// Conjugates each single-qubit Pauli through the five-qubit basis change and
// reads off (syndrome bits on qubits 1..4, residual Pauli on qubit 0).
std::map<int, SyndromeFix> perfect5_fix_table() {
  const HilbertLayout lay = HilbertLayout::make(5, 0);
  const Matrix d = gate_matrix(Gate::W5);
  const Matrix dinv = gate_matrix(Gate::W5INV);
  std::map<int, SyndromeFix> table;
  const Matrix paulis[3] = {gate_matrix(Gate::X),
                            gate_matrix(Gate::X) * gate_matrix(Gate::Z),
                            gate_matrix(Gate::Z)};
  for (int q = 0; q < 5; ++q)
    for (const Matrix& p : paulis) {
      Matrix conj = dinv;  // build D P D^dag right-to-left
      const int sites[1] = {q};
      kern::lmul_gate(conj, p, sites, lay);
      conj = d * conj;
      const PauliForm f = pauli_form(conj, lay);
      int syndrome = 0;
      for (int i = 1; i < 5; ++i)
        if (f.x & (std::int64_t(1) << i)) syndrome |= 1 << (4 - i);
      if (syndrome == 0)
        throw NumericalError("single-qubit error with empty syndrome");
      SyndromeFix fix{(f.x & 1) != 0, (f.z & 1) != 0};
      auto it = table.find(syndrome);
      if (it != table.end())
        throw NumericalError("syndrome collision in the five-qubit table");
      table.emplace(syndrome, fix);
    }
  if (table.size() != 15)
    throw NumericalError("five-qubit syndrome table is incomplete");
  return table;
}

RecoveryCircuit build_rep_syndrome(const Code& code) {
  if (code.n_physical != 3)
    throw ConfigError(
        "syndrome-correct recovery is only built for repetition-3");
  RecoveryCircuit rc;
  rc.register_qubits = 3;
  rc.ancilla_count = 2;
  rc.style = RecoveryStyle::syndrome_correct;
  const int a0 = 3, a1 = 4;
  // Neighbor parities.
  emit(rc.ops, Gate::CNOT, {0, a0});
  emit(rc.ops, Gate::CNOT, {1, a0});
  emit(rc.ops, Gate::CNOT, {1, a1});
  emit(rc.ops, Gate::CNOT, {2, a1});
  // (1,1): middle flip; (1,0): left flip; (0,1): right flip.
  emit(rc.ops, Gate::CCX, {a0, a1, 1});
  emit(rc.ops, Gate::X, {a1});
  emit(rc.ops, Gate::CCX, {a0, a1, 0});
  emit(rc.ops, Gate::X, {a1});
  emit(rc.ops, Gate::X, {a0});
  emit(rc.ops, Gate::CCX, {a0, a1, 2});
  emit(rc.ops, Gate::X, {a0});
  rc.head_count = rc.ops.size();
  return rc;
}

RecoveryCircuit build_rep_decode(const Code& code) {
  const int m = code.n_physical;
  if (2 * m > kMaxQubits)
    throw ConfigError("decode-reencode needs M parking ancillas: 2M <= " +
                      std::to_string(kMaxQubits));
  RecoveryCircuit rc;
  rc.register_qubits = m;
  rc.ancilla_count = m;
  rc.style = RecoveryStyle::decode_reencode;
  // Decode onto qubit 0, then park every register qubit in an ancilla so
  // that mid-period the register factor is exactly maximally mixed.
  for (int k = 1; k < m; ++k) emit(rc.ops, Gate::CNOT, {0, k});
  for (int i = 0; i < m; ++i) emit_swap(rc.ops, i, m + i);
  rc.head_count = rc.ops.size();
  for (int i = m - 1; i >= 0; --i) emit_swap(rc.ops, i, m + i);
  for (int k = m - 1; k >= 1; --k) emit(rc.ops, Gate::CNOT, {0, k});
  return rc;
}

RecoveryCircuit build_p5_decode() {
  RecoveryCircuit rc;
  rc.register_qubits = 5;
  rc.ancilla_count = 5;
  rc.style = RecoveryStyle::decode_reencode;
  emit(rc.ops, Gate::W5, {0, 1, 2, 3, 4});
  for (int i = 0; i < 5; ++i) emit_swap(rc.ops, i, 5 + i);
  rc.head_count = rc.ops.size();
  for (int i = 4; i >= 0; --i) emit_swap(rc.ops, i, 5 + i);
  emit(rc.ops, Gate::W5INV, {0, 1, 2, 3, 4});
  return rc;
}

RecoveryCircuit build_p5_syndrome() {
  RecoveryCircuit rc;
  rc.register_qubits = 5;
  rc.ancilla_count = 4;
  rc.style = RecoveryStyle::syndrome_correct;
  emit(rc.ops, Gate::W5, {0, 1, 2, 3, 4});
  // Copy the syndrome (computational-basis bits of qubits 1..4 after the
  // basis change) onto the ancillas.
  for (int i = 0; i < 4; ++i) emit(rc.ops, Gate::CNOT, {i + 1, 5 + i});
  // One 4-controlled fix block per syndrome, controls conditioned through
  // X sandwiches; qubit 0 is the target, register qubits 1 and 2 serve as
  // dirty borrows (restored by each gadget).
  const std::array<int, 4> controls = {5, 6, 7, 8};
  for (const auto& [syndrome, fix] : perfect5_fix_table()) {
    std::vector<int> off;
    for (int i = 0; i < 4; ++i)
      if (!(syndrome & (1 << (3 - i)))) off.push_back(5 + i);
    for (int a : off) emit(rc.ops, Gate::X, {a});
    if (fix.x0) emit_c4x(rc.ops, controls, 0, 1, 2);
    if (fix.z0) {
      emit(rc.ops, Gate::H, {0});
      emit_c4x(rc.ops, controls, 0, 1, 2);
      emit(rc.ops, Gate::H, {0});
    }
    for (int a : off) emit(rc.ops, Gate::X, {a});
  }
  // Return the register syndrome qubits to |0> and undo the basis change;
  // the ancillas keep the syndrome until the engine refreshes them.
  for (int i = 0; i < 4; ++i) emit(rc.ops, Gate::CNOT, {5 + i, i + 1});
  emit(rc.ops, Gate::W5INV, {0, 1, 2, 3, 4});
  rc.head_count = rc.ops.size();
  return rc;
}

}  // namespace

RecoveryCircuit build_recovery(const Code& code, RecoveryStyle style) {
  if (code.name == "perfect-5")
    return style == RecoveryStyle::syndrome_correct ? build_p5_syndrome()
                                                    : build_p5_decode();
  if (code.name.rfind("repetition-", 0) == 0)
    return style == RecoveryStyle::syndrome_correct ? build_rep_syndrome(code)
                                                    : build_rep_decode(code);
  throw ConfigError("no recovery construction for code '" + code.name + "'");
}

CorrectionReport verify_correction_property(const RecoveryCircuit& circuit,
                                            const Code& code,
                                            const ChannelFn& error,
                                            const std::vector<Vector>& samples) {
  if (samples.empty()) throw ConfigError("verify: no sample states");
  const HilbertLayout lay = circuit.layout();
  const Matrix u = circuit_unitary(circuit.ops, lay);
  const Matrix pc = code.code_projector();

  CorrectionReport report;
  std::vector<Matrix> outputs;
  outputs.reserve(samples.size());
  double f_min = 1.0;
  for (const Vector& psi : samples) {
    if (psi.size() != lay.register_dim())
      throw ConfigError("verify: sample dimension does not match the code");
    if (std::abs(psi.norm() - 1.0) > tol().state_norm)
      throw ConfigError("verify: sample state is not normalized");
    const double in_code = std::real(cx(psi.adjoint() * pc * psi));
    if (in_code < 1.0 - 1e-10)
      throw ConfigError("verify: sample state lies outside the code space");
    const Vector full = with_fresh_ancillas(lay, psi);
    Matrix rho = full * full.adjoint();
    error(rho);
    rho = u * rho * u.adjoint();
    const double tr = std::real(rho.trace());
    if (!(tr > 1e-9))
      throw NumericalError("verify: channel annihilated the sample state");
    rho /= tr;
    const double f = state_fidelity(psi, trace_out_ancillas(rho, lay));
    report.sample_fidelities.push_back(f);
    f_min = std::min(f_min, f);
    outputs.push_back(std::move(rho));
  }
  report.fidelity_F1 = f_min;
  report.mu = 1.0 - f_min;

  if (report.mu > 1e-12) {
    const std::vector<int> reg_sites = [&] {
      std::vector<int> s;
      for (int q = 0; q < lay.register_qubits; ++q) s.push_back(q);
      return s;
    }();
    double worst = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const Matrix rho_anc = partial_trace(outputs[i], lay, reg_sites);
      const Matrix ideal =
          tensor_product(Matrix(samples[i] * samples[i].adjoint()), rho_anc);
      const Matrix sigma = outputs[i] - report.fidelity_F1 * ideal;
      worst = std::max(worst, trace_norm(sigma) / report.mu);
    }
    report.B_est = worst;
    report.b_est_defined = true;
    report.b_flagged = worst > 10.0;
  }
  return report;
}

ReadoutResult logical_readout(const Matrix& rho_register, const Code& code) {
  const auto weight = [&](const Vector& l) {
    return std::max(0.0, std::real(cx(l.adjoint() * rho_register * l)));
  };
  const double p0 = weight(code.logical_zero);
  const double p1 = weight(code.logical_one);
  ReadoutResult r;
  r.tie = std::abs(p0 - p1) <= 1e-12;
  r.bit = p1 > p0 ? 1 : 0;
  const double wt = p0 + p1;
  r.leaked = wt < 0.5;
  r.confidence = wt > 0.0 ? std::max(p0, p1) / wt : 0.0;
  return r;
}

}  // namespace qeclab
