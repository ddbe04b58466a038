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

#include <span>
#include <vector>

#include "qeclab/types.hpp"

namespace qeclab {

// ---- typed states -------------------------------------------------------

struct PureState {
  HilbertLayout layout;
  Vector amp;

  static PureState make(const HilbertLayout& lay, Vector v);
};

struct DensityMatrix {
  HilbertLayout layout;
  Matrix rho;

  // Validates hermiticity, unit trace and positivity (up to slack).
  static DensityMatrix make(const HilbertLayout& lay, Matrix m,
                            bool check_psd = true);
  static DensityMatrix from_pure(const PureState& psi);
};

struct HermitianOperator {
  HilbertLayout layout;
  Matrix op;

  static HermitianOperator make(const HilbertLayout& lay, Matrix m);
};

// ---- structure operations ----------------------------------------------

// Kronecker product; throws once the combined dimension passes 2^12.
Matrix tensor_product(const Matrix& a, const Matrix& b);
Vector tensor_product(const Vector& a, const Vector& b);

// Trace out the listed qubits; the survivors keep their relative order.
Matrix partial_trace(const Matrix& m, const HilbertLayout& lay,
                     std::span<const int> traced);

// Trace out the whole ancilla block.
Matrix trace_out_ancillas(const Matrix& m, const HilbertLayout& lay);

// Place a 2^k-dimensional operator on the given (distinct, possibly
// non-adjacent) qubits; sites[0] is the most significant bit of the small op.
Matrix embed(const Matrix& small, std::span<const int> sites,
             const HilbertLayout& lay);

// Largest singular value.
double operator_norm(const Matrix& m);
// Sum of singular values.
double trace_norm(const Matrix& m);
// Smallest eigenvalue of a Hermitian matrix (exact solve).
double min_eigenvalue(const Matrix& herm);
// Estimated smallest eigenvalue; exact below 'exact_dim', otherwise a power
// iteration on (s*I - A) with a residual-certified result.
double min_eigenvalue_est(const Matrix& herm, int exact_dim = 128);

// <psi|rho|psi> with the imaginary residue checked against tolerance.
double state_fidelity(const PureState& psi, const DensityMatrix& rho);
// Same, on raw register-space objects.
double state_fidelity(const Vector& psi, const Matrix& rho);

double purity(const Matrix& rho);

// Computational basis state |index> on a layout.
Vector basis_state(const HilbertLayout& lay, std::int64_t index);

// psi (on the register) tensored with |0...0> on the ancillas.
Vector with_fresh_ancillas(const HilbertLayout& lay, const Vector& psi_register);

bool is_hermitian(const Matrix& m, double eps);
bool is_unitary(const Matrix& m, double eps);

}  // namespace qeclab
