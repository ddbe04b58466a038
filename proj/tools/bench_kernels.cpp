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

// Timing harness: parallel state-update kernels versus the serial reference
// on a dense density matrix, with a bitwise agreement check.

#include <chrono>
#include <cstdio>
#include <random>

#include "qeclab/codes.hpp"
#include "qeclab/kernels.hpp"

namespace {

using qeclab::cx;
using qeclab::Matrix;

Matrix random_hermitian(std::int64_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix m(dim, dim);
  for (std::int64_t i = 0; i < dim; ++i)
    for (std::int64_t j = 0; j < dim; ++j)
      m(i, j) = cx(dist(rng), dist(rng));
  return Matrix((m + m.adjoint()) / 2.0);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main() {
  const int qubits = 10;
  const qeclab::HilbertLayout lay = qeclab::HilbertLayout::make(qubits, 0);
  std::mt19937_64 rng(12345);
  const Matrix rho0 = random_hermitian(lay.dim(), rng);
  const Matrix cnot = qeclab::gate_matrix(qeclab::Gate::CNOT);
  const int reps = 20;

  std::printf("dense dimension: %lld, repetitions per kernel: %d\n",
              static_cast<long long>(lay.dim()), reps);

  // conj_gate: rho -> U rho U^dag on sites {2, 7}.
  {
    Matrix a = rho0;
    Matrix b = rho0;
    const std::vector<int> sites{2, 7};
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r)
      qeclab::kern::conj_gate(a, cnot, sites, lay);
    const double tp = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r)
      qeclab::kern::ref::conj_gate(b, cnot, sites, lay);
    const double ts = seconds_since(t0);
    const double diff = (a - b).cwiseAbs().maxCoeff();
    std::printf("conj_gate    parallel %8.4f s   serial %8.4f s   "
                "speedup %5.2fx   max|diff| %.3g\n",
                tp, ts, ts / tp, diff);
  }

  // lmul_gate: rho -> U rho on sites {0, 5}.
  {
    Matrix a = rho0;
    Matrix b = rho0;
    const std::vector<int> sites{0, 5};
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r)
      qeclab::kern::lmul_gate(a, cnot, sites, lay);
    const double tp = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r)
      qeclab::kern::ref::lmul_gate(b, cnot, sites, lay);
    const double ts = seconds_since(t0);
    const double diff = (a - b).cwiseAbs().maxCoeff();
    std::printf("lmul_gate    parallel %8.4f s   serial %8.4f s   "
                "speedup %5.2fx   max|diff| %.3g\n",
                tp, ts, ts / tp, diff);
  }

  // replace_mix: per-qubit replacement mixture with weight 0.25 on qubit 4.
  {
    Matrix a = rho0;
    Matrix b = rho0;
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r)
      qeclab::kern::replace_mix(a, 4, 0.25, lay);
    const double tp = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r)
      qeclab::kern::ref::replace_mix(b, 4, 0.25, lay);
    const double ts = seconds_since(t0);
    const double diff = (a - b).cwiseAbs().maxCoeff();
    std::printf("replace_mix  parallel %8.4f s   serial %8.4f s   "
                "speedup %5.2fx   max|diff| %.3g\n",
                tp, ts, ts / tp, diff);
  }
  return 0;
}
