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

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qeclab/types.hpp"

// Index bookkeeping shared by the parallel and the serial kernels. Both
// translation units run exactly the same per-element arithmetic; only the
// loop scheduling differs.

namespace qeclab::kern::detail {

inline constexpr int kMaxGateQubits = 6;
inline constexpr int kMaxGateDim = 1 << kMaxGateQubits;

struct GatePlan {
  int k = 0;                          // qubits the gate acts on
  std::int64_t ds = 0;                // 2^k
  std::int64_t dr = 0;                // number of "rest" indices
  std::vector<std::int64_t> site_ix;  // scatter of small index into full bits
  std::vector<std::int64_t> rest_ix;  // scatter of rest index into full bits
};

inline std::int64_t deposit_bits(std::int64_t packed,
                                 const std::vector<int>& positions) {
  std::int64_t out = 0;
  const int k = int(positions.size());
  for (int r = 0; r < k; ++r)
    if ((packed >> (k - 1 - r)) & 1) out |= std::int64_t(1) << positions[r];
  return out;
}

inline GatePlan make_gate_plan(const Matrix& u, std::span<const int> sites,
                               const HilbertLayout& lay) {
  GatePlan p;
  p.k = int(sites.size());
  if (p.k < 1 || p.k > kMaxGateQubits)
    throw ConfigError("gate kernel: unsupported site count");
  p.ds = std::int64_t(1) << p.k;
  if (u.rows() != p.ds || u.cols() != p.ds)
    throw ConfigError("gate kernel: matrix dimension does not match sites");
  std::vector<int> site_pos;
  for (int q : sites) {
    if (q < 0 || q >= lay.total_qubits())
      throw ConfigError("gate kernel: site out of range");
    site_pos.push_back(lay.bit(q));
  }
  {
    std::vector<int> s = site_pos;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw ConfigError("gate kernel: repeated site");
  }
  std::vector<int> rest_pos;
  for (int pos = lay.total_qubits() - 1; pos >= 0; --pos)
    if (std::find(site_pos.begin(), site_pos.end(), pos) == site_pos.end())
      rest_pos.push_back(pos);

  p.dr = lay.dim() >> p.k;
  p.site_ix.resize(std::size_t(p.ds));
  for (std::int64_t a = 0; a < p.ds; ++a) p.site_ix[a] = deposit_bits(a, site_pos);
  p.rest_ix.resize(std::size_t(p.dr));
  for (std::int64_t r = 0; r < p.dr; ++r) p.rest_ix[r] = deposit_bits(r, rest_pos);
  return p;
}

// One rest-slice of a <- U_emb * a for a single column c.
inline void lmul_slice(Matrix& a, const Matrix& u, const GatePlan& p,
                       std::int64_t base, Eigen::Index c) {
  std::array<cx, kMaxGateDim> t;
  for (std::int64_t x = 0; x < p.ds; ++x) t[x] = a(base | p.site_ix[x], c);
  for (std::int64_t x = 0; x < p.ds; ++x) {
    cx acc = 0;
    for (std::int64_t y = 0; y < p.ds; ++y) acc += u(x, y) * t[y];
    a(base | p.site_ix[x], c) = acc;
  }
}

// One rest-slice of a <- a * U_emb^dag for a single row i.
inline void rmul_dag_slice(Matrix& a, const Matrix& u, const GatePlan& p,
                           std::int64_t base, Eigen::Index i) {
  std::array<cx, kMaxGateDim> t;
  for (std::int64_t x = 0; x < p.ds; ++x) t[x] = a(i, base | p.site_ix[x]);
  for (std::int64_t x = 0; x < p.ds; ++x) {
    cx acc = 0;
    for (std::int64_t y = 0; y < p.ds; ++y) acc += t[y] * std::conj(u(x, y));
    a(i, base | p.site_ix[x]) = acc;
  }
}

struct MixPlan {
  std::int64_t bit = 0;
  std::int64_t half = 0;              // dim / 2
  std::vector<std::int64_t> clear_ix; // indices with the qubit bit clear
};

inline MixPlan make_mix_plan(int qubit, const HilbertLayout& lay) {
  if (qubit < 0 || qubit >= lay.total_qubits())
    throw ConfigError("replace_mix: qubit out of range");
  MixPlan p;
  const int pos = lay.bit(qubit);
  p.bit = std::int64_t(1) << pos;
  p.half = lay.dim() >> 1;
  std::vector<int> rest_pos;
  for (int b = lay.total_qubits() - 1; b >= 0; --b)
    if (b != pos) rest_pos.push_back(b);
  p.clear_ix.resize(std::size_t(p.half));
  for (std::int64_t r = 0; r < p.half; ++r)
    p.clear_ix[r] = deposit_bits(r, rest_pos);
  return p;
}

// The 2x2 block update of rho <- (1-w) rho + w Phi_q(rho) for one
// (row-rest, column-rest) pair. Touches exactly four entries.
inline void mix_cell(Matrix& rho, const MixPlan& p, double w,
                     std::int64_t i0, std::int64_t j0) {
  const std::int64_t i1 = i0 | p.bit;
  const std::int64_t j1 = j0 | p.bit;
  const double keep = 1.0 - w;
  const cx avg = 0.5 * (rho(i0, j0) + rho(i1, j1));
  rho(i0, j0) = keep * rho(i0, j0) + w * avg;
  rho(i1, j1) = keep * rho(i1, j1) + w * avg;
  rho(i0, j1) *= keep;
  rho(i1, j0) *= keep;
}

}  // namespace qeclab::kern::detail
