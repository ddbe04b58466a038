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

#include "qeclab/noise.hpp"

#include <cmath>
#include <map>

#include "qeclab/kernels.hpp"

namespace qeclab {

namespace {

// Kraus set of the pure replacement channel: (1/sqrt 2) |mu><nu|.
std::vector<Matrix> replacement_small_kraus() {
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<Matrix> ks;
  ks.reserve(4);
  for (int mu = 0; mu < 2; ++mu)
    for (int nu = 0; nu < 2; ++nu) {
      Matrix k = Matrix::Zero(2, 2);
      k(mu, nu) = cx(s, 0.0);
      ks.push_back(std::move(k));
    }
  return ks;
}

// Kraus set of the mixture (1-w) Id + w Phi: sqrt(1-w) I plus the scaled
// replacement set. Valid for w in [0, 1].
std::vector<Matrix> mixture_small_kraus(double w) {
  std::vector<Matrix> ks;
  ks.reserve(5);
  ks.push_back(std::sqrt(1.0 - w) * Matrix::Identity(2, 2));
  for (Matrix& k : replacement_small_kraus())
    ks.push_back(std::sqrt(w) * k);
  return ks;
}

}  // namespace

ReplacementChannel ReplacementChannel::make(const HilbertLayout& lay,
                                            int qubit) {
  if (qubit < 0 || qubit >= lay.total_qubits())
    throw ConfigError("replacement channel: qubit index out of range");
  return ReplacementChannel{lay, qubit};
}

std::vector<Matrix> ReplacementChannel::small_kraus() const {
  return replacement_small_kraus();
}

std::vector<Matrix> ReplacementChannel::kraus() const {
  std::vector<Matrix> out;
  out.reserve(4);
  const int sites[1] = {qubit};
  for (const Matrix& k : small_kraus()) out.push_back(embed(k, sites, layout));
  return out;
}

void apply_phi(Matrix& rho, int qubit, const HilbertLayout& lay) {
  if (qubit < 0 || qubit >= lay.total_qubits())
    throw ConfigError("apply_phi: qubit index out of range");
  kern::replace_mix(rho, qubit, 1.0, lay);
}

DensityMatrix apply_phi(const DensityMatrix& rho, int qubit) {
  if (qubit < 0 || qubit >= rho.layout.register_qubits)
    throw ConfigError("apply_phi: qubit is not a register qubit");
  DensityMatrix out = rho;
  kern::replace_mix(out.rho, qubit, 1.0, out.layout);
  return out;
}

LindbladGenerator LindbladGenerator::make(const HilbertLayout& lay,
                                          double lambda_sq) {
  if (!(lambda_sq >= 0.0))
    throw ConfigError("lindblad generator: coupling rate must be >= 0");
  return LindbladGenerator{lay, lambda_sq};
}

Matrix apply_lindblad(const LindbladGenerator& gen, const Matrix& rho) {
  const HilbertLayout& lay = gen.layout;
  if (rho.rows() != lay.dim() || rho.cols() != lay.dim())
    throw ConfigError("apply_lindblad: dimension does not match layout");
  Matrix acc = Matrix::Zero(lay.dim(), lay.dim());
  for (int q = 0; q < lay.register_qubits; ++q) {
    Matrix tmp = rho;
    kern::replace_mix(tmp, q, 1.0, lay);
    acc += tmp - rho;
  }
  return gen.lambda_sq * acc;
}

double semigroup_weight(double lambda_sq, double t) {
  if (!(lambda_sq >= 0.0) || !(t >= 0.0))
    throw ConfigError("semigroup weight: rate and time must be >= 0");
  return 1.0 - std::exp(-lambda_sq * t);
}

void DiscreteErrorMap::apply(Matrix& rho) const {
  if (rho.rows() != layout.dim() || rho.cols() != layout.dim())
    throw ConfigError("error map: dimension does not match layout");
  for (const Stage& s : stages)
    kern::replace_mix(rho, s.qubit, s.weight, layout);
}

Matrix DiscreteErrorMap::applied(const Matrix& rho) const {
  Matrix out = rho;
  apply(out);
  return out;
}

DiscreteErrorMap discrete_error_from_time(const HilbertLayout& lay,
                                          double lambda_sq, double t_clock) {
  const double w = semigroup_weight(lambda_sq, t_clock);
  DiscreteErrorMap map;
  map.layout = lay;
  for (int q = 0; q < lay.register_qubits; ++q)
    map.stages.push_back({q, w, mixture_small_kraus(w)});
  map.deviation_bound = deviation_from_identity(map);
  return map;
}

DiscreteErrorMap identity_error_map(const HilbertLayout& lay) {
  DiscreteErrorMap map;
  map.layout = lay;
  map.deviation_bound = 0.0;
  return map;
}

double deviation_from_identity(const DiscreteErrorMap& map) {
  // The map is a product of per-qubit mixtures (1-w) Id + w Phi. Repeated
  // stages on one qubit compose to a single mixture with
  // 1 - w_eff = prod (1 - w_i) since Phi is idempotent. The normalized Choi
  // state of one mixture has eigenvalue 1 - 3w/4 on the maximally entangled
  // vector and w/4 on its 3-dimensional complement; the product-map Choi is
  // the tensor product of those factors, so
  //   (1/2) || C_E - C_Id ||_1 = 1 - prod_q (1 - (3/4) w_eff_q),
  // which tests cross-check against the explicit Choi construction.
  std::map<int, double> survive;  // qubit -> prod (1 - w_i)
  for (const auto& s : map.stages) {
    if (s.qubit < 0 || s.qubit >= map.layout.total_qubits())
      throw ConfigError("error map: stage qubit out of range");
    if (s.weight < 0.0 || s.weight > 1.0)
      throw ConfigError("error map: stage weight outside [0, 1]");
    survive.emplace(s.qubit, 1.0).first->second *= 1.0 - s.weight;
  }
  double prod = 1.0;
  for (const auto& [q, keep] : survive) prod *= 1.0 - 0.75 * (1.0 - keep);
  return 1.0 - prod;
}

Matrix choi_state(const std::vector<Matrix>& kraus, std::int64_t dim) {
  if (dim < 1 || dim > 64)
    throw ConfigError("choi_state: dimension must be in [1, 64]");
  Matrix c = Matrix::Zero(dim * dim, dim * dim);
  const double scale = 1.0 / double(dim);
  for (const Matrix& k : kraus) {
    if (k.rows() != dim || k.cols() != dim)
      throw ConfigError("choi_state: Kraus dimension mismatch");
    // v[(a, i)] = K(a, i): the row-major flattening is (K (x) I)|Omega>
    // up to the 1/sqrt(dim) normalization folded into `scale`.
    Vector v(dim * dim);
    for (std::int64_t a = 0; a < dim; ++a)
      for (std::int64_t i = 0; i < dim; ++i) v[a * dim + i] = k(a, i);
    c.noalias() += scale * (v * v.adjoint());
  }
  return c;
}

}  // namespace qeclab
