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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "qeclab/kernels.hpp"
#include "qeclab/noise.hpp"
#include "test_util.hpp"

using namespace qeclab;
using testutil::Rng;

TEST_CASE("replacement channel: Kraus set is (1/sqrt 2)|mu><nu| and complete") {
  const HilbertLayout lay = HilbertLayout::make(2, 0);
  const ReplacementChannel ch = ReplacementChannel::make(lay, 1);
  const std::vector<Matrix> ks = ch.small_kraus();
  REQUIRE(ks.size() == 4);
  const double s = 1.0 / std::sqrt(2.0);
  Matrix sum = Matrix::Zero(2, 2);
  int seen[2][2] = {{0, 0}, {0, 0}};
  for (const Matrix& k : ks) {
    REQUIRE(k.rows() == 2);
    sum += k.adjoint() * k;
    // Each operator is s * |mu><nu| for exactly one (mu, nu).
    int hits = 0, mu = -1, nu = -1;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        if (std::abs(k(r, c)) > 1e-15) {
          ++hits;
          mu = r;
          nu = c;
        }
    REQUIRE(hits == 1);
    CHECK(std::abs(k(mu, nu) - cx(s, 0.0)) < 1e-15);
    seen[mu][nu] += 1;
  }
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) CHECK(seen[r][c] == 1);
  CHECK(testutil::max_abs(Matrix(sum - Matrix::Identity(2, 2))) < 1e-14);

  // Full-dimension Kraus resolve the identity too.
  Matrix big = Matrix::Zero(4, 4);
  for (const Matrix& k : ch.kraus()) big += k.adjoint() * k;
  CHECK(testutil::max_abs(Matrix(big - Matrix::Identity(4, 4))) < 1e-14);
}

TEST_CASE("apply_phi: trace out and refill, Kraus-sum form, idempotent") {
  Rng rng(41);
  const HilbertLayout lay = HilbertLayout::make(3, 0);
  const ReplacementChannel ch = ReplacementChannel::make(lay, 2);
  const Matrix rho = testutil::random_density(8, 3, rng);

  Matrix via_kernel = rho;
  apply_phi(via_kernel, 2, lay);

  Matrix via_kraus = Matrix::Zero(8, 8);
  for (const Matrix& k : ch.kraus()) via_kraus += k * rho * k.adjoint();
  CHECK(testutil::max_abs(Matrix(via_kernel - via_kraus)) < 1e-13);

  // The output register marginal on the hit qubit is maximally mixed.
  const std::vector<int> keep_others{0, 1};
  const Matrix marg = partial_trace(via_kernel, lay, keep_others);
  CHECK(testutil::max_abs(Matrix(marg - Matrix::Identity(2, 2) / 2.0)) < 1e-13);

  // Idempotent and unital.
  Matrix twice = via_kernel;
  apply_phi(twice, 2, lay);
  CHECK(testutil::max_abs(Matrix(twice - via_kernel)) < 1e-13);
  Matrix mixed = Matrix::Identity(8, 8) / 8.0;
  apply_phi(mixed, 2, lay);
  CHECK(testutil::max_abs(Matrix(mixed - Matrix::Identity(8, 8) / 8.0)) < 1e-14);
}

TEST_CASE("apply_phi is self-dual: Tr[A Phi(B)] = Tr[Phi(A) B]") {
  Rng rng(42);
  const HilbertLayout lay = HilbertLayout::make(2, 0);
  const Matrix a = testutil::random_hermitian(4, rng);
  const Matrix b = testutil::random_hermitian(4, rng);
  Matrix phi_b = b;
  apply_phi(phi_b, 0, lay);
  Matrix phi_a = a;
  apply_phi(phi_a, 0, lay);
  const cx lhs = (a * phi_b).trace();
  const cx rhs = (phi_a * b).trace();
  CHECK(std::abs(lhs - rhs) < 1e-13);
}

TEST_CASE("choi state of the replacement channel is the maximally mixed state") {
  const HilbertLayout lay = HilbertLayout::make(1, 0);
  const ReplacementChannel ch = ReplacementChannel::make(lay, 0);
  const Matrix c = choi_state(ch.kraus(), 2);
  REQUIRE(c.rows() == 4);
  CHECK(std::abs(c.trace().real() - 1.0) < 1e-14);
  CHECK(min_eigenvalue(c) > -1e-14);
  CHECK(testutil::max_abs(Matrix(c - Matrix::Identity(4, 4) / 4.0)) < 1e-13);
}

TEST_CASE("deviation from identity: single-stage closed form 3w/4") {
  // Choi of the identity is a rank-one projector; Choi of the replacement
  // channel is maximally mixed; the normalized trace distance of the
  // weight-w mixture is therefore w * (1/2)||1/4 - P|| = 3w/4.
  const HilbertLayout lay = HilbertLayout::make(1, 0);
  for (const double w : {1.0, 0.5, 0.12345, 0.0}) {
    DiscreteErrorMap map = discrete_error_from_time(lay, 1.0, 1.0);
    REQUIRE(map.stages.size() == 1);
    map.stages[0].weight = w;
    CHECK(std::abs(deviation_from_identity(map) - 0.75 * w) < 1e-12);
  }
}

TEST_CASE("deviation from identity: exact Choi numerics on two qubits") {
  // Independent evaluation: assemble the full Kraus family of the two-stage
  // mixture and compare the exact Choi trace distance with the library's.
  const HilbertLayout lay = HilbertLayout::make(2, 0);
  const double lambda_sq = 0.3, t = 0.7;
  const DiscreteErrorMap map = discrete_error_from_time(lay, lambda_sq, t);
  REQUIRE(map.stages.size() == 2);
  const double w = semigroup_weight(lambda_sq, t);
  for (const auto& st : map.stages) CHECK(st.weight == doctest::Approx(w));

  std::vector<Matrix> family{Matrix::Identity(4, 4)};
  for (const auto& st : map.stages) {
    const ReplacementChannel ch = ReplacementChannel::make(lay, st.qubit);
    std::vector<Matrix> next;
    for (const Matrix& prefix : family) {
      next.push_back(std::sqrt(1.0 - st.weight) * prefix);
      for (const Matrix& k : ch.kraus())
        next.push_back(std::sqrt(st.weight) * (k * prefix));
    }
    family = std::move(next);
  }
  const Matrix c_map = choi_state(family, 4);
  std::vector<Matrix> id{Matrix::Identity(4, 4)};
  const Matrix c_id = choi_state(id, 4);
  const double exact = 0.5 * trace_norm(Matrix(c_map - c_id));
  CHECK(std::abs(deviation_from_identity(map) - exact) < 1e-10);
}

TEST_CASE("semigroup weight and the semigroup composition law") {
  Rng rng(43);
  CHECK(semigroup_weight(0.0, 5.0) == doctest::Approx(0.0));
  CHECK(semigroup_weight(1.0, 0.0) == doctest::Approx(0.0));
  CHECK(semigroup_weight(0.25, 2.0) == doctest::Approx(1.0 - std::exp(-0.5)));

  // e^{t1 L} e^{t2 L} = e^{(t1+t2) L}: mixture weights compose as
  // w12 = w1 + w2 - w1 w2, verified through the kernel itself.
  const HilbertLayout lay = HilbertLayout::make(2, 0);
  const double l2 = 0.8, t1 = 0.3, t2 = 0.9;
  const double w1 = semigroup_weight(l2, t1);
  const double w2 = semigroup_weight(l2, t2);
  const double w12 = semigroup_weight(l2, t1 + t2);
  CHECK(std::abs(w12 - (w1 + w2 - w1 * w2)) < 1e-14);

  const Matrix rho = testutil::random_density(4, 2, rng);
  Matrix stepped = rho;
  kern::replace_mix(stepped, 1, w1, lay);
  kern::replace_mix(stepped, 1, w2, lay);
  Matrix combined = rho;
  kern::replace_mix(combined, 1, w12, lay);
  CHECK(testutil::max_abs(Matrix(stepped - combined)) < 1e-13);
}

TEST_CASE("lindblad generator: traceless, hermitian, kernel, first order") {
  Rng rng(44);
  const HilbertLayout lay = HilbertLayout::make(2, 1);
  const double l2 = 0.6;
  const LindbladGenerator gen = LindbladGenerator::make(lay, l2);
  const Matrix rho = testutil::random_density(8, 3, rng);
  const Matrix lrho = apply_lindblad(gen, rho);

  CHECK(std::abs(lrho.trace()) < 1e-13);
  CHECK(is_hermitian(lrho, 1e-12));

  // Vanishes when the register marginal is maximally mixed.
  Rng rng2(45);
  const Matrix anc = testutil::random_density(2, 2, rng2);
  const Matrix fixed = tensor_product(Matrix(Matrix::Identity(4, 4) / 4.0), anc);
  CHECK(testutil::max_abs(apply_lindblad(gen, fixed)) < 1e-13);

  // Matches the exact semigroup to first order: the register-qubit mixture
  // steps with w = 1 - e^{-l2 eps} reproduce rho + eps L rho + O(eps^2).
  const double eps = 1e-4;
  Matrix stepped = rho;
  const double w = semigroup_weight(l2, eps);
  kern::replace_mix(stepped, 0, w, lay);
  kern::replace_mix(stepped, 1, w, lay);
  const Matrix first_order = rho + eps * lrho;
  CHECK(testutil::max_abs(Matrix(stepped - first_order)) < 10.0 * eps * eps);
}

TEST_CASE("discrete error map from time: stages, application, identity map") {
  Rng rng(46);
  const HilbertLayout lay = HilbertLayout::make(3, 2);
  const double l2 = 0.2, t = 1.5;
  const DiscreteErrorMap map = discrete_error_from_time(lay, l2, t);
  // One stage per register qubit; ancillas untouched.
  REQUIRE(map.stages.size() == 3);
  const double w = semigroup_weight(l2, t);
  for (std::size_t i = 0; i < map.stages.size(); ++i) {
    CHECK(map.stages[i].qubit == int(i));
    CHECK(map.stages[i].weight == doctest::Approx(w));
  }
  const double keep = 1.0 - 0.75 * w;
  CHECK(map.deviation_bound == doctest::Approx(1.0 - keep * keep * keep));

  const Matrix rho = testutil::random_density(32, 2, rng);
  Matrix manual = rho;
  for (int q = 0; q < 3; ++q) kern::replace_mix(manual, q, w, lay);
  CHECK(testutil::max_abs(Matrix(map.applied(rho) - manual)) < 1e-13);

  const DiscreteErrorMap id = identity_error_map(lay);
  CHECK(id.stages.empty());
  CHECK(id.deviation_bound == doctest::Approx(0.0));
  CHECK(testutil::max_abs(Matrix(id.applied(rho) - rho)) < 1e-15);
}
