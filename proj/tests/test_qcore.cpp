// Copyright 2026 The qclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qclone/cloners.hpp"
#include "qclone/measures.hpp"
#include "qclone/qcore.hpp"
#include "test_util.hpp"

using namespace qclone;
using Catch::Approx;

TEST_CASE("tensor follows the left-most-significant convention", "[qcore]") {
  const DensityOperator i2 = maximally_mixed({2});
  const DensityOperator i4 = tensor(i2, i2);
  CHECK(max_abs(i4.mat * 4.0 - Mat::Identity(4, 4)) < 1e-15);
  const StateVector k01 = tensor(basis_state({2}, 0), basis_state({2}, 1));
  CHECK(std::abs(k01.amps[1] - cplx(1.0)) < 1e-15);
  CHECK(k01.dims == Dims{2, 2});
}

TEST_CASE("tensor of projectors matches an index-loop oracle", "[qcore]") {
  const DensityOperator a = projector(bell_state(BellLabel::PsiPlus));
  const DensityOperator b = projector(basis_state({2}, 0));
  const DensityOperator t = tensor(a, b);
  Mat oracle = Mat::Zero(8, 8);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) oracle(i * 2 + k, j * 2 + l) = a.mat(i, j) * b.mat(k, l);
  CHECK(max_abs(t.mat - oracle) < 1e-15);
  CHECK(std::abs(t.mat.trace() - cplx(1.0)) < 1e-12);
  CHECK(hermitian_eigvals(t.mat)[1] == Approx(0.0).margin(1e-12));
}

TEST_CASE("partial trace examples", "[qcore]") {
  const DensityOperator bell = projector(bell_state(BellLabel::PsiPlus));
  CHECK(max_abs(partial_trace(bell, {0}).mat - 0.5 * Mat::Identity(2, 2)) < 1e-15);
  const DensityOperator p00 = projector(basis_state({2, 2}, 0));
  CHECK(max_abs(partial_trace(p00, {0}).mat - projector(basis_state({2}, 0)).mat) < 1e-15);
  CHECK_THROWS(partial_trace(bell, {2}));
  CHECK_THROWS(partial_trace(bell, {}));

  // Wootters-Zurek output traced over the machine is diag(a^2, 0, 0, b^2).
  const double a2 = 0.3;
  const StateVector psi = qubit_from_alpha2(a2);
  const DensityOperator out = apply_isometry(build_machine(MachineSpec::wz()), projector(psi));
  const DensityOperator ab = partial_trace(out, {0, 1});
  Mat expect = Mat::Zero(4, 4);
  expect(0, 0) = a2;
  expect(3, 3) = 1.0 - a2;
  CHECK(max_abs(ab.mat - expect) < 1e-12);
}

TEST_CASE("partial trace of a ket agrees with the projector path", "[qcore]") {
  std::mt19937_64 rng(7);
  const StateVector psi = testutil::random_state({2, 3, 2}, rng);
  for (const std::vector<int>& keep : {std::vector<int>{0}, {1}, {2}, {0, 2}, {1, 2}}) {
    CHECK(max_abs(partial_trace(psi, keep).mat - partial_trace(projector(psi), keep).mat) < 1e-12);
  }
}

TEST_CASE("partial trace undoes the tensor product", "[qcore][property]") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const DensityOperator r = testutil::random_density({2}, rng);
    const DensityOperator s = testutil::random_density({3}, rng);
    CHECK(max_abs(partial_trace(tensor(r, s), {0}).mat - r.mat) < 1e-12);
    CHECK(max_abs(partial_trace(tensor(r, s), {1}).mat - s.mat) < 1e-12);
  }
}

TEST_CASE("partial transpose", "[qcore]") {
  Mat diag = Mat::Zero(4, 4);
  diag.diagonal() << 0.1, 0.2, 0.3, 0.4;
  CHECK(max_abs(partial_transpose(diag, {2, 2}, 1) - diag) < 1e-15);

  const DensityOperator phi = projector(bell_state(BellLabel::PhiPlus));
  const auto ev = hermitian_eigvals(partial_transpose(phi, 1));
  CHECK(ev[0] == Approx(0.5));
  CHECK(ev[2] == Approx(0.5));
  CHECK(ev[3] == Approx(-0.5));

  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const DensityOperator r = testutil::random_density({2, 3}, rng);
    const Mat once = partial_transpose(r, 0);
    CHECK(max_abs(partial_transpose(once, r.dims, 0) - r.mat) < 1e-15);
    CHECK(std::abs(once.trace() - r.mat.trace()) < 1e-12);
  }
}

TEST_CASE("hermitian eigenvalues", "[qcore]") {
  const auto e = hermitian_eigvals(Mat::Identity(2, 2));
  CHECK(e == std::vector<double>{1.0, 1.0});
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 0.3;
  d(1, 1) = 0.7;
  const auto f = hermitian_eigvals(d);
  CHECK(f[0] == Approx(0.7));
  CHECK(f[1] == Approx(0.3));
  Mat bad = Mat::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS(hermitian_eigvals(bad));

  // characteristic polynomial of PT(|phi+><phi+|): (x - 1/2)^3 (x + 1/2)
  const Mat pt = partial_transpose(projector(bell_state(BellLabel::PhiPlus)), 1);
  for (double x : hermitian_eigvals(pt)) {
    const cplx det = (pt - x * Mat::Identity(4, 4)).determinant();
    CHECK(std::abs(det) < 1e-12);
  }
}

TEST_CASE("Gram realization", "[qcore]") {
  const Mat id = realize_gram({{"a", "b", "c"}, Mat::Identity(3, 3)});
  CHECK(max_abs(id.adjoint() * id - Mat::Identity(3, 3)) < 1e-12);

  const GramMachine bh = machine_model(MachineSpec::bh(1.0 / 6.0));
  const Mat g = bh.machine.gram;
  CHECK(g(0, 3).real() == Approx(1.0 / 3.0));
  const Mat v = realize_gram(bh.machine);
  CHECK(max_abs(v.adjoint() * v - g) < 1e-12);

  const GramMachine bad = machine_model(MachineSpec::bh(0.1, 0.9));
  try {
    realize_gram(bad.machine);
    FAIL("expected UnrealizableSpec");
  } catch (const UnrealizableSpec& e) {
    CHECK(e.min_eigenvalue < 0.0);
  }

  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    Mat a = testutil::random_matrix(5, 3, rng);
    const Mat gram = a.adjoint() * a;
    const Mat r = realize_gram({{}, gram});
    CHECK(r.rows() == 3);
    CHECK(max_abs(r.adjoint() * r - gram) < 1e-9);
  }
}

TEST_CASE("isometry application", "[qcore]") {
  const MachineIsometry wz = build_machine(MachineSpec::wz());
  const DensityOperator out = apply_isometry(wz, projector(basis_state({2}, 0)));
  CHECK(std::abs(partial_trace(out, {0, 1}).mat(0, 0) - cplx(1.0)) < 1e-12);
  CHECK(hermitian_eigvals(out.mat)[1] == Approx(0.0).margin(1e-12));

  const MachineIsometry id{{2}, {2}, Mat::Identity(2, 2)};
  std::mt19937_64 rng(2);
  const DensityOperator r = testutil::random_density({2}, rng);
  CHECK(max_abs(apply_isometry(id, r).mat - r.mat) < 1e-15);
  CHECK_THROWS(apply_isometry(id, maximally_mixed({3})));

  const MachineIsometry bh = build_machine(MachineSpec::bh_opt());
  const StateVector psi = qubit_from_alpha2(0.5);
  const DensityOperator ra = partial_trace(apply_isometry(bh, projector(psi)), {0});
  const Mat expect = 5.0 / 6.0 * projector(psi).mat + 1.0 / 6.0 * projector(qubit_from_alpha2(0.5, M_PI)).mat;
  CHECK(max_abs(ra.mat - expect) < 1e-12);
}

TEST_CASE("isometries preserve trace and positivity", "[qcore][property]") {
  std::mt19937_64 rng(13);
  const MachineIsometry v = build_machine(MachineSpec::pauli(0.3));
  for (int t = 0; t < 20; ++t) {
    const DensityOperator r = testutil::random_density({2}, rng);
    const DensityOperator o = apply_isometry(v, r);
    CHECK(std::abs(o.mat.trace() - cplx(1.0)) < 1e-12);
    CHECK(hermitian_eigvals(o.mat).back() > -1e-9);
  }
}

TEST_CASE("Schmidt coefficients", "[qcore]") {
  Vec a = Vec::Zero(4);
  a[0] = std::sqrt(0.3);
  a[3] = std::sqrt(0.7);
  const auto s = schmidt({{2, 2}, a}, {0});
  CHECK(s[0] == Approx(0.7));
  CHECK(s[1] == Approx(0.3));
  CHECK(schmidt(basis_state({2, 2}, 1), {0}).size() == 1);
  const auto sing = schmidt(bell_state(BellLabel::PsiMinus), {0});
  CHECK(sing[0] == Approx(0.5));
  CHECK(sing[1] == Approx(0.5));

  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    const StateVector psi = testutil::random_state({2, 2}, rng);
    const auto l = schmidt(psi, {0});
    const double c = l.size() > 1 ? 2.0 * std::sqrt(l[0] * l[1]) : 0.0;
    CHECK(c == Approx(concurrence_pure(psi)).margin(1e-9));
  }
}

TEST_CASE("Bell projection and swapping", "[qcore]") {
  const StateVector phi = bell_state(BellLabel::PhiPlus);
  const DensityOperator two = projector(tensor(phi, phi));
  double total = 0.0;
  for (BellLabel b : {BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus}) {
    const BellOutcome o = bell_project(two, 1, 2, b);
    CHECK(o.probability == Approx(0.25));
    total += o.probability;
  }
  CHECK(total == Approx(1.0));
  const BellOutcome o = bell_project(two, 1, 2, BellLabel::PhiPlus);
  CHECK(max_abs(o.state.mat - projector(phi).mat) < 1e-12);

  const BellOutcome z = bell_project(projector(basis_state({2, 2, 2}, 0)), 0, 1, BellLabel::PsiMinus);
  CHECK(z.probability == Approx(0.0).margin(1e-15));
  CHECK_FALSE(z.valid);
  CHECK_THROWS(bell_project(two, 1, 1, BellLabel::PhiPlus));
}

TEST_CASE("formal Gram reduction matches the realized machine", "[qcore]") {
  const GramMachine m = machine_model(MachineSpec::bh(0.25));
  const MachineIsometry v = realize_machine(m);
  const DensityOperator in = projector(qubit_from_alpha2(0.37, 0.4));
  const DensityOperator real = partial_trace(apply_isometry(v, in), {0, 1});
  CHECK(max_abs(formal_apply(m, in).mat - real.mat) < 1e-12);
  CHECK(formal_isometry_defect(m) < 1e-12);
}
