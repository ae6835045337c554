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
#include "test_util.hpp"

using namespace qclone;
using Catch::Approx;

namespace {

DensityOperator diag2q(double a, double b, double c, double d) {
  Mat m = Mat::Zero(4, 4);
  m.diagonal() << a, b, c, d;
  return {{2, 2}, m};
}

// Mixture of random product states: separable by construction.
DensityOperator random_separable(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Mat m = Mat::Zero(4, 4);
  double total = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double w = u(rng);
    m += w * tensor(testutil::random_density({2}, rng), testutil::random_density({2}, rng)).mat;
    total += w;
  }
  return {{2, 2}, m / total};
}

DensityOperator random_pure_mixture(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int terms = 1 + static_cast<int>(u(rng) * 3);
  Mat m = Mat::Zero(4, 4);
  double total = 0.0;
  for (int k = 0; k < terms; ++k) {
    const double w = u(rng);
    m += w * projector(testutil::random_state({2, 2}, rng)).mat;
    total += w;
  }
  return {{2, 2}, m / total};
}

}  // namespace

TEST_CASE("fidelity between mixed states", "[measures]") {
  const DensityOperator p0 = projector(basis_state({2}, 0));
  const DensityOperator p1 = projector(basis_state({2}, 1));
  CHECK(fidelity_mixed(p0, p0) == Approx(1.0));
  CHECK(fidelity_mixed(p0, p1) == Approx(0.0).margin(1e-12));
  CHECK(fidelity_mixed(p0, maximally_mixed({2})) == Approx(1.0 / std::sqrt(2.0)));
  CHECK_THROWS(fidelity_mixed(p0, maximally_mixed({2, 2})));

  std::mt19937_64 rng(21);
  for (int t = 0; t < 20; ++t) {
    const DensityOperator r = testutil::random_density({2, 2}, rng);
    const DensityOperator s = testutil::random_density({2, 2}, rng);
    CHECK(std::abs(fidelity_mixed(r, s) - fidelity_mixed(s, r)) < 1e-12);
    CHECK(fidelity_mixed(r, r) == Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("overlap and pure-state fidelity", "[measures]") {
  const StateVector psi = qubit_from_alpha2(0.3, 0.7);
  CHECK(overlap(psi, projector(psi)) == Approx(1.0));
  CHECK(overlap(basis_state({2}, 0), maximally_mixed({2})) == Approx(0.5));
  CHECK(fidelity_pure(basis_state({2}, 0), maximally_mixed({2})) == Approx(std::sqrt(0.5)));
  const CloneReport r = clone_report(MachineSpec::bh_opt(), psi);
  CHECK(overlap(psi, r.rho_a) == Approx(5.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("Hilbert-Schmidt distance", "[measures]") {
  std::mt19937_64 rng(4);
  const DensityOperator r = testutil::random_density({2}, rng);
  CHECK(hs_distance(r, r) == Approx(0.0).margin(1e-15));
  const CloneReport wz = clone_report(MachineSpec::wz(), qubit_from_alpha2(0.5));
  CHECK(wz.D_a == Approx(0.5));
  const CloneReport bh = clone_report(MachineSpec::bh_opt(), qubit_from_alpha2(0.8, 1.1));
  CHECK(bh.D_a == Approx(1.0 / 18.0));
}

TEST_CASE("entropies", "[measures]") {
  CHECK(von_neumann_entropy(projector(basis_state({2}, 0)), EntropyBase::Two) == Approx(0.0).margin(1e-12));
  CHECK(von_neumann_entropy(maximally_mixed({2}), EntropyBase::Two) == Approx(1.0));
  CHECK(von_neumann_entropy(maximally_mixed({3}), EntropyBase::Natural) == Approx(std::log(3.0)));
  CHECK(copier_entropy(2) == Approx(std::log(3.0) - 2.0 * std::log(2.0) / 3.0));
  CHECK(copier_entropy(2) == Approx(0.6365).margin(5e-5));

  CHECK(entropy_of_entanglement(bell_state(BellLabel::PsiMinus), {0}, EntropyBase::Two) == Approx(1.0));
  CHECK(entropy_of_entanglement(basis_state({2, 2}, 2), {0}, EntropyBase::Two) == Approx(0.0).margin(1e-12));
  Vec a = Vec::Zero(4);
  a[0] = std::sqrt(0.8);
  a[3] = std::sqrt(0.2);
  const double h = -0.8 * std::log2(0.8) - 0.2 * std::log2(0.2);
  CHECK(entropy_of_entanglement({{2, 2}, a}, {0}, EntropyBase::Two) == Approx(h));
  CHECK(h == Approx(0.7219).margin(5e-5));

  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    const StateVector psi = testutil::random_state({2, 3}, rng);
    CHECK(entropy_of_entanglement(psi, {0}, EntropyBase::Two) ==
          Approx(entropy_of_entanglement(psi, {1}, EntropyBase::Two)).margin(1e-9));
    const DensityOperator r = testutil::random_density({3}, rng);
    CHECK(std::abs(von_neumann_entropy(r, EntropyBase::Natural) -
                   von_neumann_entropy(r, EntropyBase::Two) * std::log(2.0)) < 1e-12);
  }
}

TEST_CASE("concurrence and entanglement of formation", "[measures]") {
  CHECK(concurrence_2q(projector(bell_state(BellLabel::PsiPlus))) == Approx(1.0));
  CHECK(concurrence_2q(diag2q(0.1, 0.2, 0.3, 0.4)) == Approx(0.0).margin(1e-12));
  CHECK(concurrence_pure(bell_state(BellLabel::PhiPlus)) == Approx(1.0));
  CHECK(concurrence_pure(basis_state({2, 2}, 0)) == Approx(0.0).margin(1e-12));
  Vec a = Vec::Zero(4);
  a[0] = std::sqrt(0.8);
  a[3] = std::sqrt(0.2);
  CHECK(concurrence_pure({{2, 2}, a}) == Approx(0.8));
  CHECK_THROWS(concurrence_2q(maximally_mixed({2, 3})));

  CHECK(eof_from_concurrence(1.0) == Approx(1.0));
  CHECK(eof_from_concurrence(0.0) == Approx(0.0).margin(1e-15));
  CHECK(eof_from_concurrence(1.0 / 3.0) == Approx(0.1873).margin(5e-5));
  CHECK(eof_from_concurrence(2.0 / 3.0) == Approx(0.55).margin(5e-3));
  CHECK_THROWS(eof_from_concurrence(1.5));
  double prev = -1.0;
  for (int k = 0; k <= 20; ++k) {
    const double e = eof_from_concurrence(k / 20.0);
    CHECK(e >= prev);
    prev = e;
  }

  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    const StateVector psi = testutil::random_state({2, 2}, rng);
    const DensityOperator ra = partial_trace(psi, {0});
    const double purity = (ra.mat * ra.mat).trace().real();
    const double c = concurrence_pure(psi);
    CHECK(c == Approx(std::sqrt(2.0 * (1.0 - purity))).margin(1e-9));
    CHECK(c == Approx(concurrence_2q(projector(psi))).margin(1e-9));
    CHECK(c == Approx(negativity(projector(psi), {0})).margin(1e-9));
  }
}

TEST_CASE("negativity", "[measures]") {
  CHECK(negativity(projector(bell_state(BellLabel::PhiPlus)), {0}) == Approx(1.0));
  CHECK(negativity(diag2q(0.25, 0.25, 0.25, 0.25), {0}) == Approx(0.0).margin(1e-12));
  // maximally entangled qutrits have unit normalized negativity
  Vec m = Vec::Zero(9);
  for (int k = 0; k < 3; ++k) m[k * 3 + k] = 1.0 / std::sqrt(3.0);
  CHECK(negativity(projector({{3, 3}, m}), {0}) == Approx(1.0));
}

TEST_CASE("PPT verdict and determinant test", "[measures]") {
  CHECK(ppt_verdict(projector(bell_state(BellLabel::PsiPlus)), {0}).verdict == Verdict::Inseparable);
  CHECK(ppt_verdict(maximally_mixed({2, 2}), {0}).verdict == Verdict::Separable);
  CHECK(ppt_verdict(maximally_mixed({3, 3}), {0}).verdict == Verdict::Unknown);

  const WDeterminants w00 = w_determinants(projector(basis_state({2, 2}, 0)));
  CHECK(w00.w2 >= 0.0);
  CHECK(w00.w3 >= 0.0);
  CHECK(w00.w4 >= 0.0);

  // two-clone output of the optimal copier: W4 = -1/6^4 for every input
  for (double a2 : {0.0, 0.2, 0.5, 0.9}) {
    const CloneReport r = clone_report(MachineSpec::bh_opt(), qubit_from_alpha2(a2));
    const WDeterminants w = w_determinants(r.rho_out);
    CHECK(w.w4 == Approx(-1.0 / 1296.0).margin(1e-12));
    CHECK(ppt_verdict(r.rho_out, {0}).verdict == Verdict::Inseparable);
  }

  std::mt19937_64 rng(31);
  int disagreements = 0;
  for (int t = 0; t < 1000; ++t) {
    const DensityOperator r = t % 2 == 0 ? random_separable(rng) : random_pure_mixture(rng);
    const SeparabilityVerdict v = ppt_verdict(r, {0});
    if ((v.verdict == Verdict::Inseparable) != v.w.signals_inseparable()) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("signaling with a perfect copier", "[measures]") {
  const HerbertResult h = herbert_ensembles();
  Mat rz = Mat::Zero(4, 4);
  rz(0, 0) = rz(3, 3) = 0.5;
  CHECK(max_abs(h.rho_z.mat - rz) < 1e-12);
  CHECK(std::abs(h.rho_x.mat(0, 3) - cplx(0.25)) < 1e-12);
  CHECK(h.hs_gap > 0.0);

  for (const MachineSpec& s : {MachineSpec::bh_opt(), MachineSpec::wz(), MachineSpec::pc2(),
                               MachineSpec::pauli(0.3), MachineSpec::anti(), MachineSpec::bh(0.25)}) {
    CHECK(herbert_gap_with(build_machine(s)) < 1e-9);
  }
}
