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

#include "qclone/hybrid.hpp"
#include "qclone/measures.hpp"
#include "test_util.hpp"

using namespace qclone;
using Catch::Approx;

namespace {

double round2(double x) { return std::round(x * 100.0) / 100.0; }

}  // namespace

TEST_CASE("hybrid machine is an isometry with a flag qubit", "[hybrid]") {
  for (const HybridSpec& s : {HybridSpec{MachineSpec::bh_opt(), MachineSpec::pc2(), 0.3},
                              HybridSpec{MachineSpec::pauli(0.2), MachineSpec::bh_opt(), 0.7},
                              HybridSpec{MachineSpec::bh_opt(), MachineSpec::anti(), 0.0},
                              HybridSpec{MachineSpec::wz(), MachineSpec::bh(0.25), 1.0}}) {
    const MachineIsometry v = hybrid_machine(s);
    CHECK(isometry_defect(v) < 1e-12);
    CHECK(v.out_dims.back() == 2);
    CHECK(formal_isometry_defect(hybrid_model(s)) < 1e-12);
  }
  CHECK_THROWS_AS(hybrid_machine({MachineSpec::bh_opt(), MachineSpec::gm(3), 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(hybrid_machine({MachineSpec::bh_opt(), MachineSpec::pc2(), 1.5}), std::invalid_argument);
  CHECK_THROWS_AS(hybrid_machine(bhbh_spec(0.1, 0.5)), UnrealizableSpec);
}

TEST_CASE("hybrid outputs are convex combinations", "[hybrid][property]") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<std::pair<MachineSpec, MachineSpec>> pairs = {
      {MachineSpec::bh_opt(), MachineSpec::pc2()}, {MachineSpec::pauli(0.3), MachineSpec::bh_opt()},
      {MachineSpec::bh_opt(), MachineSpec::anti()}, {MachineSpec::bh(0.3), MachineSpec::wz()}};
  for (const auto& [m1, m2] : pairs) {
    for (int t = 0; t < 5; ++t) {
      const double lambda = u(rng);
      const StateVector psi = testutil::random_state({2}, rng);
      const CloneReport h = hybrid_report({m1, m2, lambda}, psi);
      const CloneReport a = clone_report(m1, psi), b = clone_report(m2, psi);
      CHECK(max_abs(h.rho_out.mat - (lambda * a.rho_out.mat + (1 - lambda) * b.rho_out.mat)) < 1e-9);
      const CloneReport f = hybrid_report({m1, m2, lambda}, psi, true);
      CHECK(max_abs(f.rho_out.mat - h.rho_out.mat) < 1e-12);
    }
  }
  // the endpoints reduce to the components
  const StateVector psi = qubit_from_alpha2(0.3, 0.2);
  CHECK(max_abs(hybrid_report({MachineSpec::bh_opt(), MachineSpec::pc2(), 1.0}, psi).rho_a.mat -
                clone_report(MachineSpec::bh_opt(), psi).rho_a.mat) < 1e-12);
  CHECK(max_abs(hybrid_report({MachineSpec::bh_opt(), MachineSpec::pc2(), 0.0}, psi).rho_a.mat -
                clone_report(MachineSpec::pc2(), psi).rho_a.mat) < 1e-12);
}

TEST_CASE("state-dependent BH + BH hybrid", "[hybrid]") {
  const BhbhResult half = bhbh_state_dependent(0.5, 0.5);
  CHECK(round2(half.D_min) == Approx(0.22));
  CHECK(round2(half.F_hcm) == Approx(0.81));
  CHECK(half.xi_hi == Approx(0.1875));

  const BhbhResult r = bhbh_state_dependent(0.1, 0.6);
  CHECK(r.lambda_lo == Approx(0.595));
  CHECK(r.xi_hi == Approx(0.0675));
  CHECK(r.xi_star > 0.0);
  CHECK(r.xi_star < r.xi_hi);
  CHECK(std::round(r.xi_star * 1e4) / 1e4 == Approx(0.0014));
  CHECK(round2(r.F_hcm) == Approx(0.93));

  const BhbhResult zero = bhbh_state_dependent(0.0, 1.0);
  CHECK(zero.D_min == Approx(0.0).margin(1e-15));
  CHECK(zero.F_hcm == Approx(1.0));
  CHECK_THROWS_AS(bhbh_state_dependent(0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(bhbh_state_dependent(0.5, 0.0), std::invalid_argument);

  // the simulated distortion and fidelity follow the closed forms
  for (double a2 : {0.1, 0.2, 0.3, 0.4, 0.5}) {
    for (double lambda : {0.7, 0.9, 1.0}) {
      const BhbhResult b = bhbh_state_dependent(a2, lambda);
      const StateVector psi = qubit_from_alpha2(a2);
      const CloneReport c = hybrid_report(bhbh_spec(b.xi_star, lambda), psi, true);
      CHECK(c.D_ab == Approx(b.D_min).margin(1e-12));
      CHECK(c.D_ab == Approx(bhbh_distortion(a2, lambda, b.xi_star, 1.0 / 6.0)).margin(1e-12));
      CHECK(c.F_a == Approx(b.F_hcm).margin(1e-12));
      // local minimum in xi
      for (double d : {-0.01, 0.01}) {
        const double xi = b.xi_star + d;
        if (xi < 0.0) continue;
        CHECK(hybrid_report(bhbh_spec(xi, lambda), psi, true).D_ab >= c.D_ab - 1e-15);
      }
      // the four-state family shares the fidelity
      const double a = std::sqrt(a2), bb = std::sqrt(1 - a2);
      for (const StateVector& s : {qubit(a, -bb), qubit(bb, a), qubit(bb, -a)}) {
        CHECK(hybrid_report(bhbh_spec(b.xi_star, lambda), s, true).F_a == Approx(c.F_a).margin(1e-9));
      }
    }
  }
}

TEST_CASE("universal BH + BH hybrid", "[hybrid]") {
  const UniversalHybrid u = universal_hybrid_lambda(0.1, 0.2);
  CHECK(u.lambda == Approx(1.0 / 3.0));
  CHECK(u.F == Approx(5.0 / 6.0));
  CHECK_THROWS(universal_hybrid_lambda(0.2, 0.2));
  CHECK_THROWS(universal_hybrid_lambda(0.1, 1.0 / 6.0));

  for (const auto& [xi, xip] : {std::pair{0.1, 0.2}, std::pair{0.05, 0.3}, std::pair{0.4, 0.12}}) {
    const UniversalHybrid h = universal_hybrid_lambda(xi, xip);
    const HybridSpec spec{MachineSpec::bh(xi), MachineSpec::bh(xip), h.lambda};
    const auto dab = [&](double a2) { return hybrid_report(spec, qubit_from_alpha2(a2), true).D_ab; };
    for (double a2 : {0.1, 0.3, 0.5, 0.8}) {
      CHECK(hybrid_report(spec, qubit_from_alpha2(a2), true).F_a == Approx(5.0 / 6.0).margin(1e-12));
      const double slope = (dab(a2 + 1e-5) - dab(a2 - 1e-5)) / 2e-5;
      CHECK(std::abs(slope) < 1e-6);
      CHECK(dab(a2) == Approx(bhbh_distortion(a2, h.lambda, xi, xip)).margin(1e-12));
    }
  }
  // away from the special lambda the distortion depends on the input
  const HybridSpec off{MachineSpec::bh(0.1), MachineSpec::bh(0.2), 0.6};
  CHECK(std::abs(hybrid_report(off, qubit_from_alpha2(0.1), true).D_ab -
                 hybrid_report(off, qubit_from_alpha2(0.5), true).D_ab) > 1e-3);
}

TEST_CASE("BH + phase-covariant hybrid", "[hybrid]") {
  CHECK(bh_pc_hybrid(0.0, 0.3) == Approx(0.5 + 1.0 / std::sqrt(8.0)));
  CHECK(round2(bh_pc_hybrid(0.0, 0.3)) == Approx(0.85));
  CHECK(bh_pc_hybrid(1.0, 1.0 / 6.0) == Approx(5.0 / 6.0));
  CHECK(bh_pc_hybrid_state_dependent(1.0, 0.5) == Approx(1.0 - 3.0 / 16.0));
  for (double lambda : {0.0, 0.3, 0.8, 1.0}) {
    for (double xi : {0.05, 1.0 / 6.0, 0.3}) {
      for (double theta : {0.3, 1.1, 2.5}) {
        // real great-circle states, on which the two-level phase-covariant map is covariant
        const StateVector psi = qubit(std::cos(theta / 2), std::sin(theta / 2));
        const CloneReport c = hybrid_report({MachineSpec::bh(xi), MachineSpec::pc2(), lambda}, psi, true);
        CHECK(c.F_a == Approx(bh_pc_hybrid(lambda, xi)).margin(1e-12));
        CHECK(c.F_b == Approx(bh_pc_hybrid(lambda, xi)).margin(1e-12));
      }
    }
  }
}

TEST_CASE("BH + Pauli asymmetric hybrid", "[hybrid]") {
  CHECK(round2(bh_pauli_table(0.5, 0.4).first) == Approx(0.83));
  CHECK(round2(bh_pauli_table(0.5, 0.4).second) == Approx(0.83));
  CHECK(round2(bh_pauli_table(0.2, 0.0).first) == Approx(0.83));
  const FidelityPair end = bh_pauli_table(0.1, 0.9);
  CHECK(round2(end.first) == Approx(0.58));
  CHECK(round2(end.second) == Approx(0.98));
  const FidelityPair pauli = pauli_fidelities(0.3);
  CHECK(bh_pauli_table(0.3, 1.0).first == Approx(pauli.first));
  CHECK(bh_pauli_table(0.3, 1.0).second == Approx(pauli.second));

  std::mt19937_64 rng(52);
  for (double p : {0.0, 0.1, 0.4, 0.7, 1.0}) {
    for (double lambda : {0.1, 0.5, 0.9}) {
      const StateVector psi = testutil::random_state({2}, rng);
      const CloneReport c = hybrid_report({MachineSpec::pauli(p), MachineSpec::bh_opt(), lambda}, psi);
      const FidelityPair f = bh_pauli_table(p, lambda);
      CHECK(c.F_a == Approx(f.first).margin(1e-12));
      CHECK(c.F_b == Approx(f.second).margin(1e-12));
    }
  }

  // never both above the optimal symmetric value
  const double opt = 5.0 / 6.0;
  for (int i = 0; i <= 20; ++i) {
    for (int j = 1; j <= 20; ++j) {
      const double p = i / 20.0, lambda = j / 20.0;
      const FidelityPair f = bh_pauli_table(p, lambda);
      CHECK_FALSE((f.first > opt + 1e-9 && f.second > opt + 1e-9));
      CHECK((f.first > opt + 1e-12) == (p > 0.5));
    }
  }
}

TEST_CASE("BH + anti-cloner hybrid", "[hybrid]") {
  const FidelityPair z = bh_anti_hybrid(0.0);
  CHECK(round2(z.first) == Approx(0.67));
  CHECK(round2(z.second) == Approx(0.33));
  const FidelityPair h = bh_anti_hybrid(0.5);
  CHECK(round2(h.first) == Approx(0.75));
  CHECK(round2(h.second) == Approx(0.58));
  const FidelityPair one = bh_anti_hybrid(1.0);
  CHECK(one.first == Approx(5.0 / 6.0));
  CHECK(one.second == Approx(5.0 / 6.0));

  std::mt19937_64 rng(53);
  double prev_a = -1, prev_b = -1;
  for (int k = 0; k <= 10; ++k) {
    const double lambda = k / 10.0;
    const StateVector psi = testutil::random_state({2}, rng);
    const CloneReport c = hybrid_report({MachineSpec::bh_opt(), MachineSpec::anti(), lambda}, psi);
    const FidelityPair f = bh_anti_hybrid(lambda);
    CHECK(c.F_a == Approx(f.first).margin(1e-12));
    CHECK(c.F_b == Approx(f.second).margin(1e-12));
    CHECK(f.first > prev_a);
    CHECK(f.second > prev_b);
    prev_a = f.first;
    prev_b = f.second;
  }
}
