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

#include "qclone/broadcast.hpp"
#include "qclone/cloners.hpp"
#include "qclone/measures.hpp"
#include "test_util.hpp"

using namespace qclone;
using Catch::Approx;
using testutil::printed;

namespace {

double round_to(double x, int digits) {
  const double s = std::pow(10.0, digits);
  return std::round(x * s) / s;
}

BroadcastInput random_input(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  double v[4] = {n(rng), n(rng), n(rng), n(rng)};
  const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
  return {v[0] / norm, v[1] / norm, v[2] / norm, v[3] / norm};
}

bool entangled(const DensityOperator& rho) { return min_pt_eigenvalue(rho, {0}) < -1e-12; }

}  // namespace

TEST_CASE("state-dependent copier parameter and distortions", "[broadcast]") {
  CHECK(sd_cloner_lambda_star(0.0) == 0.0);
  CHECK(sd_cloner_lambda_star(1.0) == 0.0);
  CHECK(sd_cloner_lambda_star(0.5) == Approx(3.0 / 16.0));
  // first column holds the amplitude; the distortion column squares the printed lambda
  const double lam5 = round_to(sd_cloner_lambda_star(0.25), 3);
  CHECK(lam5 == Approx(0.141));
  CHECK(printed(2 * lam5 * lam5, 0.039762, 6));
  const double lam1 = round_to(sd_cloner_lambda_star(0.01), 3);
  CHECK(lam1 == Approx(0.007));
  CHECK(printed(2 * lam1 * lam1, 0.000098, 6));
  CHECK_THROWS_AS(sd_cloner_lambda_star(1.5), std::invalid_argument);

  for (double a2 : {0.05, 0.2, 0.5, 0.7, 0.93}) {
    const StateVector psi = qubit_from_alpha2(a2);
    for (double lambda : {0.02, 0.1, 1.0 / 6.0, 0.3}) {
      const CloneReport c = clone_report(MachineSpec::bh(lambda), psi, true);
      CHECK(c.D_a == Approx(2 * lambda * lambda).margin(1e-12));
      CHECK(sd_cloner_distortion(a2, lambda, 1 - 2 * lambda) == Approx(2 * lambda * lambda).margin(1e-14));
      CHECK(c.D_ab == Approx(sd_cloner_dab(a2, lambda)).margin(1e-12));
    }
    const CloneReport off = clone_report(MachineSpec::bh(0.1, 0.5), psi, true);
    CHECK(off.D_a == Approx(sd_cloner_distortion(a2, 0.1, 0.5)).margin(1e-12));

    const double ls = sd_cloner_lambda_star(a2);
    const double h = 1e-3;
    CHECK(sd_cloner_dab(a2, ls) <= sd_cloner_dab(a2, ls + 0.01));
    CHECK(sd_cloner_dab(a2, ls) <= sd_cloner_dab(a2, std::max(0.0, ls - 0.01)));
    const double curv = (sd_cloner_dab(a2, ls + h) - 2 * sd_cloner_dab(a2, ls) + sd_cloner_dab(a2, ls - h)) / (h * h);
    CHECK(curv == Approx(16.0).epsilon(1e-6));
  }
  // lambda = 1/6 makes both distortions input independent
  CHECK(sd_cloner_dab(0.1, 1.0 / 6.0) == Approx(sd_cloner_dab(0.6, 1.0 / 6.0)));
}

TEST_CASE("closed-form broadcast outputs match two local copiers", "[broadcast][property]") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 5; ++t) {
    const BroadcastInput in = random_input(rng);
    for (double lambda : {0.0, 0.05, 0.12, 1.0 / 6.0, 0.3}) {
      const BroadcastOutputs c = broadcast_outputs(in, lambda);
      const BroadcastOutputs s = broadcast_simulated(broadcast_state(in), lambda);
      CHECK(max_abs(c.rho_AB2.mat - s.rho_AB2.mat) < 1e-9);
      CHECK(max_abs(c.rho_A2B.mat - s.rho_A2B.mat) < 1e-9);
      CHECK(max_abs(c.rho_AA2.mat - s.rho_AA2.mat) < 1e-9);
      CHECK(max_abs(c.rho_BB2.mat - s.rho_BB2.mat) < 1e-9);
      CHECK(max_abs(s.rho_AB2.mat - s.rho_A2B.mat) < 1e-12);
      CHECK(std::abs(s.rho_AA2.mat.trace().real() - 1.0) < 1e-12);
    }
  }
  CHECK_THROWS_AS(broadcast_outputs({0.5, 0.5, 0.0, 0.0}, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(broadcast_outputs({1.0, 0.0, 0.0, 0.0}, 0.5), std::invalid_argument);
}

TEST_CASE("displayed local coefficients disagree with the copier", "[broadcast]") {
  const BroadcastInput in{0.5, 0.5, 0.5, 0.5};
  const Mat printed_k = local_output_printed(in, 0.1, false);
  CHECK(std::abs(printed_k.trace().real() - 1.0) > 0.1);
  // for gamma = delta = 0 the displayed K12 is mu alpha beta / 2 while the copier gives 0
  const BroadcastInput special{std::sqrt(0.3), std::sqrt(0.7), 0.0, 0.0};
  const BroadcastOutputs s = broadcast_simulated(broadcast_state(special), 0.1);
  CHECK(std::abs(s.rho_AA2.mat(0, 1)) < 1e-14);
  CHECK(std::abs(local_output_printed(special, 0.1, false)(0, 1).real()) > 0.1);
}

TEST_CASE("two-amplitude input with complex beta", "[broadcast]") {
  const double a2 = 0.35, lambda = 0.12, mu = 1 - 2 * lambda;
  const double a = std::sqrt(a2);
  const cplx b = std::polar(std::sqrt(1 - a2), 0.7);
  Vec v(4);
  v << a, 0, 0, b;
  const BroadcastOutputs s = broadcast_simulated({{2, 2}, v}, lambda);
  Mat nonlocal = Mat::Zero(4, 4);
  nonlocal(0, 0) = a2 * (1 - 2 * lambda) + lambda * lambda;
  nonlocal(1, 1) = nonlocal(2, 2) = lambda * (1 - lambda);
  nonlocal(3, 3) = std::norm(b) * (1 - 2 * lambda) + lambda * lambda;
  nonlocal(0, 3) = a * std::conj(b) * mu * mu;
  nonlocal(3, 0) = a * b * mu * mu;
  CHECK(max_abs(s.rho_AB2.mat - nonlocal) < 1e-12);
  Mat local = Mat::Zero(4, 4);
  local(0, 0) = a2 * (1 - 2 * lambda);
  local(1, 1) = local(2, 2) = local(1, 2) = local(2, 1) = lambda;
  local(3, 3) = std::norm(b) * (1 - 2 * lambda);
  CHECK(max_abs(s.rho_AA2.mat - local) < 1e-12);
  CHECK(max_abs(s.rho_BB2.mat - local) < 1e-12);
}

TEST_CASE("universal copier broadcasting", "[broadcast]") {
  for (double a2 : {0.2, 0.5, 0.8}) {
    const double a = std::sqrt(a2), b = std::sqrt(1 - a2);
    const BroadcastOutputs s = broadcast_simulated(broadcast_state({a, b, 0, 0}), 1.0 / 6.0);
    CHECK(s.rho_AA2.mat(0, 0).real() == Approx(2 * a2 / 3));
    CHECK(s.rho_AA2.mat(3, 3).real() == Approx(2 * (1 - a2) / 3));
    // |+><+| / 3 spreads 1/6 over the 01/10 block
    CHECK(s.rho_AA2.mat(1, 2).real() == Approx(1.0 / 6.0));
    CHECK(s.rho_AB2.mat(0, 0).real() == Approx((24 * a2 + 1) / 36));
    CHECK(s.rho_AB2.mat(1, 1).real() == Approx(5.0 / 36.0));
    CHECK(s.rho_AB2.mat(0, 3).real() == Approx(4 * a * b / 9));
    const double f = overlap(broadcast_state({a, b, 0, 0}), s.rho_AB2);
    CHECK(f == Approx(25.0 / 36.0 - 4 * a2 * (1 - a2) / 9));
  }
}

TEST_CASE("product input", "[broadcast]") {
  const StateVector prod = broadcast_state({1, 0, 0, 0});
  for (double lambda : {0.05, 1.0 / 6.0, 0.3}) {
    const BroadcastOutputs s = broadcast_simulated(prod, lambda);
    CHECK_FALSE(entangled(s.rho_AB2));
    CHECK_FALSE(entangled(s.rho_A2B));
    // the two copies of |0> are (1 - 2 lambda)|00><00| + 2 lambda |psi+><psi+|, which is entangled
    CHECK(entangled(s.rho_AA2));
    CHECK(entangled(s.rho_BB2));
  }
  const BroadcastOutputs z = broadcast_simulated(prod, 0.0);
  for (const DensityOperator* r : {&z.rho_AB2, &z.rho_A2B, &z.rho_AA2, &z.rho_BB2}) CHECK_FALSE(entangled(*r));
}

TEST_CASE("separability and inseparability intervals", "[broadcast]") {
  const Interval i6 = insep_interval(1.0 / 6.0), s6 = sep_interval(1.0 / 6.0);
  CHECK(i6.lo == Approx(0.5 - std::sqrt(39.0) / 16));
  CHECK(i6.hi == Approx(0.5 + std::sqrt(39.0) / 16));
  CHECK(s6.lo == Approx(0.5 - std::sqrt(48.0) / 16));
  CHECK(s6.hi == Approx(0.5 + std::sqrt(48.0) / 16));

  const Interval i141 = insep_interval(0.141), s141 = sep_interval(0.141);
  CHECK(printed(i141.lo, 0.05863, 5));
  CHECK(printed(i141.hi, 0.94136, 5));
  CHECK(printed(s141.lo, 0.04017, 5));
  CHECK(printed(s141.hi, 0.95982, 5));
  const Interval i007 = insep_interval(0.007);
  CHECK(printed(i007.lo, 0.00005, 5));
  CHECK(printed(i007.hi, 0.99994, 5));

  for (double lambda : {0.007, 0.029, 0.061, 0.101, 0.141, 1.0 / 6.0, 0.187, 0.2}) {
    const Interval ci = insep_interval(lambda), cs = sep_interval(lambda);
    const Interval bi = interval_by_bisection(IntervalKind::Inseparable, lambda);
    const Interval bs = interval_by_bisection(IntervalKind::Separable, lambda);
    CHECK(bi.lo == Approx(ci.lo).margin(1e-6));
    CHECK(bi.hi == Approx(ci.hi).margin(1e-6));
    CHECK(bs.lo == Approx(cs.lo).margin(1e-6));
    CHECK(bs.hi == Approx(cs.hi).margin(1e-6));
    CHECK(ci.lo >= 0.0);
    CHECK(ci.hi <= 1.0);
    // the nonlocal window sits inside the local one, so it is the broadcast window
    CHECK(cs.lo <= ci.lo);
    CHECK(ci.hi <= cs.hi);
    const Interval w = broadcast_interval(lambda);
    CHECK(w.lo == Approx(ci.lo));
    CHECK(w.hi == Approx(ci.hi));
    CHECK(w.kind == IntervalKind::Broadcastable);
  }
  CHECK_THROWS_AS(insep_interval(0.22), std::invalid_argument);
  CHECK_THROWS_AS(sep_interval(0.26), std::invalid_argument);
  CHECK_THROWS_AS(insep_interval(-0.1), std::invalid_argument);
  CHECK(interval_by_bisection(IntervalKind::Inseparable, 0.22).empty());
}

TEST_CASE("broadcast fidelity", "[broadcast]") {
  CHECK(avg_broadcast_fidelity([](double) { return 1.0 / 6.0; }) == Approx(67.0 / 108.0).epsilon(1e-13));
  CHECK(round_to(67.0 / 108.0, 2) == Approx(0.62));
  for (double a2 : {0.0, 0.3, 0.5, 0.9}) {
    CHECK(broadcast_fidelity(a2, 1.0 / 6.0) == Approx(25.0 / 36.0 - 4 * a2 * (1 - a2) / 9));
    for (double lambda : {0.0, 0.07, 0.2, 0.4}) {
      const double a = std::sqrt(a2), b = std::sqrt(1 - a2);
      const StateVector chi = broadcast_state({a, b, 0, 0});
      CHECK(overlap(chi, broadcast_simulated(chi, lambda).rho_AB2) == Approx(broadcast_fidelity(a2, lambda)).margin(1e-12));
    }
  }
  // table rows: amplitude alpha, lambda rounded to three places
  const auto row = [](double amp) {
    const double a2 = amp * amp;
    return broadcast_fidelity(a2, round_to(sd_cloner_lambda_star(a2), 3));
  };
  CHECK(printed(row(0.5), 0.66, 2));
  CHECK(printed(row(0.1), 0.99, 2));
  CHECK_FALSE(printed(broadcast_fidelity_plus(0.25, 0.141), 0.66, 2));
  const double avg_sd = avg_broadcast_fidelity([](double x) { return sd_cloner_lambda_star(x); });
  CHECK(avg_sd > 67.0 / 108.0);
}

TEST_CASE("three-qubit protocol branches", "[broadcast][protocol]") {
  const MachineIsometry c = protocol_copier();
  CHECK(isometry_defect(c) < 1e-14);
  for (double a2 : {0.1, 0.4, 0.75}) {
    double total = 0.0;
    for (ProtocolBranch b : {ProtocolBranch::Q0Q0, ProtocolBranch::Q0Q1, ProtocolBranch::Q1Q0, ProtocolBranch::Q1Q1}) {
      const ProtocolResult r = three_qubit_protocol(a2, b);
      total += r.probability;
      CHECK(std::abs(r.rho_125346.mat.trace().real() - 1.0) < 1e-12);
    }
    CHECK(total == Approx(1.0).margin(1e-12));
    CHECK(three_qubit_protocol(a2, ProtocolBranch::Q0Q0).probability == Approx((3 * a2 + 1) / 9));
  }
}

TEST_CASE("Q0Q0 branch reduced states", "[broadcast][protocol]") {
  for (double a2 : {0.05, 0.3, 0.61, 0.8, 0.97}) {
    const ProtocolResult r = three_qubit_protocol(a2, ProtocolBranch::Q0Q0);
    CHECK(max_abs(protocol_reduced(r, {1, 4, 6}).mat - protocol_rho146_closed(a2)) < 1e-9);
    CHECK(max_abs(protocol_reduced(r, {3, 2, 5}).mat - protocol_rho146_closed(a2)) < 1e-9);
    CHECK(max_abs(protocol_reduced(r, {1, 6}).mat - protocol_rho16_closed(a2)) < 1e-9);
    CHECK(max_abs(protocol_reduced(r, {1, 4}).mat - protocol_rho16_closed(a2)) < 1e-9);
    CHECK(max_abs(protocol_reduced(r, {4, 6}).mat - protocol_rho46_closed(a2)) < 1e-9);
    for (const auto& [p, q] : {std::pair{1, 2}, {1, 5}, {3, 4}, {3, 6}})
      CHECK(max_abs(protocol_reduced(r, {p, q}).mat - protocol_rho12_closed(a2)) < 1e-9);
  }
  // a complex beta only rotates the coherences
  const ProtocolResult ph = three_qubit_protocol(0.7, ProtocolBranch::Q0Q0, 0.9);
  CHECK(std::abs(protocol_reduced(ph, {1, 6}).mat(0, 3)) == Approx(protocol_rho16_closed(0.7)(0, 3).real()));
}

TEST_CASE("Q0Q0 and Q1Q1 entanglement windows", "[broadcast][protocol]") {
  const auto single = [](ProtocolBranch b, int p, int q) {
    const auto iv = pair_entangled_intervals(b, p, q);
    REQUIRE(iv.size() == 1);
    return iv.front();
  };
  const auto e16 = single(ProtocolBranch::Q0Q0, 1, 6);
  CHECK(e16.first == Approx(0.18).margin(0.01));
  CHECK(e16.second == 1.0);
  CHECK(single(ProtocolBranch::Q0Q0, 1, 4).first == Approx(e16.first).margin(1e-6));
  const auto e46 = single(ProtocolBranch::Q0Q0, 4, 6);
  CHECK(e46.first == Approx(0.61).margin(0.01));
  // rho12 and its copies are separable above the boundary
  const auto e12 = single(ProtocolBranch::Q0Q0, 1, 2);
  CHECK(e12.first == 0.0);
  CHECK(e12.second == Approx(0.27).margin(0.01));

  const auto w00 = scan_intervals([](double x) { return protocol_verdict(x, ProtocolBranch::Q0Q0).broadcast; });
  REQUIRE(w00.size() == 1);
  CHECK(w00.front().first == Approx(0.61).margin(0.01));
  CHECK(w00.front().second == 1.0);

  // Q1Q1 under the same test: the local pairs 25 and 46 are entangled only below 0.383
  const auto d11 = scan_intervals([](double x) { return protocol_verdict(x, ProtocolBranch::Q1Q1).broadcast; });
  REQUIRE(d11.size() == 1);
  CHECK(d11.front().first == 0.0);
  CHECK(d11.front().second == Approx(0.383).margin(0.001));

  // with every same-side pair separable, Q1Q1 gives (0.38, 0.73); Q0Q0 then gives (0.27, 0.61)
  const auto w11 =
      scan_intervals([](double x) { return protocol_verdict(x, ProtocolBranch::Q1Q1).all_local_separable; });
  REQUIRE(w11.size() == 1);
  CHECK(w11.front().first == Approx(0.38).margin(0.01));
  CHECK(w11.front().second == Approx(0.73).margin(0.01));
  const auto l00 =
      scan_intervals([](double x) { return protocol_verdict(x, ProtocolBranch::Q0Q0).all_local_separable; });
  REQUIRE(l00.size() == 1);
  CHECK(l00.front().first == Approx(e12.second).margin(1e-5));
  CHECK(l00.front().second == Approx(e46.first).margin(1e-5));
}

TEST_CASE("asymmetric branches have no pairwise broadcast window", "[broadcast][protocol]") {
  for (ProtocolBranch b : {ProtocolBranch::Q0Q1, ProtocolBranch::Q1Q0})
    for (bool local : {false, true})
      CHECK(scan_intervals([b, local](double x) {
              const ProtocolVerdict v = protocol_verdict(x, b);
              return local ? v.all_local_separable : v.broadcast;
            }, 200).empty());
}

TEST_CASE("entanglement swapping restores rho_325 on qubit 7", "[broadcast][swap]") {
  const DensityOperator rho = protocol_reduced(three_qubit_protocol(0.7, ProtocolBranch::Q0Q0), {3, 2, 5});
  double total = 0.0;
  for (BellLabel o : {BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus}) {
    const SwapResult s = swap_extend(rho, o);
    REQUIRE(s.valid);
    total += s.probability;
    CHECK(s.probability == Approx(0.25).margin(1e-12));
    CHECK(max_abs(s.rho.mat - rho.mat) < 1e-9);
  }
  CHECK(total == Approx(1.0).margin(1e-12));
  // the displayed first correction puts sigma_z on qubit 5 instead of qubit 7
  CHECK(max_abs(swap_extend_printed(rho, BellLabel::PhiPlus).rho.mat - rho.mat) > 1e-3);
  CHECK(max_abs(swap_extend_printed(rho, BellLabel::PsiMinus).rho.mat - rho.mat) < 1e-9);

  std::mt19937_64 rng(62);
  const DensityOperator rnd = testutil::random_density({2, 2, 2}, rng);
  for (BellLabel o : {BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus})
    CHECK(max_abs(swap_extend(rnd, o).rho.mat - rnd.mat) < 1e-9);

  // |phi+>_32 (x) |0>_5: plain entanglement swapping
  const DensityOperator toy = tensor(projector(bell_state(BellLabel::PhiPlus)), projector(basis_state({2}, 0)));
  const SwapResult t = swap_extend(toy, BellLabel::PsiPlus);
  CHECK(max_abs(t.rho.mat - toy.mat) < 1e-12);
  CHECK_THROWS_AS(swap_extend(projector(bell_state(BellLabel::PhiPlus)), BellLabel::PhiPlus), std::invalid_argument);
}
