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

#include "qclone/tables.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "qclone/broadcast.hpp"
#include "qclone/cloners.hpp"
#include "qclone/deleters.hpp"
#include "qclone/hybrid.hpp"
#include "qclone/measures.hpp"

namespace qclone {

namespace {

// Generic input for the universal machines; any state gives the same numbers.
StateVector probe() { return qubit_from_alpha2(0.3, 0.7); }

class RowBuilder {
 public:
  RowBuilder(std::vector<std::pair<std::string, double>> inputs, Provenance p) {
    row_.inputs = std::move(inputs);
    row_.provenance = p;
  }
  // `alt` is a second accepted value, compared after rounding to `digits`.
  RowBuilder& cell(const std::string& key, double value, std::optional<double> printed, int digits,
                   std::optional<double> alt = std::nullopt) {
    Cell c{key, value, printed, digits, true};
    if (printed) {
      c.match = printed_match(value, *printed, digits) || (alt && printed_match(*alt, *printed, digits));
    }
    row_.outputs.push_back(c);
    return *this;
  }
  ReportRow done() { return std::move(row_); }

 private:
  ReportRow row_;
};

bool want(TableMode m, Provenance p) {
  return m == TableMode::Both || (m == TableMode::ClosedForm) == (p == Provenance::ClosedForm);
}

const Provenance kBoth[] = {Provenance::ClosedForm, Provenance::Simulation};

// Difference columns are taken between the displayed (2 dp) fidelities.
double rounded_gap(double a, double b) { return std::abs(round_to(a, 2) - round_to(b, 2)); }

// Three fidelity-pair columns shared by Tables 2.1, 2.3 and 2.4.
void pair_cells(RowBuilder& b, const std::string& suffix, FidelityPair f, double p1, double p2, double pd) {
  b.cell("F1" + suffix, f.first, p1, 2)
      .cell("F2" + suffix, f.second, p2, 2)
      .cell("diff" + suffix, rounded_gap(f.first, f.second), pd, 2, std::abs(f.first - f.second));
}

// ---- Table 2.1: asymmetric Pauli cloner.
const double kT21[11][3] = {{0.50, 1.00, 0.50}, {0.55, 0.99, 0.44}, {0.62, 0.98, 0.36}, {0.69, 0.94, 0.25},
                            {0.76, 0.89, 0.13}, {0.83, 0.83, 0.00}, {0.89, 0.76, 0.13}, {0.94, 0.69, 0.25},
                            {0.98, 0.62, 0.36}, {0.99, 0.55, 0.44}, {1.00, 0.50, 0.50}};

FidelityPair pauli_sim(double p) {
  const CloneReport r = clone_report(MachineSpec::pauli(p), probe());
  return {r.F_a, r.F_b};
}

TableReport table_2_1(TableMode mode) {
  TableReport t{"2.1", "Fidelity of the copies from the asymmetric Pauli cloner", {}};
  for (int i = 0; i <= 10; ++i) {
    const double p = i / 10.0;
    for (Provenance pv : kBoth) {
      if (!want(mode, pv)) continue;
      RowBuilder b({{"p", p}}, pv);
      pair_cells(b, "", pv == Provenance::Simulation ? pauli_sim(p) : pauli_fidelities(p), kT21[i][0], kT21[i][1],
                 kT21[i][2]);
      t.rows.push_back(b.done());
    }
  }
  return t;
}

// ---- Table 2.2: state-independent BH mixed with a state-dependent BH.
struct T22 {
  double alpha2, lambda_lo, xi_hi, d_min, f;
};
const T22 kT22[] = {{0.1, 0.595, 0.0675, 0.14, 0.93},
                    {0.2, 0.280, 0.1200, 0.21, 0.88},
                    {0.3, 0.055, 0.1575, 0.22, 0.84},
                    {0.4, 0.000, 0.1800, 0.22, 0.82},
                    {0.5, 0.000, 0.1875, 0.22, 0.81}};

TableReport table_2_2(TableMode mode) {
  TableReport t{"2.2", "Hybrid of the state-independent and state-dependent BH cloners", {}};
  for (const T22& r : kT22) {
    const BhbhResult c = bhbh_state_dependent(r.alpha2, 1.0);
    if (want(mode, Provenance::ClosedForm)) {
      RowBuilder b({{"alpha2", r.alpha2}}, Provenance::ClosedForm);
      b.cell("lambda_lo", c.lambda_lo, r.lambda_lo, 3)
          .cell("lambda_hi", 1.0, 1.0, 1)
          .cell("xi_lo", 0.0, 0.0, 1)
          .cell("xi_hi", c.xi_hi, r.xi_hi, 4)
          .cell("D_min", c.D_min, r.d_min, 2)
          .cell("F_hcm", c.F_hcm, r.f, 2);
      t.rows.push_back(b.done());
    }
    if (want(mode, Provenance::Simulation)) {
      // Any admissible weight gives the same optimum; take the middle of the range.
      const double lambda = 0.5 * (c.lambda_lo + 1.0);
      const BhbhResult m = bhbh_state_dependent(r.alpha2, lambda);
      const CloneReport s = hybrid_report(bhbh_spec(m.xi_star, lambda), qubit_from_alpha2(r.alpha2), true);
      RowBuilder b({{"alpha2", r.alpha2}, {"lambda", lambda}}, Provenance::Simulation);
      b.cell("xi_star", m.xi_star, std::nullopt, 4).cell("D_min", s.D_ab, r.d_min, 2).cell("F_hcm", s.F_a, r.f, 2);
      t.rows.push_back(b.done());
    }
  }
  return t;
}

// ---- Table 2.3: Pauli cloner with probability lambda, BH with 1 - lambda.
struct T23 {
  double p, f1_lo, f1_hi, f2_lo, f2_hi, d_lo, d_hi;
};
const T23 kT23[] = {{0.0, 0.80, 0.53, 0.85, 0.98, 0.05, 0.45}, {0.1, 0.81, 0.58, 0.85, 0.98, 0.04, 0.40},
                    {0.2, 0.81, 0.64, 0.85, 0.96, 0.04, 0.32}, {0.3, 0.82, 0.70, 0.84, 0.93, 0.02, 0.23},
                    {0.4, 0.83, 0.77, 0.84, 0.89, 0.01, 0.12}, {0.5, 0.83, 0.83, 0.83, 0.83, 0.00, 0.00},
                    {0.6, 0.84, 0.89, 0.83, 0.77, 0.01, 0.12}, {0.7, 0.84, 0.93, 0.82, 0.70, 0.02, 0.23},
                    {0.8, 0.85, 0.96, 0.81, 0.64, 0.04, 0.32}, {0.9, 0.85, 0.98, 0.81, 0.58, 0.04, 0.40}};

FidelityPair pauli_hybrid(Provenance pv, double p, double lambda) {
  if (pv == Provenance::ClosedForm) return bh_pauli_table(p, lambda);
  const CloneReport r = hybrid_report({MachineSpec::pauli(p), MachineSpec::bh_opt(), lambda}, probe());
  return {r.F_a, r.F_b};
}

TableReport table_2_3(TableMode mode) {
  TableReport t{"2.3", "Fidelity of the copies from the Pauli + BH hybrid", {}};
  for (Provenance pv : kBoth) {
    if (!want(mode, pv)) continue;
    for (int i = 0; i <= 10; ++i) {  // lambda = 0: BH alone, for every p
      RowBuilder b({{"p", i / 10.0}, {"lambda", 0.0}}, pv);
      pair_cells(b, "", pauli_hybrid(pv, i / 10.0, 0.0), 0.83, 0.83, 0.00);
      t.rows.push_back(b.done());
    }
    for (const T23& r : kT23) {  // lambda from 0.1 to 0.9
      RowBuilder b({{"p", r.p}, {"lambda_lo", 0.1}, {"lambda_hi", 0.9}}, pv);
      pair_cells(b, "_lo", pauli_hybrid(pv, r.p, 0.1), r.f1_lo, r.f2_lo, r.d_lo);
      pair_cells(b, "_hi", pauli_hybrid(pv, r.p, 0.9), r.f1_hi, r.f2_hi, r.d_hi);
      t.rows.push_back(b.done());
    }
    for (int i = 0; i <= 10; ++i) {  // lambda = 1: the Pauli cloner, printed in Table 2.1
      RowBuilder b({{"p", i / 10.0}, {"lambda", 1.0}}, pv);
      pair_cells(b, "", pauli_hybrid(pv, i / 10.0, 1.0), kT21[i][0], kT21[i][1], kT21[i][2]);
      t.rows.push_back(b.done());
    }
  }
  return t;
}

// ---- Table 2.4: BH with probability lambda, anti-cloner with 1 - lambda.
const double kT24[11][3] = {{0.67, 0.33, 0.34}, {0.68, 0.38, 0.30}, {0.70, 0.43, 0.27}, {0.72, 0.48, 0.24},
                            {0.73, 0.53, 0.20}, {0.75, 0.58, 0.17}, {0.77, 0.63, 0.14}, {0.78, 0.68, 0.10},
                            {0.80, 0.73, 0.07}, {0.82, 0.78, 0.04}, {0.83, 0.83, 0.00}};

TableReport table_2_4(TableMode mode) {
  TableReport t{"2.4", "Fidelity of the two clones from the BH + anti-cloner hybrid", {}};
  for (int i = 0; i <= 10; ++i) {
    const double lambda = i / 10.0;
    for (Provenance pv : kBoth) {
      if (!want(mode, pv)) continue;
      FidelityPair f = bh_anti_hybrid(lambda);
      if (pv == Provenance::Simulation) {
        const CloneReport r = hybrid_report({MachineSpec::bh_opt(), MachineSpec::anti(), lambda}, probe());
        f = {r.F_a, r.F_b};
      }
      RowBuilder b({{"lambda", lambda}}, pv);
      b.cell("F_a", f.first, kT24[i][0], 2)
          .cell("F_b", f.second, kT24[i][1], 2)
          .cell("diff", rounded_gap(f.first, f.second), kT24[i][2], 2, f.first - f.second);
      t.rows.push_back(b.done());
    }
  }
  return t;
}

// ---- Chapter 3 tables. The first column holds the amplitude alpha.
const double kAmps[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
const double kT31Lambda[] = {0.007, 0.029, 0.061, 0.101, 0.141, 0.173, 0.187, 0.173, 0.115};
const double kT31Da[] = {0.000098, 0.001682, 0.007442, 0.020402, 0.039762, 0.059858, 0.069938, 0.059858, 0.026450};
const double kT33F[] = {0.99, 0.94, 0.86, 0.76, 0.66, 0.58, 0.54, 0.58, 0.72};

// Minimizer of the simulated two-clone distortion over the BH parameter.
double simulated_lambda_star(double alpha2) {
  const StateVector psi = qubit_from_alpha2(alpha2);
  const auto dab = [&](double l) { return clone_report(MachineSpec::bh(l), psi, true).D_ab; };
  double a = 0.0, b = 0.25;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a), fc = dab(c), fd = dab(d);
  while (b - a > 1e-10) {
    if (fc < fd) {
      b = d; d = c; fd = fc; c = b - g * (b - a); fc = dab(c);
    } else {
      a = c; c = d; fc = fd; d = a + g * (b - a); fd = dab(d);
    }
  }
  return 0.5 * (a + b);
}

TableReport table_3_1(TableMode mode) {
  TableReport t{"3.1", "State-dependent and state-independent BH cloners", {}};
  const double d_si = clone_report(MachineSpec::bh_opt(), probe()).D_a;
  for (int i = 0; i < 9; ++i) {
    const double a2 = kAmps[i] * kAmps[i];
    for (Provenance pv : kBoth) {
      if (!want(mode, pv)) continue;
      const bool sim = pv == Provenance::Simulation;
      const double lambda = sim ? simulated_lambda_star(a2) : sd_cloner_lambda_star(a2);
      const double shown = round_to(lambda, 3);
      const double da = sim ? clone_report(MachineSpec::bh(shown), qubit_from_alpha2(a2), true).D_a
                            : 2.0 * shown * shown;
      RowBuilder b({{"alpha", kAmps[i]}}, pv);
      b.cell("lambda", lambda, kT31Lambda[i], 3)
          .cell("D_a", da, kT31Da[i], 6)
          .cell("lambda_si", 1.0 / 6.0, 0.167, 3)
          .cell("D_a_si", sim ? d_si : 1.0 / 18.0, 0.055556, 6);
      t.rows.push_back(b.done());
    }
  }
  return t;
}

struct T32 {
  double lambda, i_lo, i_hi, s_lo, s_hi;
};
const T32 kT32[] = {{0.007, 0.00005, 0.99994, 0.00005, 0.99994}, {0.029, 0.00101, 0.99899, 0.00094, 0.99905},
                    {0.061, 0.00555, 0.99444, 0.00485, 0.99514}, {0.101, 0.02076, 0.97923, 0.01628, 0.98371},
                    {0.115, 0.03038, 0.96961, 0.02282, 0.97717}, {0.141, 0.05863, 0.94136, 0.04017, 0.95982},
                    {0.159, 0.09091, 0.90908, 0.05768, 0.94231}, {0.173, 0.12836, 0.87163, 0.07570, 0.92429},
                    {0.187, 0.18458, 0.81541, 0.09904, 0.90095}};

TableReport table_3_2(TableMode mode) {
  TableReport t{"3.2", "Inseparability and separability intervals", {}};
  for (const T32& r : kT32) {
    for (Provenance pv : kBoth) {
      if (!want(mode, pv)) continue;
      const bool sim = pv == Provenance::Simulation;
      const Interval in = sim ? interval_by_bisection(IntervalKind::Inseparable, r.lambda, 1e-10)
                              : insep_interval(r.lambda);
      const Interval se = sim ? interval_by_bisection(IntervalKind::Separable, r.lambda, 1e-10)
                              : sep_interval(r.lambda);
      const double lo = std::max(in.lo, se.lo), hi = std::min(in.hi, se.hi);
      RowBuilder b({{"lambda", r.lambda}}, pv);
      b.cell("insep_lo", in.lo, r.i_lo, 5)
          .cell("insep_hi", in.hi, r.i_hi, 5)
          .cell("sep_lo", se.lo, r.s_lo, 5)
          .cell("sep_hi", se.hi, r.s_hi, 5)
          .cell("common_lo", lo, r.i_lo, 5)
          .cell("common_hi", hi, r.i_hi, 5);
      t.rows.push_back(b.done());
    }
  }
  return t;
}

TableReport table_3_3(TableMode mode) {
  TableReport t{"3.3", "Fidelity of the broadcast copies of an entangled state", {}};
  for (int i = 0; i < 9; ++i) {
    const double a2 = kAmps[i] * kAmps[i];
    const double lambda = round_to(sd_cloner_lambda_star(a2), 3);
    for (Provenance pv : kBoth) {
      if (!want(mode, pv)) continue;
      double f = broadcast_fidelity(a2, lambda);
      if (pv == Provenance::Simulation) {
        const StateVector chi = broadcast_state({kAmps[i], std::sqrt(1.0 - a2), 0.0, 0.0});
        f = overlap(chi, broadcast_simulated(chi, lambda).rho_AB2);
      }
      RowBuilder b({{"alpha", kAmps[i]}}, pv);
      b.cell("lambda", lambda, kT31Lambda[i], 3).cell("F", f, kT33F[i], 2);
      t.rows.push_back(b.done());
    }
  }
  return t;
}

// ---- Chapter 4: limiting deletion fidelities; NaN marks a cell left blank.
const double kNone = std::nan("");
const double kT41[11][2] = {{0.85, 0.85}, {0.93, 0.63}, {0.91, 0.51}, {0.87, 0.41}, {0.81, 0.32}, {0.75, kNone},
                            {0.67, 0.18}, {0.58, 0.12}, {0.48, 0.08}, {0.36, 0.06}, {0.14, 0.14}};
const double kT42[11][2] = {{0.57, 0.57}, {0.48, 0.63}, {0.44, 0.64}, {0.41, 0.64}, {0.39, 0.63}, {0.37, kNone},
                            {0.36, 0.60}, {0.35, 0.58}, {0.35, 0.55}, {0.36, 0.51}, {0.42, 0.42}};

std::optional<double> shown(double v) { return std::isnan(v) ? std::nullopt : std::optional<double>(v); }

TableReport deletion_table(TableMode mode, int transformers, const double (&printed)[11][2]) {
  TableReport t{transformers == 1 ? "4.1" : "4.2",
                transformers == 1 ? "Limiting deletion fidelity with one transformer"
                                  : "Limiting deletion fidelity with two transformers",
                {}};
  for (int i = 0; i <= 10; ++i) {
    const double m1sq = i / 10.0, m2sq = 1.0 - m1sq;
    const double m1 = std::sqrt(m1sq), m2 = std::sqrt(m2sq);
    for (Provenance pv : kBoth) {
      if (!want(mode, pv)) continue;
      const auto fid = [&](const BlankState& blank) {
        if (pv == Provenance::ClosedForm) return limiting_deletion_fidelity(transformers, blank);
        return delete_point(DeleterSpec::conv(0.5 - kLimitEps, blank), probe(), transformers).F_2;
      };
      RowBuilder b({{"m1_sq", m1sq}, {"m2_sq", m2sq}}, pv);
      b.cell("m1_sq_minus_m2_sq", m1sq - m2sq, round_to(m1sq - m2sq, 1), 1)
          .cell("F_pos", fid({m1, m2}), shown(printed[i][0]), 2)
          .cell("F_neg", fid({m1, -m2}), shown(printed[i][1]), 2);
      t.rows.push_back(b.done());
    }
  }
  return t;
}

}  // namespace

const char* provenance_name(Provenance p) {
  return p == Provenance::ClosedForm ? "closed_form" : "simulation";
}

int TableReport::checked() const {
  int n = 0;
  for (const ReportRow& r : rows)
    for (const Cell& c : r.outputs) n += c.printed ? 1 : 0;
  return n;
}

int TableReport::mismatches() const {
  int n = 0;
  for (const ReportRow& r : rows)
    for (const Cell& c : r.outputs) n += c.match ? 0 : 1;
  return n;
}

const std::vector<std::string>& table_ids() {
  static const std::vector<std::string> ids{"2.1", "2.2", "2.3", "2.4", "3.1", "3.2", "3.3", "4.1", "4.2"};
  return ids;
}

bool is_table_id(const std::string& id) {
  for (const std::string& s : table_ids())
    if (s == id) return true;
  return false;
}

TableReport build_table(const std::string& id, TableMode mode) {
  if (id == "2.1") return table_2_1(mode);
  if (id == "2.2") return table_2_2(mode);
  if (id == "2.3") return table_2_3(mode);
  if (id == "2.4") return table_2_4(mode);
  if (id == "3.1") return table_3_1(mode);
  if (id == "3.2") return table_3_2(mode);
  if (id == "3.3") return table_3_3(mode);
  if (id == "4.1") return deletion_table(mode, 1, kT41);
  if (id == "4.2") return deletion_table(mode, 2, kT42);
  throw std::invalid_argument("unknown table id '" + id + "'");
}

double round_to(double x, int digits) {
  const double s = std::pow(10.0, digits);
  return std::round(x * s) / s;
}

bool printed_match(double value, double shown, int digits) {
  const double s = std::pow(10.0, digits);
  const double r = std::round(value * s) / s, t = std::trunc(value * s) / s;
  return std::abs(r - shown) < 1e-9 || std::abs(t - shown) < 1e-9;
}

}  // namespace qclone
