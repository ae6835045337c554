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

// qclone command-line front end. Every subcommand produces a list of flat
// rows that are rendered as CSV, JSON or aligned text.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "qclone/broadcast.hpp"
#include "qclone/cloners.hpp"
#include "qclone/concat.hpp"
#include "qclone/deleters.hpp"
#include "qclone/hybrid.hpp"
#include "qclone/measures.hpp"
#include "qclone/tables.hpp"
#include "qclone/verify.hpp"

namespace {

using namespace qclone;
using json = nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";

enum ExitCode { kOk = 0, kMismatch = 1, kUsage = 2 };

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- row model and rendering

using Value = std::variant<double, std::string, bool, std::vector<std::string>>;

struct Row {
  std::vector<std::pair<std::string, Value>> cols;
  Row& add(std::string k, Value v) {
    cols.emplace_back(std::move(k), std::move(v));
    return *this;
  }
};

struct Output {
  std::string command;
  json params = json::object();
  std::vector<Row> rows;
  json summary;  // null unless the command reports one
};

std::string shortest(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, r.ptr};
}

std::string fixed6(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, 6);
  std::string s(buf, r.ptr);
  return s == "-0.000000" ? "0.000000" : s;
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string s;
  for (const std::string& x : v) s += (s.empty() ? "" : sep) + x;
  return s;
}

std::string text(const Value& v, bool pretty) {
  if (const double* d = std::get_if<double>(&v)) return pretty ? fixed6(*d) : shortest(*d);
  if (const bool* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  if (const auto* l = std::get_if<std::vector<std::string>>(&v)) return join(*l, " | ");
  return std::get<std::string>(v);
}

std::vector<std::string> columns(const std::vector<Row>& rows) {
  std::vector<std::string> cols;
  for (const Row& r : rows)
    for (const auto& [k, v] : r.cols)
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  return cols;
}

const Value* lookup(const Row& r, const std::string& key) {
  for (const auto& [k, v] : r.cols)
    if (k == key) return &v;
  return nullptr;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string render_csv(const Output& o) {
  const auto cols = columns(o.rows);
  std::string s;
  for (std::size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + csv_field(cols[i]);
  s += "\n";
  for (const Row& r : o.rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const Value* v = lookup(r, cols[i]);
      s += (i ? "," : "") + (v ? csv_field(text(*v, false)) : std::string());
    }
    s += "\n";
  }
  return s;
}

json to_json(const Value& v) {
  if (const double* d = std::get_if<double>(&v)) return std::isfinite(*d) ? json(*d) : json(nullptr);
  if (const bool* b = std::get_if<bool>(&v)) return *b;
  if (const auto* l = std::get_if<std::vector<std::string>>(&v)) return *l;
  return std::get<std::string>(v);
}

std::string render_json(const Output& o) {
  json doc;
  doc["meta"] = {{"version", kVersion}, {"command", o.command}, {"params", o.params}};
  json rows = json::array();
  for (const Row& r : o.rows) {
    json row = json::object();
    for (const auto& [k, v] : r.cols) row[k] = to_json(v);
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  if (!o.summary.is_null()) doc["summary"] = o.summary;
  return doc.dump(2) + "\n";
}

std::string render_pretty(const Output& o) {
  const auto cols = columns(o.rows);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) width[i] = cols[i].size();
  for (const Row& r : o.rows) {
    std::vector<std::string> line;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const Value* v = lookup(r, cols[i]);
      line.push_back(v ? text(*v, true) : "-");
      width[i] = std::max(width[i], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  std::ostringstream s;
  const auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      s << (i ? "  " : "") << line[i];
      if (i + 1 < line.size()) s << std::string(width[i] - line[i].size(), ' ');
    }
    s << "\n";
  };
  emit(cols);
  for (const auto& line : cells) emit(line);
  if (!o.summary.is_null())
    for (const auto& [k, v] : o.summary.items()) s << k << ": " << v.dump() << "\n";
  return s.str();
}

// ---- spec parsing: "name" or "name:key=value,key=value"

using KeyValues = std::map<std::string, std::string>;

double to_real(const std::string& key, const std::string& s) {
  double x = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw UsageError(key + ": not a number: '" + s + "'");
  return x;
}

int to_int(const std::string& key, const std::string& s) {
  int x = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw UsageError(key + ": not an integer: '" + s + "'");
  return x;
}

// Accepts "0.5", "0.5i", "i", "-i", "0.3+0.4i", "1e-3-2i".
cplx to_complex(const std::string& key, const std::string& s) {
  if (s.empty() || s.back() != 'i') return to_real(key, s);
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < body.size(); ++i)
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') split = i;
  const auto imag = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return to_real(key, t[0] == '+' ? t.substr(1) : t);
  };
  if (split == std::string::npos) return {0.0, imag(body)};
  return {to_real(key, body.substr(0, split)), imag(body.substr(split))};
}

std::pair<std::string, KeyValues> split_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  KeyValues kv;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("expected key=value in '" + spec + "', got '" + item + "'");
      kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  return {spec.substr(0, colon), kv};
}

class Keys {
 public:
  Keys(std::string what, KeyValues kv) : what_(std::move(what)), kv_(std::move(kv)) {}
  bool has(const std::string& k) const { return kv_.count(k) > 0; }
  double real(const std::string& k, double def) { return take(k) ? to_real(k, kv_.at(k)) : def; }
  int integer(const std::string& k, int def) { return take(k) ? to_int(k, kv_.at(k)) : def; }
  cplx complex(const std::string& k, cplx def) { return take(k) ? to_complex(k, kv_.at(k)) : def; }
  // Every supplied key must have been consumed by the family.
  void finish() const {
    for (const auto& [k, v] : kv_)
      if (!used_.count(k)) throw UsageError(what_ + " does not take parameter '" + k + "'");
  }

 private:
  bool take(const std::string& k) {
    used_.insert({k, true});
    return has(k);
  }
  std::string what_;
  KeyValues kv_;
  std::map<std::string, bool> used_;
};

const std::map<std::string, Family>& cloner_families() {
  static const std::map<std::string, Family> m = [] {
    std::map<std::string, Family> out;
    for (Family f : {Family::WZ, Family::WZ_N, Family::BH, Family::BH_OPT, Family::GM_1M, Family::UQCM_D, Family::PC2,
                     Family::PC_D, Family::KR, Family::ECON, Family::PAULI_ASYM, Family::HEIS_ASYM, Family::ANTI,
                     Family::MIXED_23, Family::MIXED_2M})
      out[family_name(f)] = f;
    return out;
  }();
  return m;
}

MachineSpec machine_from(const std::string& name, const KeyValues& kv) {
  const auto it = cloner_families().find(name);
  if (it == cloner_families().end()) throw UsageError("unknown cloner family '" + name + "'");
  Keys k("cloner " + name, kv);
  MachineSpec s;
  switch (it->second) {
    case Family::WZ: s = MachineSpec::wz(); break;
    case Family::WZ_N: s = MachineSpec::wz_n(k.integer("n", 2)); break;
    case Family::BH: s = MachineSpec::bh(k.real("xi", 1.0 / 6.0), k.real("eta", -1.0)); break;
    case Family::BH_OPT: s = MachineSpec::bh_opt(); break;
    case Family::GM_1M: s = MachineSpec::gm(k.integer("M", 2)); break;
    case Family::UQCM_D: s = MachineSpec::uqcm(k.integer("d", 2)); break;
    case Family::PC2: s = MachineSpec::pc2(); break;
    case Family::PC_D: s = MachineSpec::pc_d(k.integer("d", 3)); break;
    case Family::KR: s = MachineSpec::kr(k.real("mu", 0.5)); break;
    case Family::ECON: {
      const int d = k.integer("d", 2);
      s = MachineSpec::econ(d, k.integer("blank", 0));
      break;
    }
    case Family::PAULI_ASYM: s = MachineSpec::pauli(k.real("p", 0.5)); break;
    case Family::HEIS_ASYM: {
      const int d = k.integer("d", 2);
      s = MachineSpec::heis(d, k.real("p", 0.5));
      break;
    }
    case Family::ANTI: s = MachineSpec::anti(); break;
    case Family::MIXED_23: s = MachineSpec::mixed23(); break;
    case Family::MIXED_2M: s = MachineSpec::mixed2m(k.integer("M", 3)); break;
  }
  k.finish();
  return s;
}

MachineSpec machine_from(const std::string& spec) {
  const auto [name, kv] = split_spec(spec);
  return machine_from(name, kv);
}

BlankState blank_from(Keys& k) {
  const double m1sq = k.real("m1sq", 1.0);
  if (m1sq < 0.0 || m1sq > 1.0) throw UsageError("m1sq must lie in [0, 1]");
  return {std::sqrt(m1sq), std::polar(std::sqrt(1.0 - m1sq), k.real("m2phase", 0.0))};
}

DeleterSpec deleter_from(const std::string& name, const KeyValues& kv) {
  Keys k("deleter " + name, kv);
  DeleterSpec s;
  if (name == "pb") {
    s = DeleterSpec::pb(blank_from(k));
  } else if (name == "qiu") {
    s = DeleterSpec::qiu(k.real("r1", 1.0));
  } else if (name == "conv") {
    const double lambda = k.real("lambda", 0.25);
    const BlankState b = blank_from(k);
    s = DeleterSpec::conv(lambda, b, k.real("Y", -1.0));
  } else if (name == "sdep") {
    const cplx a0 = k.complex("a0", 1.0), a1 = k.complex("a1", 0.0), b0 = k.complex("b0", 0.0),
               b1 = k.complex("b1", 1.0);
    s = DeleterSpec::sdep(a0, a1, b0, b1, blank_from(k));
  } else {
    throw UsageError("unknown deleter family '" + name + "' (pb, qiu, conv, sdep)");
  }
  k.finish();
  return s;
}

DeleterSpec deleter_from(const std::string& spec) {
  const auto [name, kv] = split_spec(spec);
  return deleter_from(name, kv);
}

// ---- input states

struct InputFlags {
  double alpha2 = 0.5;
  double phase = 0.0;
  std::vector<double> amps;  // overrides alpha2/phase; real amplitudes, normalized here

  void attach(CLI::App* c) {
    c->add_option("--alpha2", alpha2, "|alpha|^2 of the qubit input")->check(CLI::Range(0.0, 1.0));
    c->add_option("--phase", phase, "relative phase of beta");
    c->add_option("--amps", amps, "real amplitudes of a qudit input")->delimiter(',');
  }
  StateVector state(int dim) const {
    if (amps.empty()) {
      if (dim != 2) throw UsageError("a " + std::to_string(dim) + "-level machine needs --amps");
      return qubit_from_alpha2(alpha2, phase);
    }
    if (static_cast<int>(amps.size()) != dim)
      throw UsageError("--amps has " + std::to_string(amps.size()) + " entries, the machine takes " +
                       std::to_string(dim));
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = amps[i];
    if (v.norm() == 0.0) throw UsageError("--amps is the zero vector");
    return {{dim}, v / v.norm()};
  }
  void record(json& p) const {
    if (amps.empty()) {
      p["alpha2"] = alpha2;
      p["phase"] = phase;
    } else {
      p["amps"] = amps;
    }
  }
};

Row clone_row(const CloneReport& r) {
  Row row;
  row.add("F_a", r.F_a).add("F_b", r.F_b).add("D_a", r.D_a).add("D_b", r.D_b).add("D_ab", r.D_ab);
  row.add("D_ab1", r.D_ab1).add("D_ab2", r.D_ab2).add("D_ab3", r.D_ab3);
  return row;
}

// ---- subcommands

struct Globals {
  std::string format = "pretty";
  double tol = 1e-9;
  std::string out;
};

struct TableCmd {
  std::string id;
  std::string mode = "both";
  void attach(CLI::App* c) {
    c->add_option("id", id, "table id (2.1 ... 4.2) or 'all'")->required();
    c->add_option("--mode", mode, "closed_form, simulate or both")
        ->check(CLI::IsMember({"closed_form", "simulate", "both"}));
  }
  int run(Output& o) const {
    const TableMode m = mode == "closed_form" ? TableMode::ClosedForm
                        : mode == "simulate"  ? TableMode::Simulate
                                              : TableMode::Both;
    std::vector<std::string> ids;
    if (id == "all") {
      ids = table_ids();
    } else if (is_table_id(id)) {
      ids = {id};
    } else {
      throw UsageError("unknown table id '" + id + "'");
    }
    o.params = {{"id", id}, {"mode", mode}};
    int checked = 0, mismatches = 0;
    for (const std::string& t : ids) {
      const TableReport rep = build_table(t, m);
      checked += rep.checked();
      mismatches += rep.mismatches();
      for (const ReportRow& r : rep.rows) {
        Row row;
        if (ids.size() > 1) row.add("table", t);
        for (const auto& [k, v] : r.inputs) row.add(k, v);
        row.add("provenance", provenance_name(r.provenance));
        for (const Cell& c : r.outputs) {
          row.add(c.key, c.value);
          if (c.printed && !std::isnan(*c.printed)) {
            row.add(c.key + "_printed", *c.printed);
            row.add(c.key + "_match", c.match);
          }
        }
        o.rows.push_back(std::move(row));
      }
    }
    o.summary = {{"checked", checked}, {"mismatches", mismatches}};
    return mismatches == 0 ? kOk : kMismatch;
  }
};

struct CloneCmd {
  std::string family = "bh-opt";
  std::map<std::string, std::string> given;
  InputFlags input;
  bool formal = false;
  void attach(CLI::App* c) {
    c->add_option("--family", family, "cloner family")->required();
    for (const char* k : {"xi", "eta", "p", "mu", "n", "d", "M", "blank"})
      c->add_option_function<std::string>(std::string("--") + k, [this, k](const std::string& v) { given[k] = v; },
                                           std::string("family parameter ") + k);
    c->add_flag("--formal", formal, "apply the Gram map without realizing the machine");
    input.attach(c);
  }
  int run(Output& o) const {
    const MachineSpec s = machine_from(family, given);
    const StateVector psi = input.state(input_dim(s));
    o.params = {{"family", family}, {"machine", describe(s)}, {"formal", formal}};
    for (const auto& [k, v] : given) o.params[k] = v;
    input.record(o.params);
    o.rows.push_back(clone_row(clone_report(s, psi, formal)));
    return kOk;
  }
};

struct DeleteCmd {
  std::string family = "pb";
  std::map<std::string, std::string> given;
  InputFlags input;
  int transformers = 0;
  void attach(CLI::App* c) {
    c->add_option("--family", family, "pb, qiu, conv or sdep")->required();
    for (const char* k : {"lambda", "Y", "r1", "m1sq", "m2phase", "a0", "a1", "b0", "b1"})
      c->add_option_function<std::string>(std::string("--") + k, [this, k](const std::string& v) { given[k] = v; },
                                           std::string("family parameter ") + k);
    c->add_option("--transformers", transformers, "transformers applied to the deleted mode")
        ->check(CLI::Range(0, 2));
    input.attach(c);
  }
  int run(Output& o) const {
    const DeleterSpec s = deleter_from(family, given);
    o.params = {{"family", family}, {"machine", describe(s)}, {"transformers", transformers}};
    for (const auto& [k, v] : given) o.params[k] = v;
    input.record(o.params);
    const DeletionReport r = delete_report(s, input.state(2), transformers);
    Row row;
    row.add("F_1", r.F_1).add("F_2", r.F_2).add("D_1", r.D_1).add("machine_overlap", r.machine_overlap);
    row.add("avg_F_1", r.avg_F_1).add("avg_F_2", r.avg_F_2);
    o.rows.push_back(std::move(row));
    return kOk;
  }
};

struct HybridCmd {
  std::string m1 = "bh-opt", m2 = "bh-opt";
  double lambda = 0.5;
  InputFlags input;
  bool formal = false;
  bool bhbh = false;
  void attach(CLI::App* c) {
    c->add_option("--m1", m1, "first component, e.g. 'bh:xi=0.2'");
    c->add_option("--m2", m2, "second component, e.g. 'pauli:p=0.3'");
    c->add_option("--lambda", lambda, "weight of the first component")->check(CLI::Range(0.0, 1.0));
    c->add_flag("--formal", formal, "apply the Gram map without realizing the machine");
    c->add_flag("--bhbh", bhbh, "state-dependent BH + BH-opt optimum at --alpha2, --lambda");
    input.attach(c);
  }
  int run(Output& o) const {
    o.params = {{"lambda", lambda}};
    input.record(o.params);
    if (bhbh) {
      o.params["bhbh"] = true;
      const BhbhResult r = bhbh_state_dependent(input.alpha2, lambda);
      Row row;
      row.add("xi_star", r.xi_star).add("D_min", r.D_min).add("F_hcm", r.F_hcm);
      row.add("lambda_lo", r.lambda_lo).add("xi_hi", r.xi_hi);
      o.rows.push_back(std::move(row));
      return kOk;
    }
    const HybridSpec s{machine_from(m1), machine_from(m2), lambda};
    o.params["m1"] = describe(s.m1);
    o.params["m2"] = describe(s.m2);
    o.params["formal"] = formal;
    o.rows.push_back(clone_row(hybrid_report(s, input.state(input_dim(s.m1)), formal)));
    return kOk;
  }
};

ProtocolBranch branch_from(const std::string& s) {
  for (ProtocolBranch b : {ProtocolBranch::Q0Q0, ProtocolBranch::Q0Q1, ProtocolBranch::Q1Q0, ProtocolBranch::Q1Q1})
    if (branch_name(b) == s) return b;
  throw UsageError("unknown protocol branch '" + s + "' (Q0Q0, Q0Q1, Q1Q0, Q1Q1)");
}

struct BroadcastCmd {
  std::optional<double> lambda;
  std::optional<double> alpha2;
  bool interval = false;
  bool bisect = false;
  std::string protocol;
  void attach(CLI::App* c) {
    c->add_option("--lambda", lambda, "BH copier parameter; defaults to the state-dependent optimum");
    c->add_option("--alpha2", alpha2, "alpha^2 of alpha|00> + beta|11>")->check(CLI::Range(0.0, 1.0));
    c->add_flag("--interval", interval, "alpha^2 ranges of inseparability, separability and broadcasting");
    c->add_flag("--bisect", bisect, "locate the interval ends numerically");
    c->add_option("--protocol", protocol, "three-qubit protocol branch (Q0Q0, Q0Q1, Q1Q0, Q1Q1)");
  }
  int run(Output& o) const {
    if (interval) {
      if (!lambda) throw UsageError("--interval needs --lambda");
      o.params = {{"lambda", *lambda}, {"interval", true}, {"bisect", bisect}};
      for (IntervalKind k : {IntervalKind::Inseparable, IntervalKind::Separable, IntervalKind::Broadcastable}) {
        Interval iv;
        if (k == IntervalKind::Broadcastable) {
          iv = broadcast_interval(*lambda);
        } else {
          iv = bisect ? interval_by_bisection(k, *lambda) : k == IntervalKind::Inseparable ? insep_interval(*lambda)
                                                                                           : sep_interval(*lambda);
        }
        Row row;
        row.add("kind", interval_kind_name(k)).add("lo", iv.lo).add("hi", iv.hi).add("empty", iv.empty());
        o.rows.push_back(std::move(row));
      }
      return kOk;
    }
    if (!alpha2) throw UsageError("broadcast needs --interval or --alpha2");
    if (!protocol.empty()) {
      const ProtocolBranch b = branch_from(protocol);
      o.params = {{"alpha2", *alpha2}, {"protocol", protocol}};
      const ProtocolResult r = three_qubit_protocol(*alpha2, b);
      const ProtocolVerdict v = protocol_verdict(*alpha2, b);
      for (const auto& [pair, ent] : v.entangled) {
        const DensityOperator rho = protocol_reduced(r, {pair[0] - '0', pair[1] - '0'});
        Row row;
        row.add("pair", "rho" + pair).add("entangled", ent).add("concurrence", concurrence_2q(rho));
        o.rows.push_back(std::move(row));
      }
      o.summary = {{"probability", r.probability}, {"broadcast", v.broadcast},
                   {"all_local_separable", v.all_local_separable}};
      return kOk;
    }
    const double l = lambda ? *lambda : sd_cloner_lambda_star(*alpha2);
    o.params = {{"alpha2", *alpha2}, {"lambda", l}};
    Row row;
    row.add("alpha2", *alpha2).add("lambda", l).add("D_a", sd_cloner_distortion(*alpha2, l, 1.0 - 2.0 * l));
    row.add("D_ab", sd_cloner_dab(*alpha2, l)).add("F", broadcast_fidelity(*alpha2, l));
    o.rows.push_back(std::move(row));
    return kOk;
  }
};

struct ConcatCmd {
  std::string cloner = "bh-opt";
  std::string deleter = "pb";
  std::string path = "weighted";
  std::optional<double> alpha2;
  int nodes = 64;
  void attach(CLI::App* c) {
    c->add_option("--cloner", cloner, "cloner spec, e.g. 'bh:xi=0.1666667'");
    c->add_option("--deleter", deleter, "deleter spec, e.g. 'sdep:a0=0.8660254,a1=0.5i,b0=0.5i,b1=0.8660254'");
    c->add_option("--path", path, "weighted (branch-weighted sum) or physical (machine traced out)")
        ->check(CLI::IsMember({"weighted", "physical"}));
    c->add_option("--alpha2", alpha2, "single input; averages over alpha^2 when omitted")
        ->check(CLI::Range(0.0, 1.0));
    c->add_option("--nodes", nodes, "quadrature nodes for the average")->check(CLI::Range(2, 512));
  }
  int run(Output& o) const {
    const PipelineSpec s{machine_from(cloner), deleter_from(deleter)};
    validate(s);
    const PipelinePath p = path == "physical" ? PipelinePath::Physical : PipelinePath::Weighted;
    o.params = {{"cloner", describe(s.cloner)}, {"deleter", describe(s.deleter)}, {"path", path}};
    Row row;
    if (alpha2) {
      o.params["alpha2"] = *alpha2;
      const PipelineResult r = run_pipeline(s, *alpha2, p);
      row.add("alpha2", *alpha2).add("D", r.D).add("F", r.F).add("trace_before", r.trace_before);
    } else {
      o.params["nodes"] = nodes;
      const PipelineAverages a = pipeline_averages(s, p, nodes);
      row.add("avg_D", a.avg_D).add("avg_F", a.avg_F);
    }
    o.rows.push_back(std::move(row));
    return kOk;
  }
};

struct VerifyCmd {
  std::string scope = "all";
  void attach(CLI::App* c) {
    c->add_option("scope", scope, "all or a module name")->check(CLI::IsMember(verify_scopes()));
  }
  int run(Output& o, double tol) const {
    o.params = {{"scope", scope}, {"tol", tol}};
    VerifyOptions opt;
    opt.tol = tol;
    int passed = 0, failed = 0;
    for (const CriterionResult& r : run_verification(scope, opt)) {
      Row row;
      row.add("criterion", static_cast<double>(r.id)).add("module", r.module).add("title", r.title);
      row.add("status", std::string(r.pass ? "PASS" : "FAIL")).add("failures", r.failures).add("notes", r.notes);
      o.rows.push_back(std::move(row));
      (r.pass ? passed : failed) += 1;
    }
    o.summary = {{"passed", passed}, {"failed", failed}};
    return failed == 0 ? kOk : kMismatch;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qclone: quantum cloning, deletion and broadcasting toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "csv, json or pretty")->check(CLI::IsMember({"csv", "json", "pretty"}));
  app.add_option("--tol", g.tol, "tolerance for exact comparisons")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "write to this file instead of stdout");

  TableCmd table;
  CloneCmd clone;
  DeleteCmd del;
  HybridCmd hybrid;
  BroadcastCmd broadcast;
  ConcatCmd concat;
  VerifyCmd verify;
  CLI::App* c_table = app.add_subcommand("table", "regenerate a numeric table and compare with the printed values");
  CLI::App* c_clone = app.add_subcommand("clone", "fidelities and distortions of one cloning machine");
  CLI::App* c_delete = app.add_subcommand("delete", "fidelities of one deletion machine");
  CLI::App* c_hybrid = app.add_subcommand("hybrid", "probabilistic mixture of two cloners");
  CLI::App* c_broadcast = app.add_subcommand("broadcast", "broadcasting of entanglement with BH copiers");
  CLI::App* c_concat = app.add_subcommand("concat", "clone then delete");
  CLI::App* c_verify = app.add_subcommand("verify", "run the acceptance checks");
  table.attach(c_table);
  clone.attach(c_clone);
  del.attach(c_delete);
  hybrid.attach(c_hybrid);
  broadcast.attach(c_broadcast);
  concat.attach(c_concat);
  verify.attach(c_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  Output o;
  int status = kOk;
  try {
    if (c_table->parsed()) {
      o.command = "table";
      status = table.run(o);
    } else if (c_clone->parsed()) {
      o.command = "clone";
      status = clone.run(o);
    } else if (c_delete->parsed()) {
      o.command = "delete";
      status = del.run(o);
    } else if (c_hybrid->parsed()) {
      o.command = "hybrid";
      status = hybrid.run(o);
    } else if (c_broadcast->parsed()) {
      o.command = "broadcast";
      status = broadcast.run(o);
    } else if (c_concat->parsed()) {
      o.command = "concat";
      status = concat.run(o);
    } else {
      o.command = "verify";
      status = verify.run(o, g.tol);
    }
  } catch (const UnrealizableSpec& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  const std::string rendered = g.format == "csv"    ? render_csv(o)
                               : g.format == "json" ? render_json(o)
                                                    : render_pretty(o);
  if (g.out.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << g.out << "\n";
      return kUsage;
    }
    f << rendered;
  }
  return status;
}
