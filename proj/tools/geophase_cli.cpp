// Copyright 2026 The geophase Authors
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

// geophase command-line front end.
//
//   geophase simulate-single | calibrate | simulate-cnot | sweep | validate
//            [--config FILE] [--delta X] [--theta X] [--mode M] [--out DIR]
//            [--samples N] [--method closed|rk4] [--set key=value ...]
//
// Exit codes: 0 success, 1 validation assertion failed, 2 bad input,
// 3 numeric contract violation.

#include <CLI11.hpp>
#include <json.hpp>

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "geophase/geophase.h"

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitNumeric = 3;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LibraryError : public std::runtime_error {
 public:
  LibraryError(gp_status status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  int exit_code() const {
    return status_ == GP_ERR_INVALID_ARGUMENT ? kExitBadInput : kExitNumeric;
  }

 private:
  gp_status status_;
};

void check(gp_status s) {
  if (s != GP_OK) throw LibraryError(s, gp_last_error());
}

// ------------------------------------------------------------------ numbers

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Accepts a decimal number or a multiple of pi: "pi", "-pi/8", "3*pi/4".
double parse_number(const std::string& key, const std::string& text) {
  static const std::regex pi_form(R"(^\s*([-+]?[0-9.eE+-]*?)\s*\*?\s*pi\s*(?:/\s*([0-9.eE+-]+))?\s*$)");
  std::smatch m;
  auto plain = [&](const std::string& s) -> double {
    double v = 0;
    const char* b = s.data();
    const char* e = b + s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(*b))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(e[-1]))) --e;
    if (b < e && *b == '+') ++b;
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e || b == e)
      throw InputError("invalid number for '" + key + "': '" + text + "'");
    return v;
  };
  if (std::regex_match(text, m, pi_form)) {
    double coeff = 1.0;
    const std::string c = m[1].str();
    if (c == "-") coeff = -1.0;
    else if (!c.empty() && c != "+") coeff = plain(c);
    double den = m[2].matched ? plain(m[2].str()) : 1.0;
    if (den == 0.0) throw InputError("invalid number for '" + key + "': '" + text + "'");
    return coeff * std::numbers::pi / den;
  }
  return plain(text);
}

int parse_int(const std::string& key, const std::string& text) {
  int v = 0;
  const char* b = text.data();
  const char* e = b + text.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e || b == e)
    throw InputError("invalid integer for '" + key + "': '" + text + "'");
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(parse_number(key, item));
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// ------------------------------------------------------------------- config

struct RunConfig {
  // device
  double e_j0 = 1.0;
  double e_ch = 50.0;
  double delta_coupling = 1.0;
  // single qubit
  double delta = 0.04;
  std::string step3_mode = "symmetric";
  double alpha_re = 0.0, alpha_im = 0.0, beta_re = 1.0, beta_im = 0.0;
  std::string method = "closed";
  int samples = 1001;
  double target_gamma = std::numbers::pi / 2;
  // two qubits
  double theta = std::numbers::pi / 8;
  std::string rotation_mode = "instantaneous";
  std::string compensation = "derived";
  // sweep
  std::string sweep_param = "delta";
  std::vector<double> sweep_values;
  // validation
  std::vector<double> ratios{0.2, 0.1, 0.05, 0.025};
  int n_min = -2;
  int n_max = 3;
  // output
  std::string out = ".";
};

void require_one_of(const std::string& key, const std::string& v,
                    std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (v == a) return;
  std::string msg = "invalid value for '" + key + "': '" + v + "' (expected";
  for (const char* a : allowed) msg += std::string(" ") + a;
  throw InputError(msg + ")");
}

void set_key(RunConfig& c, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  using Setter = std::function<void(RunConfig&, const std::string&)>;
  auto num = [](double RunConfig::*f) -> Setter {
    return [f](RunConfig& c, const std::string& v) { c.*f = parse_number("", v); };
  };
  static const std::map<std::string, Setter> table = {
      {"e_j0", num(&RunConfig::e_j0)},
      {"e_ch", num(&RunConfig::e_ch)},
      {"delta_coupling", num(&RunConfig::delta_coupling)},
      {"delta", num(&RunConfig::delta)},
      {"alpha_re", num(&RunConfig::alpha_re)},
      {"alpha_im", num(&RunConfig::alpha_im)},
      {"beta_re", num(&RunConfig::beta_re)},
      {"beta_im", num(&RunConfig::beta_im)},
      {"target_gamma", num(&RunConfig::target_gamma)},
      {"theta", num(&RunConfig::theta)},
      {"step3_mode",
       [](RunConfig& c, const std::string& v) {
         require_one_of("step3_mode", v, {"symmetric", "literal"});
         c.step3_mode = v;
       }},
      {"method",
       [](RunConfig& c, const std::string& v) {
         require_one_of("method", v, {"closed", "rk4"});
         c.method = v;
       }},
      {"samples", [](RunConfig& c, const std::string& v) { c.samples = parse_int("samples", v); }},
      {"rotation_mode",
       [](RunConfig& c, const std::string& v) {
         require_one_of("rotation_mode", v, {"instantaneous", "finite"});
         c.rotation_mode = v;
       }},
      {"compensation",
       [](RunConfig& c, const std::string& v) {
         require_one_of("compensation", v, {"derived", "paper_literal"});
         c.compensation = v;
       }},
      {"sweep_param",
       [](RunConfig& c, const std::string& v) {
         require_one_of("sweep_param", v, {"delta", "theta"});
         c.sweep_param = v;
       }},
      {"sweep_values",
       [](RunConfig& c, const std::string& v) { c.sweep_values = parse_list("sweep_values", v); }},
      {"ratios", [](RunConfig& c, const std::string& v) { c.ratios = parse_list("ratios", v); }},
      {"n_min", [](RunConfig& c, const std::string& v) { c.n_min = parse_int("n_min", v); }},
      {"n_max", [](RunConfig& c, const std::string& v) { c.n_max = parse_int("n_max", v); }},
      {"out", [](RunConfig& c, const std::string& v) { c.out = v; }},
  };
  const auto it = table.find(key);
  if (it == table.end()) throw InputError("unknown config key '" + key + "'");
  try {
    it->second(c, v);
  } catch (const InputError& e) {
    std::string msg = e.what();
    const auto pos = msg.find("''");
    if (pos != std::string::npos) msg.replace(pos, 2, "'" + key + "'");
    throw InputError(msg);
  }
}

void apply_assignment(RunConfig& c, const std::string& line, const std::string& where) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) throw InputError(where + ": expected key=value");
  const std::string key = trim(line.substr(0, eq));
  if (key.empty()) throw InputError(where + ": empty key");
  set_key(c, key, line.substr(eq + 1));
}

void load_config_file(RunConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    apply_assignment(c, line, path + ":" + std::to_string(lineno));
  }
}

Json config_echo(const RunConfig& c) {
  return Json{
      {"e_j0", c.e_j0},
      {"e_ch", c.e_ch},
      {"delta_coupling", c.delta_coupling},
      {"delta", c.delta},
      {"step3_mode", c.step3_mode},
      {"alpha_re", c.alpha_re},
      {"alpha_im", c.alpha_im},
      {"beta_re", c.beta_re},
      {"beta_im", c.beta_im},
      {"method", c.method},
      {"samples", c.samples},
      {"target_gamma", c.target_gamma},
      {"theta", c.theta},
      {"rotation_mode", c.rotation_mode},
      {"compensation", c.compensation},
      {"sweep_param", c.sweep_param},
      {"sweep_values", c.sweep_values},
      {"ratios", c.ratios},
      {"n_min", c.n_min},
      {"n_max", c.n_max},
      {"out", c.out},
  };
}

// ------------------------------------------------------------------ output

// JSON with every floating-point number at 17 significant digits; NaN and
// infinities become null.
void write_json(std::ostream& os, const Json& j, int indent = 0) {
  const std::string pad(indent + 2, ' ');
  const std::string close(indent, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(k).dump() << ": ";
        write_json(os, v, indent + 2);
      }
      os << "\n" << close << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[";
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ", ";
        first = false;
        write_json(os, v, indent + 2);
      }
      os << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        os << "null";
        return;
      }
      std::string s = fmt(v);
      if (s.find_first_of(".eE") == std::string::npos) s += ".0";
      os << s;
      return;
    }
    default:
      os << j.dump();
  }
}

fs::path prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InputError("cannot create output directory '" + dir + "'");
  const fs::path probe = fs::path(dir) / ".geophase_write_probe";
  {
    std::ofstream f(probe);
    if (!f) throw InputError("output directory '" + dir + "' is not writable");
  }
  fs::remove(probe, ec);
  return fs::path(dir);
}

void write_report(const fs::path& path, const Json& doc) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path.string() + "'");
  write_json(f, doc);
  f << "\n";
}

Json report_header(const std::string& command, const RunConfig& c,
                   const std::vector<std::string>& warnings) {
  Json doc;
  doc["tool"] = "geophase";
  doc["version"] = gp_version();
  doc["command"] = command;
  doc["config"] = config_echo(c);
  doc["warnings"] = warnings;
  return doc;
}

void emit_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

// ---------------------------------------------------------------- library

class Device {
 public:
  explicit Device(const RunConfig& c) {
    check(gp_device_create(c.e_j0, c.e_ch, c.delta_coupling, &h_));
  }
  ~Device() { gp_device_destroy(h_); }
  Device(const Device&) = delete;
  Device& operator=(const Device&) = delete;

  const gp_device* get() const { return h_; }
  std::vector<std::string> warnings() const {
    std::vector<std::string> out;
    for (size_t i = 0; i < gp_device_warning_count(h_); ++i) out.emplace_back(gp_device_warning(h_, i));
    return out;
  }

 private:
  gp_device* h_ = nullptr;
};

template <class T, void (*Destroy)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Destroy(p); }
};

gp_method method_of(const RunConfig& c) {
  return c.method == "rk4" ? GP_METHOD_RK4 : GP_METHOD_CLOSED_FORM;
}

Json phase_report_json(const gp_phase_report& r) {
  return Json{{"total_phase", r.total_phase},
              {"dynamic_phase", r.dynamic_phase},
              {"geometric_phase", r.geometric_phase},
              {"geometric_phase_wrapped", r.geometric_phase_wrapped},
              {"cyclicity_defect", r.cyclicity_defect},
              {"geometric_phase_from_area", r.geo_from_area},
              {"phase_area_mismatch", r.area_mismatch}};
}

struct SingleResult {
  Json results;
  std::vector<std::string> warnings;
};

SingleResult single_qubit(const Device& dev, const RunConfig& c, double delta,
                          gp_single_run** keep = nullptr) {
  Handle<gp_single_run, gp_single_run_destroy> run;
  check(gp_single_run_create(dev.get(), delta,
                             c.step3_mode == "literal" ? GP_STEP3_LITERAL : GP_STEP3_SYMMETRIC,
                             c.alpha_re, c.alpha_im, c.beta_re, c.beta_im, method_of(c),
                             c.samples, &run.p));
  gp_single_summary s;
  check(gp_single_run_summary(run.p, &s));
  double re[2], im[2];
  check(gp_single_run_final_state(run.p, re, im));

  SingleResult out;
  Json& r = out.results;
  r["delta"] = delta;
  r["tau"] = s.tau;
  r["gamma_predicted"] = s.gamma_predicted;
  r["gamma_measured"] = s.gamma_from_plus;
  r["gamma_from_plus_y"] = s.gamma_from_plus;
  r["gamma_from_minus_y"] = s.gamma_from_minus;
  r["eigenstates_cyclic"] = s.eigenstates_cyclic != 0;
  r["eigen_cyclicity_defect"] = s.eigen_cyclicity_defect;
  r["final_population_up"] = s.final_population_up;
  r["final_population_down"] = s.final_population_down;
  r["final_state"] = Json{{"re", {re[0], re[1]}}, {"im", {im[0], im[1]}}};
  r["interference_fidelity"] = s.interference_fidelity;
  r["interference_amplitude_residual"] = s.interference_amplitude_residual;
  r["interference_population_residual"] = s.interference_population_residual;
  Json reports = Json::object();
  for (auto [name, which] : {std::pair{"plus_y", GP_PLUS_Y}, std::pair{"minus_y", GP_MINUS_Y}}) {
    gp_phase_report pr;
    const gp_status st = gp_single_run_phase_report(run.p, which, &pr);
    if (st == GP_OK) {
      reports[name] = phase_report_json(pr);
    } else if (st == GP_ERR_NON_CYCLIC) {
      reports[name] = nullptr;
    } else {
      check(st);
    }
  }
  r["phase_reports"] = reports;
  if (!s.eigenstates_cyclic)
    out.warnings.push_back("sigma_y eigenstate loop does not close (cyclicity defect " +
                           fmt(s.eigen_cyclicity_defect) + "); geometric phases not reported");
  if (keep) {
    *keep = run.p;
    run.p = nullptr;
  }
  return out;
}

struct GateResult {
  Json results;
  gp_gate_summary summary;
};

Json matrix_json(const double re[16], const double im[16]) {
  Json jr = Json::array(), ji = Json::array();
  for (int i = 0; i < 4; ++i) {
    jr.push_back({re[4 * i], re[4 * i + 1], re[4 * i + 2], re[4 * i + 3]});
    ji.push_back({im[4 * i], im[4 * i + 1], im[4 * i + 2], im[4 * i + 3]});
  }
  return Json{{"re", jr}, {"im", ji}};
}

GateResult gate(const Device& dev, const RunConfig& c, double theta) {
  Handle<gp_gate_run, gp_gate_run_destroy> run;
  check(gp_gate_run_create(
      dev.get(), theta, c.rotation_mode == "finite" ? GP_ROTATION_FINITE : GP_ROTATION_INSTANTANEOUS,
      c.compensation == "paper_literal" ? GP_COMPENSATION_PAPER_LITERAL : GP_COMPENSATION_DERIVED,
      &run.p));
  GateResult out;
  gp_gate_summary& s = out.summary;
  check(gp_gate_run_summary(run.p, &s));
  double re[16], im[16], lre[16], lim[16];
  check(gp_gate_run_unitary(run.p, 0, re, im));
  check(gp_gate_run_unitary(run.p, 1, lre, lim));
  double g1r, g1i, g2;
  check(gp_local_invariants(re, im, &g1r, &g1i, &g2));
  Json& r = out.results;
  r["theta"] = theta;
  r["tau"] = s.tau;
  r["gamma_measured"] = s.gamma_measured;
  r["gamma_nominal"] = s.gamma_nominal;
  r["cnot_fidelity"] = s.fidelity_vs_target;
  r["conditional_identity_defect"] = s.conditional_identity_defect;
  r["block_phase_control_down"] = s.block_phase_down;
  r["block_phase_control_up"] = s.block_phase_up;
  r["off_block_leakage"] = s.leakage;
  r["local_invariants"] = Json{{"g1_re", g1r}, {"g1_im", g1i}, {"g2", g2}};
  r["unitary_module_order"] = matrix_json(re, im);
  r["unitary_listed_order"] = matrix_json(lre, lim);
  return out;
}

// --------------------------------------------------------------- commands

int cmd_simulate_single(const RunConfig& c) {
  const fs::path dir = prepare_out_dir(c.out);
  const Device dev(c);
  std::vector<std::string> warnings = dev.warnings();
  gp_single_run* raw = nullptr;
  SingleResult res = single_qubit(dev, c, c.delta, &raw);
  Handle<gp_single_run, gp_single_run_destroy> run{raw};
  warnings.insert(warnings.end(), res.warnings.begin(), res.warnings.end());

  std::ofstream csv(dir / "trajectory.csv");
  if (!csv) throw InputError("cannot write trajectory.csv");
  csv << "t,re_up,im_up,re_down,im_down,bloch_x,bloch_y,bloch_z\n";
  const size_t n = gp_single_run_sample_count(run.p);
  for (size_t i = 0; i < n; ++i) {
    double t, re[2], im[2], b[3];
    check(gp_single_run_sample(run.p, i, &t, re, im, b));
    csv << fmt(t) << ',' << fmt(re[0]) << ',' << fmt(im[0]) << ',' << fmt(re[1]) << ','
        << fmt(im[1]) << ',' << fmt(b[0]) << ',' << fmt(b[1]) << ',' << fmt(b[2]) << '\n';
  }

  Json doc = report_header("simulate-single", c, warnings);
  doc["results"] = res.results;
  doc["trajectory_file"] = "trajectory.csv";
  doc["trajectory_samples"] = n;
  write_report(dir / "report.json", doc);
  emit_warnings(warnings);
  std::cout << "tau = " << fmt(res.results["tau"].get<double>())
            << "\ngamma_predicted = " << fmt(res.results["gamma_predicted"].get<double>())
            << "\ngamma_measured = " << fmt(res.results["gamma_measured"].get<double>())
            << "\nP(up) = " << fmt(res.results["final_population_up"].get<double>()) << "\n";
  return kExitOk;
}

int cmd_calibrate(const RunConfig& c) {
  const fs::path dir = prepare_out_dir(c.out);
  const Device dev(c);
  std::vector<std::string> warnings = dev.warnings();
  gp_calibration cal;
  check(gp_calibrate_delta(dev.get(), c.target_gamma, &cal));
  if (cal.used_bisection)
    warnings.push_back("analytic inverse missed the simulation check; delta found by bisection");
  Json doc = report_header("calibrate", c, warnings);
  doc["results"] = Json{{"target_gamma", c.target_gamma},
                        {"delta", cal.delta},
                        {"tau", cal.tau},
                        {"gamma_simulated", cal.gamma_simulated},
                        {"residual", cal.residual},
                        {"used_bisection", cal.used_bisection != 0}};
  write_report(dir / "report.json", doc);
  emit_warnings(warnings);
  std::cout << "delta = " << fmt(cal.delta) << "\ntau = " << fmt(cal.tau)
            << "\nresidual = " << fmt(cal.residual) << "\n";
  return kExitOk;
}

int cmd_simulate_cnot(const RunConfig& c) {
  const fs::path dir = prepare_out_dir(c.out);
  const Device dev(c);
  const std::vector<std::string> warnings = dev.warnings();
  const GateResult g = gate(dev, c, c.theta);
  Json doc = report_header("simulate-cnot", c, warnings);
  doc["results"] = g.results;
  write_report(dir / "report.json", doc);
  emit_warnings(warnings);
  std::cout << "gamma_measured = " << fmt(g.summary.gamma_measured)
            << "\ncnot_fidelity = " << fmt(g.summary.fidelity_vs_target)
            << "\nconditional_identity_defect = " << fmt(g.summary.conditional_identity_defect)
            << "\n";
  return kExitOk;
}

int cmd_sweep(const RunConfig& c) {
  if (c.sweep_values.empty()) throw InputError("empty sweep grid (set sweep_values)");
  const fs::path dir = prepare_out_dir(c.out);
  const Device dev(c);
  std::vector<std::string> warnings = dev.warnings();

  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  for (double v : c.sweep_values) {
    std::vector<std::pair<std::string, double>> row;
    if (c.sweep_param == "delta") {
      SingleResult r = single_qubit(dev, c, v);
      for (const auto& w : r.warnings) warnings.push_back("delta = " + fmt(v) + ": " + w);
      for (const char* k : {"delta", "tau", "gamma_predicted", "gamma_measured",
                            "gamma_from_plus_y", "gamma_from_minus_y", "eigen_cyclicity_defect",
                            "final_population_up", "final_population_down",
                            "interference_fidelity", "interference_amplitude_residual",
                            "interference_population_residual"})
        row.emplace_back(k, r.results[k].get<double>());
      const Json& pr = r.results["phase_reports"];
      for (const char* e : {"plus_y", "minus_y"}) {
        for (const char* k : {"total_phase", "dynamic_phase", "geometric_phase_wrapped",
                              "phase_area_mismatch"}) {
          const double val = pr[e].is_null() ? std::nan("") : pr[e][k].get<double>();
          row.emplace_back(std::string(e) + "_" + k, val);
        }
      }
    } else {
      const GateResult g = gate(dev, c, v);
      for (const char* k : {"theta", "tau", "gamma_measured", "gamma_nominal", "cnot_fidelity",
                            "conditional_identity_defect", "block_phase_control_down",
                            "block_phase_control_up", "off_block_leakage"})
        row.emplace_back(k, g.results[k].get<double>());
    }
    if (columns.empty())
      for (const auto& [k, _] : row) columns.push_back(k);
    std::vector<double> vals;
    for (const auto& [_, x] : row) vals.push_back(x);
    rows.push_back(std::move(vals));
  }

  std::ofstream csv(dir / "sweep.csv");
  if (!csv) throw InputError("cannot write sweep.csv");
  for (size_t i = 0; i < columns.size(); ++i) csv << (i ? "," : "") << columns[i];
  csv << "\n";
  for (const auto& r : rows) {
    for (size_t i = 0; i < r.size(); ++i) csv << (i ? "," : "") << fmt(r[i]);
    csv << "\n";
  }
  Json doc = report_header("sweep", c, warnings);
  doc["results"] = Json{{"rows", rows.size()}, {"columns", columns}, {"sweep_file", "sweep.csv"}};
  write_report(dir / "report.json", doc);
  emit_warnings(warnings);
  std::cout << "wrote " << rows.size() << " rows to " << (dir / "sweep.csv").string() << "\n";
  return kExitOk;
}

int cmd_validate(const RunConfig& c) {
  if (!(c.n_min <= 0 && c.n_max >= 1))
    throw InputError("invalid truncation window [" + std::to_string(c.n_min) + ", " +
                     std::to_string(c.n_max) + "]: must contain n = 0 and n = 1");
  if (c.ratios.empty()) throw InputError("empty ratio list");
  const fs::path dir = prepare_out_dir(c.out);
  Handle<gp_validation, gp_validation_destroy> v;
  check(gp_validation_create(c.e_ch, c.ratios.data(), c.ratios.size(), c.n_min, c.n_max,
                             c.target_gamma, &v.p));
  const bool monotone = gp_validation_monotone(v.p) != 0;
  Json rows = Json::array();
  std::cout << "ratio,e_j0,delta,leakage,discrepancy,widening_change\n";
  for (size_t i = 0; i < gp_validation_row_count(v.p); ++i) {
    gp_validation_entry e;
    check(gp_validation_row(v.p, i, &e));
    rows.push_back(Json{{"ratio", e.ratio},
                        {"e_j0", e.e_j0},
                        {"delta", e.delta},
                        {"leakage", e.leakage},
                        {"discrepancy", e.discrepancy},
                        {"widening_change", e.widening_change}});
    std::cout << fmt(e.ratio) << ',' << fmt(e.e_j0) << ',' << fmt(e.delta) << ','
              << fmt(e.leakage) << ',' << fmt(e.discrepancy) << ',' << fmt(e.widening_change)
              << "\n";
  }
  std::vector<std::string> warnings;
  if (!monotone) warnings.push_back("discrepancy is not monotone decreasing across the ratios");
  Json doc = report_header("validate", c, warnings);
  doc["results"] = Json{{"levels", c.n_max - c.n_min + 1},
                        {"discrepancy_monotone", monotone},
                        {"rows", rows}};
  write_report(dir / "report.json", doc);
  emit_warnings(warnings);
  if (!monotone) {
    std::cerr << "assertion failed: discrepancy not monotone decreasing\n";
    return kExitAssertion;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric-phase simulator for superconducting charge qubits", "geophase"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gp_version()));

  struct Flags {
    std::string config;
    std::optional<std::string> delta, theta, mode, out, method;
    std::optional<int> samples;
    std::vector<std::string> sets;
  } flags;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"simulate-single", "Run the single-qubit interference protocol"},
      {"calibrate", "Find the bias offset for a target phase"},
      {"simulate-cnot", "Build the conditional two-qubit gate and score it"},
      {"sweep", "Run a delta or theta grid and write one CSV row per point"},
      {"validate", "Compare the two-level model with the truncated charge basis"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", flags.config, "Flat key=value config file");
    sub->add_option("--delta", flags.delta, "Bias offset delta");
    sub->add_option("--theta", flags.theta, "Tilt angle theta (radians; 'pi/8' accepted)");
    sub->add_option("--mode", flags.mode,
                    "symmetric|literal (step 3) or instantaneous|finite (rotations)");
    sub->add_option("--out", flags.out, "Output directory");
    sub->add_option("--samples", flags.samples, "Samples per segment");
    sub->add_option("--method", flags.method, "closed|rk4");
    sub->add_option("--set", flags.sets, "Override any config key (key=value)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    RunConfig c;
    if (!flags.config.empty()) load_config_file(c, flags.config);
    for (const auto& s : flags.sets) apply_assignment(c, s, "--set");
    if (flags.delta) set_key(c, "delta", *flags.delta);
    if (flags.theta) set_key(c, "theta", *flags.theta);
    if (flags.mode) {
      if (*flags.mode == "symmetric" || *flags.mode == "literal")
        set_key(c, "step3_mode", *flags.mode);
      else if (*flags.mode == "instantaneous" || *flags.mode == "finite")
        set_key(c, "rotation_mode", *flags.mode);
      else
        throw InputError("invalid --mode '" + *flags.mode + "'");
    }
    if (flags.out) set_key(c, "out", *flags.out);
    if (flags.samples) c.samples = *flags.samples;
    if (flags.method) set_key(c, "method", *flags.method);

    if (command == "simulate-single") return cmd_simulate_single(c);
    if (command == "calibrate") return cmd_calibrate(c);
    if (command == "simulate-cnot") return cmd_simulate_cnot(c);
    if (command == "sweep") return cmd_sweep(c);
    return cmd_validate(c);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const LibraryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
