// Copyright 2026 The twomode Authors.
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

#ifndef TWOMODE_SCENARIO_HPP
#define TWOMODE_SCENARIO_HPP

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "twomode/classifier.hpp"
#include "twomode/entanglement.hpp"
#include "twomode/evolution.hpp"
#include "twomode/field_states.hpp"
#include "twomode/model.hpp"
#include "twomode/text.hpp"

#ifndef TWOMODE_VERSION
#define TWOMODE_VERSION "1.0.0"
#endif

namespace twomode {

enum class Picture { general, SC, AC, TC, DJC };

inline std::string to_string(Picture p) {
  switch (p) {
    case Picture::general: return "general";
    case Picture::SC: return "SC";
    case Picture::AC: return "AC";
    case Picture::TC: return "TC";
    case Picture::DJC: return "DJC";
  }
  return "?";
}

inline Picture parse_picture(std::string_view s) {
  const std::string l = text::lower(text::trim(s));
  if (l == "general") return Picture::general;
  if (l == "sc") return Picture::SC;
  if (l == "ac") return Picture::AC;
  if (l == "tc") return Picture::TC;
  if (l == "djc") return Picture::DJC;
  throw ConfigError("unknown picture '" + std::string(s) + "' (expected general, SC, AC, TC, DJC)");
}

inline int picture_modes(Picture p) { return p == Picture::TC ? 1 : 2; }

struct Measures {
  bool concurrence = true;
  bool eof = false;
  std::vector<CutKind> negativity;
};

struct Scenario {
  std::string name = "scenario";
  ModelParams model;
  Picture picture = Picture::general;
  AtomicLabel atoms = AtomicLabel::gg;
  FieldSpec field = FieldSpec::fock(0, 0);
  double t_max = 25.0;
  std::size_t samples = 501;
  Measures measures;
  ClassifyOptions classify;
  /// Raise model.n_max until the field fits within model.eps_trunc.
  bool auto_n_max = false;
  std::vector<double> phi_grid;
  std::string scan_parameter;
  double scan_lo = 0.0;
  double scan_hi = 1.0;
  double scan_tol = 0.01;
  std::string output;
  int line = 0;

  /// phi actually used by the Hamiltonian.
  double effective_phi() const {
    switch (picture) {
      case Picture::SC: return 0.0;
      case Picture::AC: return std::numbers::pi;
      default: return model.phi;
    }
  }

  void validate() const {
    model.validate();
    if (samples < 2) throw ConfigError("scenario '" + name + "': samples must be at least 2", line);
    if (!(t_max > 0.0)) throw ConfigError("scenario '" + name + "': t_max must be positive", line);
    if (picture_modes(picture) == 1) {
      for (CutKind c : measures.negativity)
        if (c != CutKind::atom_atom) {
          throw ConfigError("scenario '" + name + "': cut " + to_string(c) + " needs a two-mode picture", line);
        }
    }
    for (double p : phi_grid)
      if (!(p >= 0.0 && p < 2.0 * std::numbers::pi)) throw ConfigError("scenario '" + name + "': phi grid outside [0, 2pi)", line);
  }
};

// ---------------------------------------------------------------------------
// Config grammar.
//
//   # comment
//   [defaults]            keys here apply to every later scenario
//   [scenario NAME]
//   key = value
//
// Unknown keys and malformed values are errors carrying the line number.

namespace detail {

inline double config_real(std::string_view v, int line, const std::string& key) {
  const auto r = text::parse_real(v);
  if (!r) throw ConfigError("'" + key + "' expects a number, got '" + std::string(v) + "'", line);
  return *r;
}

inline long config_int(std::string_view v, int line, const std::string& key) {
  const auto r = text::parse_int(v);
  if (!r) throw ConfigError("'" + key + "' expects an integer, got '" + std::string(v) + "'", line);
  return *r;
}

inline bool config_bool(std::string_view v, int line, const std::string& key) {
  const std::string l = text::lower(text::trim(v));
  if (l == "true" || l == "yes" || l == "1" || l == "on") return true;
  if (l == "false" || l == "no" || l == "0" || l == "off") return false;
  throw ConfigError("'" + key + "' expects true or false", line);
}

/// "a, b, c" or "linspace(a, b, n)".
inline std::vector<double> config_grid(std::string_view v, int line, const std::string& key) {
  const std::string_view s = text::trim(v);
  std::vector<double> out;
  if (s.rfind("linspace(", 0) == 0 && s.back() == ')') {
    const auto args = text::split(s.substr(9, s.size() - 10), ',');
    if (args.size() != 3) throw ConfigError("linspace takes (start, stop, count)", line);
    const double a = config_real(args[0], line, key), b = config_real(args[1], line, key);
    const long n = config_int(args[2], line, key);
    if (n < 1) throw ConfigError("linspace count must be positive", line);
    for (long k = 0; k < n; ++k) out.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1));
    return out;
  }
  for (const auto& part : text::split(s, ',')) out.push_back(config_real(part, line, key));
  return out;
}

/// "concurrence, eof, negativity(atom-atom), negativity(field-field)".
inline Measures config_measures(std::string_view v, int line) {
  Measures m;
  m.concurrence = false;
  std::string_view s = text::trim(v);
  // Split on commas that are not inside parentheses.
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.emplace_back(text::trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.emplace_back(text::trim(cur));
  for (const auto& p : parts) {
    const std::string l = text::lower(p);
    if (l == "concurrence") m.concurrence = true;
    else if (l == "eof") m.eof = true;
    else if (l.rfind("negativity(", 0) == 0 && l.back() == ')') {
      try {
        m.negativity.push_back(parse_cut(l.substr(11, l.size() - 12)));
      } catch (const ConfigError& e) {
        throw ConfigError(e.what(), line);
      }
    } else {
      throw ConfigError("unknown measure '" + p + "'", line);
    }
  }
  m.concurrence = true;  // the classifier always needs it
  return m;
}

inline void apply_key(Scenario& s, const std::string& key, const std::string& value, int line) {
  auto wrap = [&](auto&& f) {
    try {
      f();
    } catch (const ConfigError& e) {
      if (e.line() > 0) throw;
      throw ConfigError(e.what(), line);
    }
  };
  if (key == "picture") wrap([&] { s.picture = parse_picture(value); });
  else if (key == "phi") s.model.phi = config_real(value, line, key);
  else if (key == "g") s.model.g = config_real(value, line, key);
  else if (key == "omega0") s.model.omega0 = config_real(value, line, key);
  else if (key == "include_free") s.model.include_free = config_bool(value, line, key);
  else if (key == "n_max") s.model.n_max = static_cast<int>(config_int(value, line, key));
  else if (key == "eps_trunc") s.model.eps_trunc = config_real(value, line, key);
  else if (key == "auto_n_max") s.auto_n_max = config_bool(value, line, key);
  else if (key == "atoms") wrap([&] { s.atoms = parse_atomic_label(value); });
  else if (key == "field") wrap([&] { s.field = FieldSpec::parse(value); });
  else if (key == "t_max") s.t_max = config_real(value, line, key);
  else if (key == "samples") {
    const long n = config_int(value, line, key);
    if (n < 2) throw ConfigError("samples must be at least 2", line);
    s.samples = static_cast<std::size_t>(n);
  } else if (key == "measures") s.measures = config_measures(value, line);
  else if (key == "eps_zero") s.classify.eps_zero = config_real(value, line, key);
  else if (key == "dead_fraction") s.classify.dead_fraction = config_real(value, line, key);
  else if (key == "refine_fraction") s.classify.refine_fraction = config_real(value, line, key);
  else if (key == "check_horizon") s.classify.check_horizon = config_bool(value, line, key);
  else if (key == "phi_grid") s.phi_grid = config_grid(value, line, key);
  else if (key == "scan_parameter") s.scan_parameter = text::lower(value);
  else if (key == "scan_lo") s.scan_lo = config_real(value, line, key);
  else if (key == "scan_hi") s.scan_hi = config_real(value, line, key);
  else if (key == "scan_tol") s.scan_tol = config_real(value, line, key);
  else if (key == "output") s.output = value;
  else throw ConfigError("unknown key '" + key + "'", line);
}

}  // namespace detail

inline std::vector<Scenario> parse_config(std::string_view source) {
  std::vector<Scenario> out;
  Scenario defaults;
  Scenario* current = nullptr;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= source.size()) {
    const auto nl = source.find('\n', pos);
    std::string_view raw = source.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? source.size() + 1 : nl + 1;
    ++line_no;
    const std::string_view line = text::trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      const std::string_view inner = text::trim(line.substr(1, line.size() - 2));
      if (text::lower(inner) == "defaults") {
        if (!out.empty()) throw ConfigError("[defaults] must precede scenarios", line_no);
        current = &defaults;
        continue;
      }
      const std::string head = "scenario";
      if (text::lower(inner.substr(0, head.size())) != head) {
        throw ConfigError("expected [scenario NAME] or [defaults]", line_no);
      }
      const std::string name(text::trim(inner.substr(head.size())));
      if (name.empty()) throw ConfigError("scenario needs a name", line_no);
      for (const auto& s : out)
        if (s.name == name) throw ConfigError("duplicate scenario '" + name + "'", line_no);
      out.push_back(defaults);
      out.back().name = name;
      out.back().line = line_no;
      current = &out.back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected key = value", line_no);
    if (!current) throw ConfigError("key outside any section", line_no);
    const std::string key = text::lower(text::trim(line.substr(0, eq)));
    const std::string value(text::trim(line.substr(eq + 1)));
    if (value.empty()) throw ConfigError("empty value for '" + key + "'", line_no);
    detail::apply_key(*current, key, value, line_no);
  }
  if (out.empty()) throw ConfigError("config defines no scenarios");
  for (const auto& s : out) {
    try {
      s.validate();
    } catch (const ConfigError& e) {
      if (e.line() > 0) throw;
      throw ConfigError("scenario '" + s.name + "': " + e.what(), s.line);
    }
  }
  return out;
}

inline std::vector<Scenario> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

/// Resolved scenario as a config section (round-trips through parse_config).
inline std::string to_config(const Scenario& s) {
  using text::format_real;
  std::string m = "concurrence";
  if (s.measures.eof) m += ", eof";
  for (CutKind c : s.measures.negativity) m += ", negativity(" + to_string(c) + ")";
  std::ostringstream o;
  o << "[scenario " << s.name << "]\n";
  o << "picture = " << to_string(s.picture) << "\n";
  o << "phi = " << format_real(s.model.phi) << "\n";
  o << "g = " << format_real(s.model.g) << "\n";
  o << "omega0 = " << format_real(s.model.omega0) << "\n";
  o << "include_free = " << (s.model.include_free ? "true" : "false") << "\n";
  o << "n_max = " << s.model.n_max << "\n";
  o << "eps_trunc = " << format_real(s.model.eps_trunc) << "\n";
  o << "auto_n_max = " << (s.auto_n_max ? "true" : "false") << "\n";
  o << "atoms = " << to_string(s.atoms) << "\n";
  o << "field = " << s.field.to_string() << "\n";
  o << "t_max = " << format_real(s.t_max) << "\n";
  o << "samples = " << s.samples << "\n";
  o << "measures = " << m << "\n";
  o << "eps_zero = " << format_real(s.classify.eps_zero) << "\n";
  o << "dead_fraction = " << format_real(s.classify.dead_fraction) << "\n";
  o << "refine_fraction = " << format_real(s.classify.refine_fraction) << "\n";
  o << "check_horizon = " << (s.classify.check_horizon ? "true" : "false") << "\n";
  if (!s.phi_grid.empty()) {
    o << "phi_grid = ";
    for (std::size_t k = 0; k < s.phi_grid.size(); ++k) o << (k ? ", " : "") << format_real(s.phi_grid[k]);
    o << "\n";
  }
  if (!s.scan_parameter.empty()) {
    o << "scan_parameter = " << s.scan_parameter << "\n";
    o << "scan_lo = " << format_real(s.scan_lo) << "\n";
    o << "scan_hi = " << format_real(s.scan_hi) << "\n";
    o << "scan_tol = " << format_real(s.scan_tol) << "\n";
  }
  if (!s.output.empty()) o << "output = " << s.output << "\n";
  return o.str();
}

// ---------------------------------------------------------------------------
// Evaluation.

/// Hamiltonian, initial state and trajectory for one resolved scenario.
class ScenarioModel {
 public:
  explicit ScenarioModel(Scenario s) : scenario_(std::move(s)) {
    scenario_.validate();
    const int modes = picture_modes(scenario_.picture);
    if (scenario_.auto_n_max) {
      scenario_.model.n_max = required_n_max(scenario_.field, scenario_.model.eps_trunc, scenario_.model.n_max);
    }
    ModelParams p = scenario_.model;
    p.phi = scenario_.effective_phi();
    const FieldState field = build_field(scenario_.field, modes, p.n_max, p.eps_trunc);
    discarded_ = field.discarded;
    const Ensemble initial = assemble_initial(atomic_state(scenario_.atoms), field);
    const HermitianOperator h = [&] {
      switch (scenario_.picture) {
        case Picture::TC: return build_tc_hamiltonian(p);
        case Picture::DJC: return build_djc_hamiltonian(p);
        default: return build_hamiltonian(p);
      }
    }();
    trajectory_ = std::make_shared<const Trajectory>(h, initial);
  }

  const Scenario& scenario() const { return scenario_; }
  const Trajectory& trajectory() const { return *trajectory_; }
  double discarded() const { return discarded_; }

  double concurrence_at(double t) const { return twomode::concurrence(trajectory_->atomic_state(t)); }

  double negativity_at(double t, CutKind cut) const {
    if (cut == CutKind::atom_atom) return negativity(trajectory_->atomic_state(t), {1});
    return negativity_across(trajectory_->state(t), cut);
  }

 private:
  Scenario scenario_;
  std::shared_ptr<const Trajectory> trajectory_;
  double discarded_ = 0.0;
};

struct SeriesRow {
  double t = 0.0;
  double concurrence = 0.0;
  double eof = 0.0;
  std::vector<double> negativity;
};

struct ScenarioResult {
  Scenario resolved;
  std::vector<SeriesRow> rows;
  DynamicsVerdict verdict;
  double discarded = 0.0;
  std::string horizon_warning;
};

inline ScenarioResult run_scenario(const Scenario& s) {
  const ScenarioModel model(s);
  const Scenario& r = model.scenario();
  ScenarioResult out;
  out.resolved = r;
  out.discarded = model.discarded();
  std::vector<EntanglementSample> series(r.samples);
  out.rows.resize(r.samples);
  for (std::size_t k = 0; k < r.samples; ++k) {
    const double t = r.t_max * static_cast<double>(k) / static_cast<double>(r.samples - 1);
    SeriesRow& row = out.rows[k];
    row.t = t;
    row.concurrence = model.concurrence_at(t);
    if (r.measures.eof) row.eof = entanglement_of_formation(row.concurrence);
    for (CutKind c : r.measures.negativity) row.negativity.push_back(model.negativity_at(t, c));
    series[k] = {t, row.concurrence, std::nullopt, CutKind::atom_atom};
  }
  ClassifyOptions opt = r.classify;
  opt.min_samples = std::min(opt.min_samples, r.samples);
  const SeriesFn fn = [&model](double t) { return model.concurrence_at(t); };
  try {
    out.verdict = classify(series, r.t_max, fn, opt);
  } catch (const InsufficientHorizon& e) {
    out.horizon_warning = e.what();
    opt.check_horizon = false;
    out.verdict = classify(series, r.t_max, fn, opt);
  }
  return out;
}

inline std::string csv_header_block(const Scenario& s) {
  std::ostringstream o;
  o << "# # twomode " << TWOMODE_VERSION << "\n";
  std::istringstream cfg(to_config(s));
  for (std::string line; std::getline(cfg, line);) o << "# " << line << "\n";
  return o.str();
}

inline std::string render_csv(const ScenarioResult& r) {
  std::ostringstream o;
  o << csv_header_block(r.resolved);
  o << "t,concurrence";
  if (r.resolved.measures.eof) o << ",eof";
  for (CutKind c : r.resolved.measures.negativity) o << ",negativity_" << to_string(c);
  o << "\n";
  for (const auto& row : r.rows) {
    o << text::format_real(row.t) << "," << text::format_real(row.concurrence);
    if (r.resolved.measures.eof) o << "," << text::format_real(row.eof);
    for (double n : row.negativity) o << "," << text::format_real(n);
    o << "\n";
  }
  return o.str();
}

inline std::string render_verdict(const ScenarioResult& r) {
  std::ostringstream o;
  const auto& v = r.verdict;
  o << "scenario = " << r.resolved.name << "\n";
  o << "label = " << to_string(v.label) << "\n";
  o << "generated = " << (v.generated() ? "yes" : "no") << "\n";
  o << "max_concurrence = " << text::format_real(v.max_concurrence) << "\n";
  o << "first_generation_time = " << (v.first_generation_time ? text::format_real(*v.first_generation_time) : "none") << "\n";
  o << "period = " << (v.period ? text::format_real(*v.period) : "none") << "\n";
  o << "n_max = " << r.resolved.model.n_max << "\n";
  o << "discarded_population = " << text::format_real(r.discarded) << "\n";
  o << "zero_regions = " << v.dead_intervals.size() << "\n";
  for (const auto& i : v.dead_intervals) {
    o << "zero_region = " << text::format_real(i.start) << ", " << text::format_real(i.end) << "\n";
  }
  if (!r.horizon_warning.empty()) o << "warning = " << r.horizon_warning << "\n";
  return o.str();
}

/// Runs `work(k)` for k in [0, n) on up to `jobs` threads. Results are stored
/// by index by the caller, so ordering does not depend on scheduling.
template <class F>
void parallel_for(std::size_t n, int jobs, F&& work) {
  const std::size_t threads = std::max<std::size_t>(1, std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs))));
  if (threads == 1) {
    for (std::size_t k = 0; k < n; ++k) work(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t k = next++; k < n; k = next++) work(k);
      } catch (...) {
        errors[w] = std::current_exception();
        next = n;
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline std::vector<ScenarioResult> run_phi_sweep(const Scenario& s, const std::vector<double>& phis, int jobs = 1) {
  if (s.picture != Picture::general) throw ConfigError("sweep: scenario '" + s.name + "' must use the general picture", s.line);
  if (phis.empty()) throw ConfigError("sweep: empty phi grid", s.line);
  std::vector<ScenarioResult> out(phis.size());
  parallel_for(phis.size(), jobs, [&](std::size_t k) {
    Scenario one = s;
    one.model.phi = phis[k];
    one.phi_grid.clear();
    out[k] = run_scenario(one);
  });
  return out;
}

inline std::string render_sweep_csv(const Scenario& s, const std::vector<ScenarioResult>& results) {
  std::ostringstream o;
  o << csv_header_block(s);
  o << "phi,t,concurrence";
  if (s.measures.eof) o << ",eof";
  for (CutKind c : s.measures.negativity) o << ",negativity_" << to_string(c);
  o << "\n";
  for (const auto& r : results)
    for (const auto& row : r.rows) {
      o << text::format_real(r.resolved.model.phi) << "," << text::format_real(row.t) << "," << text::format_real(row.concurrence);
      if (s.measures.eof) o << "," << text::format_real(row.eof);
      for (double n : row.negativity) o << "," << text::format_real(n);
      o << "\n";
    }
  return o.str();
}

inline std::string render_sweep_verdicts(const std::vector<ScenarioResult>& results) {
  std::ostringstream o;
  o << "phi,label,max_concurrence,zero_regions,first_generation_time\n";
  for (const auto& r : results) {
    const auto& v = r.verdict;
    o << text::format_real(r.resolved.model.phi) << "," << to_string(v.label) << "," << text::format_real(v.max_concurrence)
      << "," << v.dead_intervals.size() << ","
      << (v.first_generation_time ? text::format_real(*v.first_generation_time) : "") << "\n";
  }
  return o.str();
}

/// Copy of `s` with the named field or model parameter set to `value`.
inline Scenario with_parameter(Scenario s, const std::string& parameter, double value) {
  if (parameter == "nbar") {
    if (s.field.kind != FieldKind::thermal) throw ConfigError("scan: nbar needs a thermal field", s.line);
    s.field.nbar = value;
  } else if (parameter == "xi") {
    if (s.field.kind != FieldKind::tmss && s.field.kind != FieldKind::squeezed_pair && s.field.kind != FieldKind::squeezed) {
      throw ConfigError("scan: xi needs a squeezed field", s.line);
    }
    s.field.xi = value;
  } else if (parameter == "alpha") {
    if (s.field.kind != FieldKind::coherent) throw ConfigError("scan: alpha needs a coherent field", s.line);
    s.field.alpha = value;
  } else if (parameter == "phi") {
    s.model.phi = value;
  } else {
    throw ConfigError("scan: unknown parameter '" + parameter + "' (expected nbar, xi, alpha, phi)", s.line);
  }
  return s;
}

inline ScanResult run_scan(const Scenario& s) {
  if (s.scan_parameter.empty()) throw ConfigError("scan: scenario '" + s.name + "' has no scan_parameter", s.line);
  with_parameter(s, s.scan_parameter, s.scan_lo);  // validates the axis up front
  return scan_critical(
      s.scan_parameter, s.scan_lo, s.scan_hi,
      [&](double v) { return run_scenario(with_parameter(s, s.scan_parameter, v)).verdict.label; }, s.scan_tol);
}

inline std::string render_scan(const Scenario& s, const ScanResult& r) {
  std::ostringstream o;
  o << csv_header_block(s);
  o << "# critical = " << text::format_real(r.critical) << "\n";
  o << "# uncertainty = " << text::format_real(r.uncertainty) << "\n";
  o << "# below = " << to_string(r.low_label) << "\n";
  o << "# above = " << to_string(r.high_label) << "\n";
  o << r.parameter << ",label\n";
  std::vector<ScanProbe> probes = r.probes;
  std::stable_sort(probes.begin(), probes.end(), [](const ScanProbe& a, const ScanProbe& b) { return a.value < b.value; });
  for (const auto& p : probes) o << text::format_real(p.value) << "," << to_string(p.label) << "\n";
  return o.str();
}

}  // namespace twomode

#endif  // TWOMODE_SCENARIO_HPP
