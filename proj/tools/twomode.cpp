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

// twomode: command-line front end.
//
//   twomode run    --config FILE [--out-dir DIR] [--phi X] [--t-max T] [--samples N] [--n-max N]
//   twomode sweep  --config FILE [--out-dir DIR] [--jobs J] ...
//   twomode scan   --config FILE [--out-dir DIR] ...
//   twomode table1 [--config FILE] [--out-dir DIR] [--strict] [--no-explore] [--jobs J]
//
// Exit codes: 0 ok, 1 config error, 2 physics error, 3 table1 --strict diff.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "twomode/table_one.hpp"

namespace fs = std::filesystem;
using namespace twomode;

namespace {

struct Overrides {
  std::optional<double> phi;
  std::optional<double> t_max;
  std::optional<std::size_t> samples;
  std::optional<int> n_max;
  std::vector<std::string> only;
};

void write_file(const fs::path& path, const std::string& body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << body;
}

std::vector<Scenario> load(const std::string& config, const Overrides& ov) {
  std::vector<Scenario> all = load_config(config);
  std::vector<Scenario> out;
  for (Scenario s : all) {
    if (!ov.only.empty() && std::find(ov.only.begin(), ov.only.end(), s.name) == ov.only.end()) continue;
    if (ov.phi) s.model.phi = *ov.phi;
    if (ov.t_max) s.t_max = *ov.t_max;
    if (ov.samples) s.samples = *ov.samples;
    if (ov.n_max) s.model.n_max = *ov.n_max;
    s.validate();
    out.push_back(std::move(s));
  }
  if (out.empty()) throw ConfigError("no scenario selected");
  return out;
}

std::string stem(const Scenario& s) {
  if (s.output.empty()) return s.name;
  fs::path p(s.output);
  return p.replace_extension().string();
}

// Physics errors carry the scenario name.
template <class F>
void for_scenario(const Scenario& s, F&& f) {
  try {
    f();
  } catch (const PhysicsError& e) {
    throw PhysicsError("scenario '" + s.name + "': " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twomode: two atoms, two modes, entanglement dynamics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(TWOMODE_VERSION));

  std::string config;
  std::string out_dir = ".";
  Overrides ov;
  int jobs = 1;
  bool strict = false;
  bool no_explore = false;
  long seed = 0;

  auto common = [&](CLI::App* sub, bool need_config) {
    auto* c = sub->add_option("--config", config, "Scenario file");
    if (need_config) c->required()->check(CLI::ExistingFile);
    sub->add_option("--out-dir", out_dir, "Output directory");
    sub->add_option("--phi", ov.phi, "Override phi (general picture)");
    sub->add_option("--t-max", ov.t_max, "Override the horizon in 1/g");
    sub->add_option("--samples", ov.samples, "Override the number of time samples");
    sub->add_option("--n-max", ov.n_max, "Override the Fock cutoff");
    sub->add_option("--seed", seed, "Reserved; the runs are deterministic");
    sub->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* run = app.add_subcommand("run", "Time series and verdict per scenario");
  common(run, true);
  run->add_option("--scenario", ov.only, "Run only the named scenarios");
  auto* sweep = app.add_subcommand("sweep", "phi sweep of each scenario over its phi_grid");
  common(sweep, true);
  sweep->add_option("--scenario", ov.only, "Sweep only the named scenarios");
  auto* scan = app.add_subcommand("scan", "Critical parameter scan per scenario");
  common(scan, true);
  scan->add_option("--scenario", ov.only, "Scan only the named scenarios");
  auto* table = app.add_subcommand("table1", "Verdict grid for the SC and AC couplings");
  common(table, false);
  table->add_flag("--strict", strict, "Exit 3 when the grid differs from the expectations");
  table->add_flag("--no-explore", no_explore, "Skip the alternative parameter search");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  (void)seed;

  try {
    const fs::path dir(out_dir);
    if (*run) {
      for (const Scenario& s : load(config, ov)) {
        for_scenario(s, [&] {
          const ScenarioResult r = run_scenario(s);
          write_file(dir / (stem(s) + ".csv"), render_csv(r));
          write_file(dir / (stem(s) + ".verdict.txt"), render_verdict(r));
          std::cout << s.name << ": " << to_string(r.verdict.label) << "\n";
        });
      }
    } else if (*sweep) {
      for (const Scenario& s : load(config, ov)) {
        for_scenario(s, [&] {
          std::vector<double> grid = s.phi_grid;
          if (grid.empty()) throw ConfigError("sweep: scenario '" + s.name + "' has no phi_grid", s.line);
          const auto results = run_phi_sweep(s, grid, jobs);
          write_file(dir / (stem(s) + ".sweep.csv"), render_sweep_csv(s, results));
          write_file(dir / (stem(s) + ".verdicts.csv"), render_sweep_verdicts(results));
          for (const auto& r : results) {
            std::cout << s.name << " phi=" << text::format_real(r.resolved.model.phi) << ": "
                      << to_string(r.verdict.label) << "\n";
          }
        });
      }
    } else if (*scan) {
      for (const Scenario& s : load(config, ov)) {
        for_scenario(s, [&] {
          const ScanResult r = run_scan(s);
          write_file(dir / (stem(s) + ".scan.csv"), render_scan(s, r));
          std::cout << s.name << ": " << r.parameter << " = " << text::format_real(r.critical) << " +- "
                    << text::format_real(r.uncertainty) << "\n";
        });
      }
    } else if (*table) {
      TableOneParams p;
      if (!config.empty()) {
        std::ifstream in(config);
        if (!in) throw ConfigError("cannot read config file '" + config + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        p = parse_table_one_config(ss.str());
      }
      if (ov.t_max) p.horizon = *ov.t_max;
      if (ov.samples) p.samples = *ov.samples;
      if (ov.n_max) p.n_max = *ov.n_max;
      p.explore = !no_explore && p.explore;
      p.jobs = jobs;
      const TableOneReport r = table_one_report(p);
      const std::string textual = render_table_one_text(r);
      write_file(dir / "table1.txt", textual);
      write_file(dir / "table1.csv", render_table_one_csv(r));
      std::cout << textual;
      if (strict && r.mismatches() > 0) return 3;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const PhysicsError& e) {
    std::cerr << "physics error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
