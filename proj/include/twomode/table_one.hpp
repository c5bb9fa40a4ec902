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

#ifndef TWOMODE_TABLE_ONE_HPP
#define TWOMODE_TABLE_ONE_HPP

#include <array>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "twomode/scenario.hpp"

namespace twomode {

/// Symmetric (phi = 0) and antisymmetric (phi = pi) halves of the grid.
enum class Coupling { SC, AC };

inline std::string to_string(Coupling c) { return c == Coupling::SC ? "SC" : "AC"; }

inline constexpr std::array<AtomicLabel, 5> kTableColumns = {AtomicLabel::ee, AtomicLabel::eg, AtomicLabel::gg,
                                                             AtomicLabel::Phi, AtomicLabel::Psi};

inline char column_letter(std::size_t col) { return static_cast<char>('A' + col); }

/// Expected content of one cell: "No", "Yes, DI", "Yes*, DI/SD", "AL/SD", ...
/// A '*' marks cells where n = m must give no generation.
struct CellExpectation {
  std::string text;
  std::optional<bool> generation;  // set for the initially separable columns
  std::set<Verdict> labels;
  bool footnote = false;

  bool ambiguous() const { return labels.size() > 1; }

  static CellExpectation parse(std::string_view s) {
    CellExpectation e;
    e.text = std::string(text::trim(s));
    std::string rest = e.text;
    auto take = [&](std::string_view head) {
      if (rest.rfind(head, 0) != 0) return false;
      rest = std::string(text::trim(std::string_view(rest).substr(head.size())));
      return true;
    };
    if (take("No")) {
      e.generation = false;
      e.labels = {Verdict::NONE};
      return e;
    }
    if (take("Yes")) {
      e.generation = true;
      if (take("*")) e.footnote = true;
      take(",");
    }
    for (const auto& part : text::split(rest, '/')) {
      const std::string p(text::trim(part));
      if (p == "SD") e.labels.insert(Verdict::SD);
      else if (p == "DI") e.labels.insert(Verdict::DI);
      else if (p == "AL") e.labels.insert(Verdict::AL);
      else throw ConfigError("table cell '" + e.text + "': unknown label '" + p + "'");
    }
    return e;
  }
};

/// Encoded expectations, indexed [coupling][row - 1][column].
inline const std::array<std::array<std::array<const char*, 5>, 6>, 2>& table_one_expected() {
  static const std::array<std::array<std::array<const char*, 5>, 6>, 2> t = {{
      {{
          {"No", "Yes, DI", "Yes*, DI/SD", "SD", "SD"},
          {"No", "Yes, DI", "Yes, SD", "SD", "SD"},
          {"No", "Yes, DI", "Yes, SD", "AL/SD", "SD"},
          {"Yes, AL/SD", "Yes, SD", "Yes, AL/SD", "AL/SD", "AL/SD"},
          {"No", "Yes, DI", "Yes, SD", "AL/SD", "SD"},
          {"Yes, AL/SD", "Yes, SD", "Yes, AL/SD", "AL", "SD"},
      }},
      {{
          {"Yes*, SD", "Yes*, SD", "Yes*, SD/DI", "SD", "SD/AL"},
          {"No", "No", "No", "SD", "SD"},
          {"No", "No", "No", "SD", "SD"},
          {"No", "No", "No", "SD", "SD"},
          {"Yes, SD", "Yes, SD", "Yes, SD", "SD", "SD"},
          {"No", "No", "No", "SD", "SD"},
      }},
  }};
  return t;
}

/// Parameters of the grid. The field rows are
///   1 fock(n,m)   2 eta(n,m)   3 thermal(nbar)
///   4 coherent: SC uses ((a+b)/sqrt2, (a-b)/sqrt2), AC uses (a, b)
///   5 squeezed_pair(xi)   6 tmss(xi)
/// all in the original two-mode picture.
struct TableOneParams {
  int n = 2;
  int m = 1;
  double alpha = 1.0;
  double beta = 0.5;
  double xi = 0.5;
  double nbar = 0.5;
  double horizon = 25.0;
  std::size_t samples = 501;
  /// Floor for the non-Fock rows; raised until the field fits within eps_trunc.
  int n_max = 12;
  double eps_trunc = 1e-8;
  double g = 1.0;
  ClassifyOptions classify;
  /// Search alternative parameters for '/' cells and for mismatches.
  bool explore = true;
  int jobs = 1;
};

inline std::string row_parameters(int row, const TableOneParams& p) {
  using text::format_real;
  switch (row) {
    case 1:
    case 2: return "n=" + std::to_string(p.n) + " m=" + std::to_string(p.m);
    case 3: return "nbar=" + format_real(p.nbar);
    case 4: return "alpha=" + format_real(p.alpha) + " beta=" + format_real(p.beta);
    default: return "xi=" + format_real(p.xi);
  }
}

inline FieldSpec table_field(Coupling c, int row, const TableOneParams& p) {
  switch (row) {
    case 1: return FieldSpec::fock(p.n, p.m);
    case 2: return FieldSpec::eta(p.n, p.m);
    case 3: return FieldSpec::thermal(p.nbar);
    case 4: {
      if (c == Coupling::AC) return FieldSpec::coherent(p.alpha, p.beta);
      const double r = 1.0 / std::sqrt(2.0);
      return FieldSpec::coherent(r * (p.alpha + p.beta), r * (p.alpha - p.beta));
    }
    case 5: return FieldSpec::squeezed_pair(p.xi);
    case 6: return FieldSpec::tmss(p.xi);
    default: throw ConfigError("table row must be 1..6");
  }
}

inline Scenario table_scenario(Coupling c, int row, std::size_t col, const TableOneParams& p) {
  Scenario s;
  s.name = to_string(c) + std::to_string(row) + column_letter(col);
  s.picture = c == Coupling::SC ? Picture::SC : Picture::AC;
  s.atoms = kTableColumns.at(col);
  s.field = table_field(c, row, p);
  s.model.g = p.g;
  s.model.eps_trunc = p.eps_trunc;
  if (row <= 2) {
    s.model.n_max = p.n + p.m + 2;
  } else {
    s.model.n_max = p.n_max;
    s.auto_n_max = true;
  }
  s.t_max = p.horizon;
  s.samples = p.samples;
  s.classify = p.classify;
  return s;
}

/// Parameter sets tried, after the defaults, when exploring a row.
inline std::vector<TableOneParams> row_alternatives(int row, const TableOneParams& base) {
  std::vector<TableOneParams> out;
  auto with = [&](auto&& set) {
    TableOneParams q = base;
    set(q);
    out.push_back(q);
  };
  switch (row) {
    case 1:
    case 2:
      for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 0}, {3, 1}, {2, 0}, {3, 2}}) with([&](auto& q) {
          q.n = n;
          q.m = m;
        });
      break;
    case 3:
      for (double nb : {0.1, 0.2, 0.3}) with([&](auto& q) { q.nbar = nb; });
      break;
    case 4:
      for (auto [a, b] : std::vector<std::pair<double, double>>{{0.5, 0.25}, {2.0, 1.0}, {1.0, 0.0}}) with([&](auto& q) {
          q.alpha = a;
          q.beta = b;
        });
      break;
    default:
      // The sign of xi flips the phase of the pair correlations.
      for (double x : {-0.5, 0.2, 0.8}) with([&](auto& q) { q.xi = x; });
      break;
  }
  return out;
}

struct CellRun {
  std::string parameters;
  Verdict label = Verdict::NONE;
  int n_max = 0;
  double max_concurrence = 0.0;
  std::string warning;
};

enum class CellStatus { match, mismatch, branch_found, branch_missing };

inline std::string to_string(CellStatus s) {
  switch (s) {
    case CellStatus::match: return "match";
    case CellStatus::mismatch: return "MISMATCH";
    case CellStatus::branch_found: return "branch";
    case CellStatus::branch_missing: return "NO-BRANCH";
  }
  return "?";
}

struct TableCell {
  Coupling coupling = Coupling::SC;
  int row = 1;
  std::size_t column = 0;
  CellExpectation expected;
  CellRun observed;  // default parameters
  std::vector<CellRun> alternatives;
  CellStatus status = CellStatus::match;
  /// For each expected label, the first parameter set that produced it.
  std::vector<std::pair<Verdict, std::string>> branches;

  std::string id() const { return to_string(coupling) + std::to_string(row) + column_letter(column); }
};

struct FootnoteCheck {
  std::string cell;
  std::string parameters;
  Verdict label = Verdict::NONE;
  bool ok = false;
};

struct TableOneReport {
  TableOneParams params;
  std::vector<TableCell> cells;
  std::vector<FootnoteCheck> footnotes;

  std::size_t mismatches() const {
    std::size_t k = 0;
    for (const auto& c : cells) k += c.status == CellStatus::mismatch || c.status == CellStatus::branch_missing;
    for (const auto& f : footnotes) k += !f.ok;
    return k;
  }
};

inline CellRun run_cell(Coupling c, int row, std::size_t col, const TableOneParams& p) {
  const ScenarioResult r = run_scenario(table_scenario(c, row, col, p));
  return {row_parameters(row, p), r.verdict.label, r.resolved.model.n_max, r.verdict.max_concurrence, r.horizon_warning};
}

namespace detail {

inline bool expectation_met(const CellExpectation& e, Verdict v) {
  if (e.generation && *e.generation != (v != Verdict::NONE)) return false;
  return e.labels.count(v) > 0;
}

inline void settle_cell(TableCell& cell, const TableOneParams& p) {
  const CellExpectation& e = cell.expected;
  auto note = [&](const CellRun& run) {
    for (const auto& b : cell.branches)
      if (b.first == run.label) return;
    if (expectation_met(e, run.label)) cell.branches.emplace_back(run.label, run.parameters);
  };
  note(cell.observed);
  const bool met = expectation_met(e, cell.observed.label);
  const bool need_more = !met || cell.branches.size() < e.labels.size();
  if (p.explore && need_more) {
    for (const TableOneParams& q : row_alternatives(cell.row, p)) {
      if (cell.row <= 2 && e.footnote && q.n == q.m) continue;
      cell.alternatives.push_back(run_cell(cell.coupling, cell.row, cell.column, q));
      note(cell.alternatives.back());
      if (cell.branches.size() == e.labels.size()) break;
    }
  }
  if (e.ambiguous()) cell.status = met ? CellStatus::branch_found : CellStatus::branch_missing;
  else cell.status = met ? CellStatus::match : CellStatus::mismatch;
}

}  // namespace detail

/// Full 2 x 6 x 5 grid at the given parameters, diffed against the encoded
/// expectations, plus the n = m checks for the starred cells.
inline TableOneReport table_one_report(const TableOneParams& p = {}) {
  TableOneReport report;
  report.params = p;
  const auto& expected = table_one_expected();
  for (Coupling c : {Coupling::SC, Coupling::AC})
    for (int row = 1; row <= 6; ++row)
      for (std::size_t col = 0; col < 5; ++col) {
        TableCell cell;
        cell.coupling = c;
        cell.row = row;
        cell.column = col;
        cell.expected = CellExpectation::parse(expected[c == Coupling::SC ? 0 : 1][row - 1][col]);
        report.cells.push_back(cell);
      }
  parallel_for(report.cells.size(), p.jobs, [&](std::size_t k) {
    TableCell& cell = report.cells[k];
    cell.observed = run_cell(cell.coupling, cell.row, cell.column, p);
    detail::settle_cell(cell, p);
  });

  std::vector<std::size_t> starred;
  for (std::size_t k = 0; k < report.cells.size(); ++k)
    if (report.cells[k].expected.footnote) starred.push_back(k);
  report.footnotes.resize(starred.size() * 2);
  parallel_for(report.footnotes.size(), p.jobs, [&](std::size_t j) {
    const TableCell& cell = report.cells[starred[j / 2]];
    TableOneParams q = p;
    q.n = q.m = j % 2 == 0 ? 1 : 2;
    const CellRun run = run_cell(cell.coupling, cell.row, cell.column, q);
    report.footnotes[j] = {cell.id(), run.parameters, run.label, run.label == Verdict::NONE};
  });
  return report;
}

/// Reads a "[table1]" section (same grammar as scenario files) with keys
/// n, m, alpha, beta, xi, nbar, t_max, samples, n_max, eps_trunc, eps_zero,
/// dead_fraction, explore.
inline TableOneParams parse_table_one_config(std::string_view source, TableOneParams p = {}) {
  bool inside = false;
  int line_no = 0;
  std::istringstream in{std::string(source)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const std::string_view line = text::trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      inside = text::lower(text::trim(line.substr(1, line.size() - 2))) == "table1";
      continue;
    }
    if (!inside) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected key = value", line_no);
    const std::string key = text::lower(text::trim(line.substr(0, eq)));
    const std::string value(text::trim(line.substr(eq + 1)));
    auto real = [&] { return detail::config_real(value, line_no, key); };
    auto integer = [&] { return static_cast<int>(detail::config_int(value, line_no, key)); };
    if (key == "n") p.n = integer();
    else if (key == "m") p.m = integer();
    else if (key == "alpha") p.alpha = real();
    else if (key == "beta") p.beta = real();
    else if (key == "xi") p.xi = real();
    else if (key == "nbar") p.nbar = real();
    else if (key == "t_max") p.horizon = real();
    else if (key == "samples") p.samples = static_cast<std::size_t>(std::max(2, integer()));
    else if (key == "n_max") p.n_max = integer();
    else if (key == "eps_trunc") p.eps_trunc = real();
    else if (key == "eps_zero") p.classify.eps_zero = real();
    else if (key == "dead_fraction") p.classify.dead_fraction = real();
    else if (key == "explore") p.explore = detail::config_bool(value, line_no, key);
    else throw ConfigError("unknown table1 key '" + key + "'", line_no);
  }
  if (p.n < 0 || p.m < 0) throw ConfigError("table1: occupations must be non-negative");
  if (!(p.horizon > 0.0)) throw ConfigError("table1: t_max must be positive");
  return p;
}

inline std::string verdict_phrase(Verdict v) {
  return v == Verdict::NONE ? "No" : to_string(v);
}

/// Aligned text grid: expected | observed per cell, followed by the
/// exploration log and the footnote checks.
inline std::string render_table_one_text(const TableOneReport& r) {
  std::ostringstream o;
  const auto& p = r.params;
  o << "twomode " << TWOMODE_VERSION << " entanglement dynamics grid\n";
  o << "defaults: n=" << p.n << " m=" << p.m << " alpha=" << text::format_real(p.alpha)
    << " beta=" << text::format_real(p.beta) << " xi=" << text::format_real(p.xi) << " nbar=" << text::format_real(p.nbar)
    << " horizon=" << text::format_real(p.horizon) << " samples=" << p.samples << " n_max>=" << p.n_max
    << " eps_zero=" << text::format_real(p.classify.eps_zero) << "\n\n";
  constexpr int kW = 22;
  for (Coupling c : {Coupling::SC, Coupling::AC}) {
    o << std::left << std::setw(6) << to_string(c);
    for (std::size_t col = 0; col < 5; ++col) {
      o << std::setw(kW) << (std::string(1, column_letter(col)) + ". " + to_string(kTableColumns[col]));
    }
    o << "\n";
    for (int row = 1; row <= 6; ++row) {
      o << std::setw(6) << row;
      for (std::size_t col = 0; col < 5; ++col) {
        for (const auto& cell : r.cells) {
          if (cell.coupling != c || cell.row != row || cell.column != col) continue;
          std::string s = cell.expected.text + " > " + verdict_phrase(cell.observed.label);
          if (cell.status == CellStatus::mismatch || cell.status == CellStatus::branch_missing) s += " !";
          o << std::setw(kW) << s;
        }
      }
      o << "\n";
    }
    o << "\n";
  }
  o << "cells:\n";
  for (const auto& cell : r.cells) {
    o << "  " << cell.id() << " " << std::setw(24) << table_field(cell.coupling, cell.row, p).to_string() << " "
      << std::setw(4) << to_string(kTableColumns[cell.column]) << " expected " << std::setw(12) << cell.expected.text
      << " observed " << std::setw(4) << verdict_phrase(cell.observed.label) << " n_max=" << cell.observed.n_max
      << " " << to_string(cell.status) << "\n";
    for (const auto& b : cell.branches) o << "      " << to_string(b.first) << " at " << b.second << "\n";
    for (const auto& a : cell.alternatives) o << "      tried " << a.parameters << " -> " << verdict_phrase(a.label) << "\n";
    if (!cell.observed.warning.empty()) o << "      warning: " << cell.observed.warning << "\n";
  }
  o << "footnote (n = m gives no generation):\n";
  for (const auto& f : r.footnotes) {
    o << "  " << f.cell << " " << f.parameters << " -> " << verdict_phrase(f.label) << (f.ok ? " ok" : " FAILED") << "\n";
  }
  o << "mismatches: " << r.mismatches() << "\n";
  return o.str();
}

inline std::string render_table_one_csv(const TableOneReport& r) {
  std::ostringstream o;
  o << "# twomode " << TWOMODE_VERSION << "\n";
  o << "coupling,row,column,atoms,field,expected,observed,generation,status,n_max,max_concurrence,branches\n";
  for (const auto& cell : r.cells) {
    std::string branches;
    for (const auto& b : cell.branches) branches += (branches.empty() ? "" : ";") + to_string(b.first) + "@" + b.second;
    o << to_string(cell.coupling) << "," << cell.row << "," << column_letter(cell.column) << ","
      << to_string(kTableColumns[cell.column]) << ",\"" << table_field(cell.coupling, cell.row, r.params).to_string()
      << "\",\"" << cell.expected.text << "\"," << verdict_phrase(cell.observed.label) << ","
      << (cell.observed.label != Verdict::NONE ? "yes" : "no") << "," << to_string(cell.status) << ","
      << cell.observed.n_max << "," << text::format_real(cell.observed.max_concurrence) << ",\"" << branches << "\"\n";
  }
  return o.str();
}

}  // namespace twomode

#endif  // TWOMODE_TABLE_ONE_HPP
