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

// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "twomode/table_one.hpp"

using namespace twomode;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Ensemble basis(const CompositeSpace& s, std::initializer_list<Index> d) { return Ensemble(StateVector::basis(s, d)); }

ModelParams model(double phi, int n_max) {
  ModelParams p;
  p.phi = phi;
  p.n_max = n_max;
  return p;
}

// 1. Closed forms for |eg00> and |gg10>.
Outcome closed_forms() {
  double worst = 0.0;
  auto check = [&](double phi, const std::function<double(double)>& closed, AtomicLabel atoms, int n1) {
    const HermitianOperator h = build_hamiltonian(model(phi, 1));
    const Trajectory traj(h, basis(h.space(), {atoms == AtomicLabel::eg ? kExcited : kGround, kGround, n1, 0}));
    for (int k = 0; k < 500; ++k) {
      const double t = 25.0 * k / 499.0;
      worst = std::max(worst, std::abs(concurrence(traj.atomic_state(t)) - closed(t)));
    }
  };
  for (double phi : {0.0, 0.7, 1.9, 2.9}) {
    check(phi, [&](double t) { return concurrence_eg00(phi, 1.0, t); }, AtomicLabel::eg, 0);
    check(phi, [&](double t) { return concurrence_gg10(phi, 1.0, t); }, AtomicLabel::gg, 1);
  }
  check(0.0, [](double t) { return 0.5 * std::pow(std::sin(2.0 * t), 2); }, AtomicLabel::gg, 1);
  check(pi, [](double t) { return std::pow(std::sin(std::sqrt(2.0) * t), 2); }, AtomicLabel::gg, 1);
  return {worst < 1e-8, "max |C_numeric - C_closed| = " + fmt("%.2e", worst)};
}

// 2. Death instants of |eg00> at phi = 1.
Outcome death_lattice() {
  Scenario s;
  s.model = model(1.0, 1);
  s.atoms = AtomicLabel::eg;
  s.field = FieldSpec::fock(0, 0);
  s.classify.refine_fraction = 1e-6;
  s.classify.check_horizon = false;
  const ScenarioResult r = run_scenario(s);
  double worst = 0.0;
  for (double td : eg00_death_times(1.0, 1.0, 5)) {
    double best = 1e9;
    for (const auto& i : r.verdict.dead_intervals) best = std::min(best, std::abs(0.5 * (i.start + i.end) - td));
    worst = std::max(worst, best);
  }
  return {worst < 1e-4, "label " + to_string(r.verdict.label) + ", worst distance to m pi/(K1-K2), m=1..5: " +
                            fmt("%.2e", worst)};
}

// 3. Mapped dynamics in the TC and DJC pictures.
Outcome mapping_equivalence() {
  const int n_max = 12;
  const std::vector<std::pair<AtomicLabel, FieldSpec>> inits = {
      {AtomicLabel::eg, FieldSpec::fock(2, 1)},         {AtomicLabel::Psi, FieldSpec::fock(0, 0)},
      {AtomicLabel::ee, FieldSpec::fock(1, 0)},         {AtomicLabel::gg, FieldSpec::coherent(0.6, 0.2)},
      {AtomicLabel::Phi, FieldSpec::thermal(0.1)},
  };
  double worst = 0.0;
  for (const auto& [atoms, field] : inits) {
    const Ensemble init = assemble_initial(atomic_state(atoms), build_field(field, 2, n_max));
    const Trajectory sc(build_hamiltonian(model(0.0, n_max)), init);
    const Trajectory tc(build_tc_hamiltonian(model(0.0, n_max)), Ensemble::from_density(map_sc_to_tc(init), 0.0));
    const Trajectory ac(build_hamiltonian(model(pi, n_max)), init);
    const Trajectory djc(build_djc_hamiltonian(model(pi, n_max)), map_ac_to_djc(init));
    for (int k = 0; k <= 30; ++k) {
      const double t = 0.5 * k;
      worst = std::max(worst, max_abs(sc.atomic_state(t).matrix() - tc.atomic_state(t).matrix()));
      worst = std::max(worst, max_abs(ac.atomic_state(t).matrix() - djc.atomic_state(t).matrix()));
    }
  }
  return {worst < 1e-8, "5 initial states, max entrywise difference " + fmt("%.2e", worst)};
}

// 4. Analytic block propagators.
Outcome analytic_blocks() {
  double worst = 0.0;
  const SpectralPropagator tc(build_tc_hamiltonian(model(0.0, 6)));
  const SpectralPropagator djc(build_djc_hamiltonian(model(pi, 6)));
  for (double t : {0.4, 2.1, 9.7}) {
    worst = std::max(worst, max_abs(tc_propagator_blocks(6, 1.0, t).matrix - tc.unitary(t)));
    worst = std::max(worst, max_abs(djc_propagator_blocks(6, 1.0, t).matrix - djc.unitary(t)));
  }
  return {worst < 1e-8, "N_max 6, max entrywise difference " + fmt("%.2e", worst)};
}

// 5. Table I.
Outcome table_one() {
  const TableOneReport r = table_one_report();
  std::string cells;
  for (const auto& c : r.cells) {
    if (c.status != CellStatus::mismatch && c.status != CellStatus::branch_missing) continue;
    cells += " " + c.id() + "(" + c.expected.text + " -> " + to_string(c.observed.label) + ")";
  }
  int fn_ok = 0;
  for (const auto& f : r.footnotes) fn_ok += f.ok;
  return {r.mismatches() == 0, std::to_string(r.mismatches()) + " differing cells;" + cells + "; footnote checks " +
                                   std::to_string(fn_ok) + "/" + std::to_string(r.footnotes.size())};
}

// 6. Thermal threshold.
Outcome thermal_threshold() {
  Scenario s;
  s.picture = Picture::SC;
  s.atoms = AtomicLabel::Phi;
  s.field = FieldSpec::thermal(0.4);
  s.model.n_max = 12;
  s.model.eps_trunc = 1e-5;
  s.t_max = 40.0;
  s.samples = 801;
  s.classify.check_horizon = false;
  s.scan_parameter = "nbar";
  s.scan_lo = 0.3;
  s.scan_hi = 0.6;
  s.scan_tol = 0.01;
  const ScanResult r = run_scan(s);
  const bool ok = r.bracket.start >= 0.38 && r.bracket.end <= 0.48;
  return {ok, "nbar_crit in [" + fmt("%.4f", r.bracket.start) + ", " + fmt("%.4f", r.bracket.end) + "] (" +
                  to_string(r.low_label) + " below, " + to_string(r.high_label) + " above)"};
}

// 7. Squeezing that best transfers entanglement to the atoms.
Outcome transfer_optimum() {
  std::vector<double> xs, peaks;
  for (int k = 1; k <= 20; ++k) {
    Scenario s;
    s.picture = Picture::DJC;
    s.atoms = AtomicLabel::ee;
    s.field = FieldSpec::tmss(0.05 * k);
    s.auto_n_max = true;
    s.model.n_max = 4;
    s.classify.check_horizon = false;
    const ScenarioModel m(s);
    double peak = 0.0;
    for (int j = 0; j <= 500; ++j) peak = std::max(peak, m.concurrence_at(25.0 * j / 500.0));
    xs.push_back(0.05 * k);
    peaks.push_back(peak);
  }
  const auto best = static_cast<std::size_t>(std::max_element(peaks.begin(), peaks.end()) - peaks.begin());
  const bool interior = best > 0 && best + 1 < peaks.size() && peaks[best] > peaks.front() + 1e-3 &&
                        peaks[best] > peaks.back() + 1e-3;
  return {interior, "peak C " + fmt("%.4f", peaks[best]) + " at xi = " + fmt("%.2f", xs[best]) + " (xi 0.05: " +
                        fmt("%.4f", peaks.front()) + ", xi 1: " + fmt("%.4f", peaks.back()) + ")"};
}

// 8. Small-squeezing negativity approximations.
Outcome low_squeeze() {
  const double xi = 0.05;
  Scenario s;
  s.picture = Picture::DJC;
  s.atoms = AtomicLabel::ee;
  s.field = FieldSpec::tmss(xi);
  s.model.n_max = 6;
  const ScenarioModel m(s);
  double aa = 0.0, ff = 0.0, ff2 = 0.0;
  for (int k = 0; k <= 600; ++k) {
    const double t = 6.0 * k / 600.0;
    const double field = m.negativity_at(t, CutKind::field_field);
    aa = std::max(aa, std::abs(m.negativity_at(t, CutKind::atom_atom) -
                               negativity_lowsqueeze_approx(xi, 1.0, t, LowSqueezeCut::atom_atom)));
    ff = std::max(ff, std::abs(field - negativity_lowsqueeze_approx(xi, 1.0, t, LowSqueezeCut::field_field)));
    // First order in xi the |gg> branch adds a |11>-|22> coherence, which the
    // partial transpose puts in the {|12>, |21>} block.
    const double s1 = std::sin(std::sqrt(2.0) * t), s2 = std::sin(2.0 * t), c2 = std::cos(2.0 * t);
    const double extra = std::abs(std::min(xi * xi * c2 * c2 * s2 * s2 - xi * s1 * s1 * s2 * s2, 0.0));
    ff2 = std::max(ff2, std::abs(field - negativity_lowsqueeze_approx(xi, 1.0, t, LowSqueezeCut::field_field) - extra));
  }
  const double bound = 5.0 * xi * xi;
  return {aa <= bound && ff <= bound, "max error atom-atom " + fmt("%.2e", aa) + ", field-field " + fmt("%.2e", ff) +
                                          ", bound " + fmt("%.2e", bound) + " (field-field with the {12,21} block: " +
                                          fmt("%.2e", ff2) + ")"};
}

// 9. Equal photon numbers in the antisymmetric model.
Outcome parity_diagonal() {
  double worst = 0.0;
  for (int n : {1, 2})
    for (AtomicLabel a : {AtomicLabel::ee, AtomicLabel::eg, AtomicLabel::gg}) {
      const int n_max = 2 * n + 2;
      const HermitianOperator h = build_hamiltonian(model(pi, n_max));
      const Trajectory traj(h, assemble_initial(atomic_state(a), build_field(FieldSpec::fock(n, n), 2, n_max)));
      for (int k = 0; k <= 500; ++k) worst = std::max(worst, traj.atomic_state(25.0 * k / 500.0).max_off_diagonal());
    }
  return {worst < 1e-10, "max off-diagonal " + fmt("%.2e", worst)};
}

// 10. Invariants on random inputs.
Outcome invariants() {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  auto rvec = [&](Index n) {
    ComplexVector v(n);
    for (Index i = 0; i < n; ++i) v(i) = cplx(nd(rng), nd(rng));
    return ComplexVector(v / v.norm());
  };
  double unitarity = 0.0, trace = 0.0, negative = 0.0, excitation = 0.0, lu = 0.0, xform = 0.0;
  for (double phi : {0.3, 1.7, 4.4}) {
    const HermitianOperator h = build_hamiltonian(model(phi, 3));
    const SpectralPropagator prop(h);
    const ComplexMatrix u = prop.unitary(2.3);
    unitarity = std::max(unitarity, max_abs(u * u.adjoint() - ComplexMatrix::Identity(h.dim(), h.dim())));
    ComplexMatrix w(h.dim(), 3);
    for (Index j = 0; j < 3; ++j) w.col(j) = rvec(h.dim()) / std::sqrt(3.0);
    const DensityMatrix out = evolve(DensityMatrix::from_factor(h.space(), w), h, 2.3);
    trace = std::max(trace, std::abs(out.trace() - 1.0));
    negative = std::max(negative, -out.min_eigenvalue());
    const HermitianOperator n = excitation_number(h.space());
    const ComplexVector v = rvec(h.dim());
    excitation = std::max(excitation, std::abs(n.expectation(prop.apply(v, 2.3)) - n.expectation(v)));
  }
  const CompositeSpace q({2, 2});
  for (int k = 0; k < 20; ++k) {
    ComplexMatrix w(4, 2);
    w << rvec(4), rvec(4);
    w /= std::sqrt(w.squaredNorm());
    const DensityMatrix rho = DensityMatrix::from_factor(q, w);
    Eigen::HouseholderQR<ComplexMatrix> q1(ComplexMatrix::NullaryExpr(2, 2, [&] { return cplx(nd(rng), nd(rng)); }));
    Eigen::HouseholderQR<ComplexMatrix> q2(ComplexMatrix::NullaryExpr(2, 2, [&] { return cplx(nd(rng), nd(rng)); }));
    const ComplexMatrix loc = kron(ComplexMatrix(q1.householderQ()), ComplexMatrix(q2.householderQ()));
    lu = std::max(lu, std::abs(concurrence(DensityMatrix(q, loc * rho.matrix() * loc.adjoint())) - concurrence(rho)));
  }
  // Single-excitation dynamics stay in X form with no |ee> weight: C = 2|rho_{eg,ge}|.
  const HermitianOperator h = build_hamiltonian(model(1.3, 1));
  const Trajectory traj(h, basis(h.space(), {kExcited, kGround, 0, 0}));
  for (int k = 0; k <= 200; ++k) {
    const DensityMatrix a = traj.atomic_state(0.1 * k);
    xform = std::max(xform, std::abs(concurrence(a) - 2.0 * std::abs(a(1, 2))));
  }
  const double worst = std::max({unitarity, trace, negative, excitation, lu, xform});
  return {worst < 1e-10, "unitarity " + fmt("%.1e", unitarity) + ", trace " + fmt("%.1e", trace) + ", positivity " +
                             fmt("%.1e", negative) + ", excitations " + fmt("%.1e", excitation) + ", local unitary " +
                             fmt("%.1e", lu) + ", X form " + fmt("%.1e", xform)};
}

// 11. Printed formulas against the numerics. Informative.
Outcome audit() {
  double resolvent_full = 0.0, resolvent_abs = 0.0, bell_pub = 0.0, bell_swap = 0.0;
  for (double phi : {0.5, 1.5, 2.5})
    for (double t : {0.7, 3.1}) {
      const ComplexMatrix num = resolvent_numeric_block(phi, 1.0, t);
      const ComplexMatrix pub = resolvent_propagator_as_published(phi, 1.0, t);
      resolvent_full = std::max(resolvent_full, max_abs(num - pub));
      resolvent_abs = std::max(resolvent_abs, (num.cwiseAbs() - pub.cwiseAbs()).cwiseAbs().maxCoeff());
    }
  for (double phi : {0.5, 1.5, 2.5}) {
    const HermitianOperator h = build_hamiltonian(model(phi, 1));
    ComplexVector v = ComplexVector::Zero(h.dim());
    v(h.space().flatten({kExcited, kGround, 0, 0})) = v(h.space().flatten({kGround, kExcited, 0, 0})) = 1.0 / std::sqrt(2.0);
    const Trajectory traj(h, Ensemble(StateVector(h.space(), v)));
    for (int k = 0; k <= 100; ++k) {
      const double t = 0.1 * k, c = concurrence(traj.atomic_state(t));
      bell_pub = std::max(bell_pub, std::abs(c - concurrence_bell00_as_published(phi, 1.0, t)));
      bell_swap = std::max(bell_swap, std::abs(c - concurrence_bell00_swapped(phi, 1.0, t)));
    }
  }
  const SpectralPropagator sub([] {
    const CompositeSpace s = CompositeSpace::two_atoms_one_mode(3);
    const SparseMatrix half = embed(s, kAtom2, sigma_plus()) * embed(s, 2, annihilation(3));
    return HermitianOperator(s, std::sqrt(2.0) * (half + SparseMatrix(half.adjoint())));
  }());
  const double u2_printed = max_abs(djc_u2_variant(3, 1.0, 0.3, true, false) - sub.unitary(0.3));
  const double s2_printed = max_abs(djc_u2_variant(3, 1.0, 0.3, false, true) - sub.unitary(0.3));
  const auto lattice = eg00_death_times(1.0, 1.0, 100);
  std::size_t zeros = 0;
  for (double z : eg00_all_zeros(1.0, 1.0, 25.0)) zeros += z <= 25.0;
  std::size_t printed = 0;
  for (double z : lattice) printed += z <= 25.0;
  return {true, "resolvent entries " + fmt("%.2e", resolvent_full) + " (magnitudes " + fmt("%.1e", resolvent_abs) +
                    "); Bell concurrence as printed " + fmt("%.2e", bell_pub) + ", K1/K2 swapped " +
                    fmt("%.1e", bell_swap) + "; U2 diagonal as printed " + fmt("%.2e", u2_printed) +
                    ", S2 as printed " + fmt("%.2e", s2_printed) + "; |eg00> zeros on gt<=25: " +
                    std::to_string(printed) + " on the printed lattice of " + std::to_string(zeros)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"closed-form concurrence", closed_forms},
      {"death-time lattice", death_lattice},
      {"mapping equivalences", mapping_equivalence},
      {"analytic propagator blocks", analytic_blocks},
      {"Table I report", table_one},
      {"thermal threshold", thermal_threshold},
      {"transfer optimum", transfer_optimum},
      {"low-squeezing approximations", low_squeeze},
      {"equal-occupation parity", parity_diagonal},
      {"invariant suites", invariants},
      {"transcription audit", audit},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("%s %2zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
