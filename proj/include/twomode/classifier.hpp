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

#ifndef TWOMODE_CLASSIFIER_HPP
#define TWOMODE_CLASSIFIER_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "twomode/entanglement.hpp"
#include "twomode/text.hpp"

namespace twomode {

enum class Verdict { NONE, SD, DI, AL };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::NONE: return "NONE";
    case Verdict::SD: return "SD";
    case Verdict::DI: return "DI";
    case Verdict::AL: return "AL";
  }
  return "?";
}

struct Interval {
  double start = 0.0;
  double end = 0.0;
  double length() const { return end - start; }
};

struct DynamicsVerdict {
  Verdict label = Verdict::NONE;
  /// Every zero region found after first generation, instants included.
  std::vector<Interval> dead_intervals;
  std::optional<double> first_generation_time;
  std::optional<double> period;
  double max_concurrence = 0.0;
  double horizon = 0.0;
  std::size_t samples = 0;

  bool generated() const { return label != Verdict::NONE; }
  /// Dead regions longer than `min_length`.
  std::vector<Interval> long_intervals(double min_length) const {
    std::vector<Interval> out;
    for (const auto& i : dead_intervals)
      if (i.length() > min_length) out.push_back(i);
    return out;
  }
};

struct ClassifyOptions {
  double eps_zero = 1e-6;
  /// delta_dead as a fraction of the horizon.
  double dead_fraction = 1e-3;
  /// Boundary bisection resolution as a fraction of the horizon.
  double refine_fraction = 1e-4;
  /// Sampled local minima at or below this value are refined with Brent's method.
  double refine_below = 0.05;
  /// Segments with both ends below refine_below are split 2^k ways before the
  /// minima search, so that close pairs of zeros are told apart.
  int subdivide = 2;
  std::size_t min_samples = 500;
  bool check_horizon = true;
  /// Autocorrelation value a peak must reach to count as a period.
  double period_peak = 0.5;
};

using SeriesFn = std::function<double(double)>;

/// Uniform samples t_k = k * horizon / (samples - 1) of a concurrence callback.
inline std::vector<EntanglementSample> sample_series(const SeriesFn& fn, double horizon, std::size_t samples) {
  if (samples < 2) throw ConfigError("sample_series: need at least two samples");
  std::vector<EntanglementSample> out(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    out[k].t = horizon * static_cast<double>(k) / static_cast<double>(samples - 1);
    out[k].concurrence = fn(out[k].t);
  }
  return out;
}

/// Period of the first autocorrelation peak reaching `peak`, searched over
/// lags up to half the series. Empty for flat or aperiodic series.
inline std::optional<double> estimate_period(std::span<const EntanglementSample> series, double peak = 0.5) {
  const std::size_t n = series.size();
  if (n < 8) return std::nullopt;
  double mean = 0.0;
  for (const auto& s : series) mean += s.concurrence;
  mean /= static_cast<double>(n);
  std::vector<double> x(n);
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = series[i].concurrence - mean;
    var += x[i] * x[i];
  }
  var /= static_cast<double>(n);
  if (var < 1e-14) return std::nullopt;
  const std::size_t max_lag = n / 2;
  std::vector<double> r(max_lag + 2, 0.0);
  for (std::size_t lag = 0; lag <= max_lag + 1 && lag < n; ++lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) acc += x[i] * x[i + lag];
    r[lag] = acc / static_cast<double>(n - lag) / var;
  }
  // Skip the central lobe, then take the first local maximum above `peak`.
  std::size_t lag = 1;
  while (lag < max_lag && r[lag] > r[lag + 1]) ++lag;
  for (; lag <= max_lag; ++lag) {
    if (r[lag] >= peak && r[lag] >= r[lag - 1] && r[lag] >= r[lag + 1]) {
      return series[lag].t - series[0].t;
    }
  }
  return std::nullopt;
}

namespace detail {

/// Boundary between an alive time and a dead time by bisection on fn.
inline double bisect_zero_edge(const SeriesFn& fn, double alive, double dead, double eps, double resolution) {
  while (std::abs(dead - alive) > resolution) {
    const double mid = 0.5 * (alive + dead);
    if (fn(mid) < eps) dead = mid;
    else alive = mid;
  }
  return 0.5 * (alive + dead);
}

struct BelowThreshold {
  double t;
};

/// Edge of the dead run containing `dead`, walking towards `limit` (alive) in
/// steps of `resolution` so that a neighbouring zero is not swallowed.
inline double walk_zero_edge(const SeriesFn& fn, double dead, double limit, double eps, double resolution) {
  const double dir = limit > dead ? 1.0 : -1.0;
  double t = dead;
  while (std::abs(limit - t) > resolution) {
    const double next = t + dir * resolution;
    if (fn(next) >= eps) return bisect_zero_edge(fn, next, t, eps, resolution / 8.0);
    t = next;
  }
  return bisect_zero_edge(fn, limit, t, eps, resolution / 8.0);
}

/// Zeros of fn inside (a, b), both ends alive: Brent minimisation stops at the
/// first value below eps, then the rest of the bracket is searched again.
inline void find_dips(const SeriesFn& fn, double a, double b, double eps, double resolution, std::vector<Interval>& out,
                      int depth = 0) {
  if (b - a <= 2.0 * resolution || depth > 8) return;
  std::optional<double> hit;
  try {
    auto f = [&](double t) {
      const double y = fn(t);
      if (y < eps) throw BelowThreshold{t};
      return y;
    };
    boost::uintmax_t iters = 200;
    boost::math::tools::brent_find_minima(f, a, b, 40, iters);
  } catch (const BelowThreshold& z) {
    hit = z.t;
  }
  if (!hit) return;
  const double lo = walk_zero_edge(fn, *hit, a, eps, resolution);
  const double hi = walk_zero_edge(fn, *hit, b, eps, resolution);
  out.push_back({lo, hi});
  find_dips(fn, a, lo - resolution, eps, resolution, out, depth + 1);
  find_dips(fn, hi + resolution, b, eps, resolution, out, depth + 1);
}

/// Extra callback samples inside segments whose ends are both below refine_below.
inline std::vector<EntanglementSample> subdivide_low(std::span<const EntanglementSample> series, const SeriesFn& fn,
                                                     const ClassifyOptions& opt) {
  std::vector<EntanglementSample> out;
  out.reserve(series.size());
  const int parts = 1 << std::max(0, opt.subdivide);
  for (std::size_t j = 0; j < series.size(); ++j) {
    out.push_back(series[j]);
    if (j + 1 == series.size() || parts == 1) continue;
    const double c0 = series[j].concurrence, c1 = series[j + 1].concurrence;
    if (c0 > opt.refine_below || c1 > opt.refine_below || c0 < opt.eps_zero || c1 < opt.eps_zero) continue;
    const double t0 = series[j].t, h = (series[j + 1].t - t0) / parts;
    for (int k = 1; k < parts; ++k) {
      EntanglementSample s = series[j];
      s.t = t0 + k * h;
      s.concurrence = fn(s.t);
      out.push_back(s);
    }
  }
  return out;
}

/// Dead runs and refined dips on a (possibly non-uniform) grid.
inline DynamicsVerdict label_grid(const std::vector<EntanglementSample>& series, const SeriesFn& fn,
                                  const ClassifyOptions& opt, double eps, double res, double dead_len, DynamicsVerdict v) {
  const std::size_t n = series.size();
  std::size_t first = 0;
  while (series[first].concurrence < eps) ++first;
  // Without a callback the threshold crossing is interpolated linearly.
  auto edge = [&](std::size_t alive, std::size_t dead) {
    if (fn) return bisect_zero_edge(fn, series[alive].t, series[dead].t, eps, res);
    const double ca = series[alive].concurrence, cd = series[dead].concurrence;
    const double w = ca > cd ? (ca - eps) / (ca - cd) : 0.5;
    return series[alive].t + w * (series[dead].t - series[alive].t);
  };
  v.first_generation_time = first == 0 ? series[0].t : edge(first, first - 1);

  for (std::size_t j = first + 1; j < n; ++j) {
    const double c = series[j].concurrence;
    if (c < eps) {
      std::size_t end = j;
      while (end + 1 < n && series[end + 1].concurrence < eps) ++end;
      const double lo = edge(j - 1, j);
      const double hi = end + 1 < n ? edge(end + 1, end) : series[end].t;
      v.dead_intervals.push_back({lo, hi});
      j = end;
      continue;
    }
    if (!fn || j + 1 >= n || c > opt.refine_below) continue;
    if (c > series[j - 1].concurrence || c > series[j + 1].concurrence) continue;
    if (series[j - 1].concurrence < eps || series[j + 1].concurrence < eps) continue;
    // Shallow sampled minimum: look for zeros between the neighbours.
    find_dips(fn, series[j - 1].t, series[j + 1].t, eps, res, v.dead_intervals);
  }
  std::sort(v.dead_intervals.begin(), v.dead_intervals.end(),
            [](const Interval& x, const Interval& y) { return x.start < y.start; });

  bool long_dead = false;
  for (const auto& i : v.dead_intervals) long_dead = long_dead || i.length() > dead_len;
  v.label = long_dead ? Verdict::SD : v.dead_intervals.empty() ? Verdict::AL : Verdict::DI;
  return v;
}

}  // namespace detail

/// Label a concurrence time series. With `fn` the zero regions are refined
/// on the underlying evolution: run edges by bisection, shallow sampled minima
/// by Brent minimisation. Zeros before the first generation are ignored.
inline DynamicsVerdict classify(std::span<const EntanglementSample> series, double horizon, const SeriesFn& fn,
                                const ClassifyOptions& opt = {}) {
  if (series.size() < opt.min_samples) {
    throw OutOfValidity("classify: need at least " + std::to_string(opt.min_samples) + " samples, got " +
                        std::to_string(series.size()));
  }
  if (!(horizon > 0.0)) throw OutOfValidity("classify: horizon must be positive");
  DynamicsVerdict v;
  v.horizon = horizon;
  v.samples = series.size();
  for (const auto& s : series) v.max_concurrence = std::max(v.max_concurrence, s.concurrence);
  const double eps = opt.eps_zero;
  const double res = opt.refine_fraction * horizon;
  const double dead_len = opt.dead_fraction * horizon;

  v.period = estimate_period(series, opt.period_peak);
  if (opt.check_horizon && v.period && *v.period > horizon / 10.0) {
    throw InsufficientHorizon("classify: oscillation period " + text::format_real(*v.period) +
                              " exceeds a tenth of the horizon " + text::format_real(horizon));
  }
  if (v.max_concurrence < eps) {
    v.label = Verdict::NONE;
    return v;
  }

  const std::vector<EntanglementSample> grid = fn ? detail::subdivide_low(series, fn, opt) : std::vector<EntanglementSample>(series.begin(), series.end());
  return detail::label_grid(grid, fn, opt, eps, res, dead_len, std::move(v));
}

/// Threshold-only classification of a bare series (no refinement callback).
inline DynamicsVerdict classify(std::span<const EntanglementSample> series, double horizon,
                                const ClassifyOptions& opt = {}) {
  return classify(series, horizon, SeriesFn{}, opt);
}

/// Sample `fn` on a uniform grid and classify with refinement.
inline DynamicsVerdict classify_function(const SeriesFn& fn, double horizon, std::size_t samples,
                                         const ClassifyOptions& opt = {}) {
  const auto series = sample_series(fn, horizon, samples);
  return classify(series, horizon, fn, opt);
}

// ---------------------------------------------------------------------------
// Critical-parameter scans.

struct ScanProbe {
  double value = 0.0;
  Verdict label = Verdict::NONE;
};

struct ScanResult {
  std::string parameter;
  Interval bracket;
  double critical = 0.0;
  double uncertainty = 0.0;
  Verdict low_label = Verdict::NONE;
  Verdict high_label = Verdict::NONE;
  std::vector<ScanProbe> probes;
};

/// Bisection on the verdict boundary between lo and hi. The endpoint probes
/// run concurrently; each later probe depends on the previous one.
inline ScanResult scan_critical(const std::string& parameter, double lo, double hi,
                                const std::function<Verdict(double)>& verdict_at, double tolerance) {
  if (!(lo < hi)) throw ConfigError("scan_critical: range must satisfy lo < hi");
  if (!(tolerance > 0.0)) throw ConfigError("scan_critical: tolerance must be positive");
  auto high = std::async(std::launch::async, verdict_at, hi);
  const Verdict vlo = verdict_at(lo);
  const Verdict vhi = high.get();
  ScanResult r;
  r.parameter = parameter;
  r.low_label = vlo;
  r.high_label = vhi;
  r.probes = {{lo, vlo}, {hi, vhi}};
  if (vlo == vhi) {
    throw NoSwitch("scan_critical: verdict is " + to_string(vlo) + " at both ends of " + parameter + " in [" +
                   text::format_real(lo) + ", " + text::format_real(hi) + "]");
  }
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    const Verdict vm = verdict_at(mid);
    r.probes.push_back({mid, vm});
    if (vm == vlo) lo = mid;
    else hi = mid;
  }
  r.bracket = {lo, hi};
  r.critical = 0.5 * (lo + hi);
  r.uncertainty = 0.5 * (hi - lo);
  return r;
}

}  // namespace twomode

#endif  // TWOMODE_CLASSIFIER_HPP
