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

#ifndef TWOMODE_FIELD_STATES_HPP
#define TWOMODE_FIELD_STATES_HPP

#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "twomode/tensor_core.hpp"
#include "twomode/text.hpp"

namespace twomode {

/// Default bound on the population discarded by a Fock cutoff.
inline constexpr double kDefaultTruncEps = 1e-8;

// ---------------------------------------------------------------------------
// Atomic states in the {ee, eg, ge, gg} basis.

enum class AtomicLabel { gg, ee, eg, ge, Phi, Psi };

struct AtomicState {
  AtomicLabel label;
  ComplexVector vector;  // 4 amplitudes
};

inline AtomicState atomic_state(AtomicLabel label) {
  ComplexVector v = ComplexVector::Zero(4);
  const double r = 1.0 / std::sqrt(2.0);
  switch (label) {
    case AtomicLabel::ee: v(0) = 1.0; break;
    case AtomicLabel::eg: v(1) = 1.0; break;
    case AtomicLabel::ge: v(2) = 1.0; break;
    case AtomicLabel::gg: v(3) = 1.0; break;
    case AtomicLabel::Phi: v(0) = r; v(3) = r; break;
    case AtomicLabel::Psi: v(1) = r; v(2) = r; break;
  }
  return {label, v};
}

inline std::string to_string(AtomicLabel label) {
  switch (label) {
    case AtomicLabel::gg: return "gg";
    case AtomicLabel::ee: return "ee";
    case AtomicLabel::eg: return "eg";
    case AtomicLabel::ge: return "ge";
    case AtomicLabel::Phi: return "Phi";
    case AtomicLabel::Psi: return "Psi";
  }
  return "?";
}

inline AtomicLabel parse_atomic_label(std::string_view s) {
  const std::string l = text::lower(text::trim(s));
  if (l == "gg") return AtomicLabel::gg;
  if (l == "ee") return AtomicLabel::ee;
  if (l == "eg") return AtomicLabel::eg;
  if (l == "ge") return AtomicLabel::ge;
  if (l == "phi") return AtomicLabel::Phi;
  if (l == "psi") return AtomicLabel::Psi;
  throw ConfigError("unknown atomic state '" + std::string(s) + "' (expected gg, ee, eg, ge, Phi, Psi)");
}

inline bool is_separable(AtomicLabel label) {
  return label != AtomicLabel::Phi && label != AtomicLabel::Psi;
}

// ---------------------------------------------------------------------------
// Single-mode building blocks. Amplitudes are renormalised after the cutoff
// and the discarded population is recorded.

struct ModeState {
  ComplexVector amplitudes;
  double discarded = 0.0;
};

struct ModeMixture {
  RealVector populations;
  double discarded = 0.0;
};

namespace detail {

inline void check_tail(double tail, double eps, const char* what, int n_max) {
  if (tail > eps) {
    throw TruncationTooSmall(std::string(what) + ": population " + text::format_real(tail) +
                             " beyond n_max=" + std::to_string(n_max) + " exceeds tolerance " +
                             text::format_real(eps));
  }
}

inline void check_n_max(int n_max) {
  if (n_max < 0) throw ExceedsTruncation("n_max must be non-negative");
}

}  // namespace detail

/// Poisson tail sum_{n > n_max} |c_n|^2 of a coherent state.
inline double coherent_tail(cplx alpha, int n_max) {
  const double mean = std::norm(alpha);
  if (mean == 0.0) return 0.0;
  // log p_n = -mean + n log(mean) - lgamma(n + 1)
  double tail = 0.0;
  for (int n = n_max + 1; n < n_max + 2000; ++n) {
    const double term = std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
    tail += term;
    if (n > mean && term < 1e-300) break;
  }
  return tail;
}

inline ModeState coherent_state(cplx alpha, int n_max, double eps = kDefaultTruncEps) {
  detail::check_n_max(n_max);
  const double tail = coherent_tail(alpha, n_max);
  detail::check_tail(tail, eps, "coherent_state", n_max);
  ComplexVector c(n_max + 1);
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= n_max; ++n) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return {c / c.norm(), tail};
}

/// Population of the single-mode squeezed vacuum beyond n_max.
inline double squeezed_tail(cplx xi, int n_max) {
  const double r = std::abs(xi);
  if (r == 0.0) return 0.0;
  const double t2 = std::pow(std::tanh(r), 2);
  // p_{2k} = (2k)! / (4^k (k!)^2) tanh^{2k} r / cosh r
  double tail = 0.0;
  for (int k = 0; k < 100000; ++k) {
    if (2 * k <= n_max) continue;
    const double logp = std::lgamma(2.0 * k + 1) - 2.0 * std::lgamma(k + 1.0) - k * std::log(4.0) +
                        k * std::log(t2) - std::log(std::cosh(r));
    const double term = std::exp(logp);
    tail += term;
    if (term < 1e-300 || (term < 1e-20 * tail && k > n_max)) break;
  }
  return tail;
}

/// S(xi)|0> with S(xi) = exp((xi* a^2 - xi a^dagger^2)/2); only even n populated.
inline ModeState squeezed_vacuum(cplx xi, int n_max, double eps = kDefaultTruncEps) {
  detail::check_n_max(n_max);
  const double tail = squeezed_tail(xi, n_max);
  detail::check_tail(tail, eps, "squeezed_vacuum", n_max);
  const double r = std::abs(xi);
  const cplx ratio = r == 0.0 ? cplx(0.0) : -std::polar(std::tanh(r), std::arg(xi));
  ComplexVector c = ComplexVector::Zero(n_max + 1);
  c(0) = 1.0 / std::sqrt(std::cosh(r));
  for (int n = 2; n <= n_max; n += 2) {
    c(n) = c(n - 2) * ratio * std::sqrt(static_cast<double>(n) * (n - 1)) / static_cast<double>(n);
  }
  return {c / c.norm(), tail};
}

inline double thermal_tail(double nbar, int n_max) {
  if (nbar == 0.0) return 0.0;
  return std::pow(nbar / (1.0 + nbar), n_max + 1);
}

/// p_n = nbar^n / (1 + nbar)^(n+1), renormalised.
inline ModeMixture thermal_populations(double nbar, int n_max, double eps = kDefaultTruncEps) {
  detail::check_n_max(n_max);
  if (!(nbar >= 0.0)) throw OutOfValidity("thermal_state: mean occupation must be non-negative");
  const double tail = thermal_tail(nbar, n_max);
  detail::check_tail(tail, eps, "thermal_state", n_max);
  RealVector p(n_max + 1);
  const double q = nbar / (1.0 + nbar);
  p(0) = 1.0 / (1.0 + nbar);
  for (int n = 1; n <= n_max; ++n) p(n) = p(n - 1) * q;
  return {p / p.sum(), tail};
}

inline DensityMatrix thermal_state(double nbar, int n_max, double eps = kDefaultTruncEps) {
  const ModeMixture mix = thermal_populations(nbar, n_max, eps);
  ComplexMatrix factor = ComplexMatrix::Zero(n_max + 1, n_max + 1);
  for (int n = 0; n <= n_max; ++n) factor(n, n) = std::sqrt(mix.populations(n));
  return DensityMatrix::from_factor(CompositeSpace({n_max + 1}), factor);
}

// ---------------------------------------------------------------------------
// Two-mode field states on [n_max+1, n_max+1].

inline CompositeSpace two_mode_space(int n_max) { return CompositeSpace({n_max + 1, n_max + 1}); }
inline CompositeSpace one_mode_space(int n_max) { return CompositeSpace({n_max + 1}); }

inline StateVector fock_state(int n, int m, int n_max) {
  if (n < 0 || m < 0 || n > n_max || m > n_max) {
    throw ExceedsTruncation("fock_state(" + std::to_string(n) + "," + std::to_string(m) +
                            ") exceeds n_max=" + std::to_string(n_max));
  }
  return StateVector::basis(two_mode_space(n_max), {n, m});
}

inline StateVector fock_state(int n, int n_max) {
  if (n < 0 || n > n_max) {
    throw ExceedsTruncation("fock_state(" + std::to_string(n) + ") exceeds n_max=" + std::to_string(n_max));
  }
  return StateVector::basis(one_mode_space(n_max), {n});
}

inline double tmss_tail(cplx xi, int n_max) {
  const double r = std::abs(xi);
  if (r == 0.0) return 0.0;
  return std::pow(std::tanh(r), 2.0 * (n_max + 1));
}

/// S(xi)|0,0> with S(xi) = exp(xi* a1 a2 - xi a1^dagger a2^dagger).
inline StateVector two_mode_squeezed(cplx xi, int n_max, double eps = kDefaultTruncEps,
                                     double* discarded = nullptr) {
  detail::check_n_max(n_max);
  const double tail = tmss_tail(xi, n_max);
  detail::check_tail(tail, eps, "two_mode_squeezed", n_max);
  if (discarded) *discarded = tail;
  const double r = std::abs(xi);
  const cplx ratio = r == 0.0 ? cplx(0.0) : -std::polar(std::tanh(r), std::arg(xi));
  const CompositeSpace space = two_mode_space(n_max);
  ComplexVector v = ComplexVector::Zero(space.total_dim());
  cplx c = 1.0 / std::cosh(r);
  for (int n = 0; n <= n_max; ++n) {
    v(space.flatten({n, n})) = c;
    c *= ratio;
  }
  return StateVector::normalized(space, v);
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

inline double factorial(int n) { return std::tgamma(n + 1.0); }

/// Image of |n,m> under the 50/50 mode transform, evaluated from the
/// binomial double sum over (k, l).
inline StateVector eta_state(int n, int m, int n_max) {
  if (n < 0 || m < 0 || n + m > n_max) {
    throw ExceedsTruncation("eta_state(" + std::to_string(n) + "," + std::to_string(m) +
                            ") needs n+m <= n_max=" + std::to_string(n_max));
  }
  const CompositeSpace space = two_mode_space(n_max);
  ComplexVector v = ComplexVector::Zero(space.total_dim());
  const double prefactor = 1.0 / std::sqrt(std::pow(2.0, m + n) * factorial(m) * factorial(n));
  for (int k = 0; k <= n; ++k)
    for (int l = 0; l <= m; ++l) {
      const int first = m + n - k - l;
      const int second = k + l;
      const double term = binomial(n, k) * binomial(m, l) * std::sqrt(factorial(first)) *
                          std::sqrt(factorial(second)) * ((l % 2) ? -1.0 : 1.0);
      v(space.flatten({first, second})) += prefactor * term;
    }
  return StateVector(space, v);
}

/// Tr_{TF2} |eta_nm><eta_nm| on the single mode [n_max+1].
inline DensityMatrix rho_nm_state(int n, int m, int n_max) {
  const StateVector eta = eta_state(n, m, n_max);
  return partial_trace(eta, {0});
}

/// Populations of the printed kappa_{mnkl} closed form, kept for comparison
/// with rho_nm_state (the printed sign factor is (-1)^l only).
inline RealVector rho_nm_printed_populations(int n, int m, int n_max) {
  if (n < 0 || m < 0 || n + m > n_max) throw ExceedsTruncation("rho_nm_printed: n+m exceeds n_max");
  RealVector pops = RealVector::Zero(n_max + 1);
  const double norm = std::pow(2.0, m + n) * factorial(n) * factorial(m);
  for (int k = 0; k <= n; ++k)
    for (int p = 0; p <= n; ++p)
      for (int l = 0; l <= m; ++l)
        for (int q = 0; q <= m; ++q) {
          if (k + l != p + q) continue;
          const double kappa = binomial(n, k) * binomial(n, p) * binomial(m, l) * binomial(m, q) *
                               factorial(m + n - k - l) * factorial(k + l) * ((l % 2) ? -1.0 : 1.0);
          pops(m + n - k - l) += kappa / norm;
        }
  return pops;
}

// ---------------------------------------------------------------------------
// Field specifications as used by scenarios and the Table I report.

enum class FieldKind { fock, coherent, squeezed_pair, squeezed, tmss, thermal, eta, rho_nm };

struct FieldSpec {
  FieldKind kind = FieldKind::fock;
  int n = 0;
  int m = 0;
  cplx alpha = 0.0;
  cplx beta = 0.0;
  cplx xi = 0.0;
  double nbar = 0.0;
  /// Number of mode arguments written (fock(n) vs fock(n,m), coherent(a) vs coherent(a,b)).
  int arity = 2;

  static FieldSpec fock(int n, int m) { return {FieldKind::fock, n, m}; }
  static FieldSpec fock1(int n) {
    FieldSpec s{FieldKind::fock, n, 0};
    s.arity = 1;
    return s;
  }
  static FieldSpec coherent(cplx a, cplx b) {
    FieldSpec s{FieldKind::coherent};
    s.alpha = a;
    s.beta = b;
    return s;
  }
  static FieldSpec coherent1(cplx a) {
    FieldSpec s = coherent(a, 0.0);
    s.arity = 1;
    return s;
  }
  static FieldSpec squeezed_pair(cplx xi) {
    FieldSpec s{FieldKind::squeezed_pair};
    s.xi = xi;
    return s;
  }
  static FieldSpec squeezed(cplx xi) {
    FieldSpec s{FieldKind::squeezed};
    s.xi = xi;
    s.arity = 1;
    return s;
  }
  static FieldSpec tmss(cplx xi) {
    FieldSpec s{FieldKind::tmss};
    s.xi = xi;
    return s;
  }
  static FieldSpec thermal(double nbar) {
    FieldSpec s{FieldKind::thermal};
    s.nbar = nbar;
    return s;
  }
  static FieldSpec eta(int n, int m) { return {FieldKind::eta, n, m}; }
  static FieldSpec rho_nm(int n, int m) {
    FieldSpec s{FieldKind::rho_nm, n, m};
    return s;
  }

  std::string to_string() const {
    using text::format_complex;
    using text::format_real;
    const auto nm = std::to_string(n) + "," + std::to_string(m);
    switch (kind) {
      case FieldKind::fock: return arity == 1 ? "fock(" + std::to_string(n) + ")" : "fock(" + nm + ")";
      case FieldKind::coherent:
        return arity == 1 ? "coherent(" + format_complex(alpha) + ")"
                          : "coherent(" + format_complex(alpha) + "," + format_complex(beta) + ")";
      case FieldKind::squeezed_pair: return "squeezed_pair(" + format_complex(xi) + ")";
      case FieldKind::squeezed: return "squeezed(" + format_complex(xi) + ")";
      case FieldKind::tmss: return "tmss(" + format_complex(xi) + ")";
      case FieldKind::thermal: return "thermal(" + format_real(nbar) + ")";
      case FieldKind::eta: return "eta(" + nm + ")";
      case FieldKind::rho_nm: return "rho_nm(" + nm + ")";
    }
    return "?";
  }

  static FieldSpec parse(std::string_view s) {
    const std::string_view src = text::trim(s);
    const auto open = src.find('(');
    if (open == std::string_view::npos || src.back() != ')') {
      throw ConfigError("field spec '" + std::string(src) + "' must look like kind(args)");
    }
    const std::string name = text::lower(text::trim(src.substr(0, open)));
    const auto args = text::split(src.substr(open + 1, src.size() - open - 2), ',');
    auto int_arg = [&](std::size_t k) {
      auto v = text::parse_int(args.at(k));
      if (!v || *v < 0) throw ConfigError("field spec '" + std::string(src) + "': bad occupation '" + args.at(k) + "'");
      return static_cast<int>(*v);
    };
    auto cplx_arg = [&](std::size_t k) {
      auto v = text::parse_complex(args.at(k));
      if (!v) throw ConfigError("field spec '" + std::string(src) + "': bad number '" + args.at(k) + "'");
      return *v;
    };
    auto expect = [&](std::size_t lo, std::size_t hi) {
      if (args.size() < lo || args.size() > hi) {
        throw ConfigError("field spec '" + std::string(src) + "': wrong number of arguments");
      }
    };
    if (name == "fock") {
      expect(1, 2);
      return args.size() == 1 ? fock1(int_arg(0)) : fock(int_arg(0), int_arg(1));
    }
    if (name == "coherent") {
      expect(1, 2);
      return args.size() == 1 ? coherent1(cplx_arg(0)) : coherent(cplx_arg(0), cplx_arg(1));
    }
    if (name == "squeezed_pair") return expect(1, 1), squeezed_pair(cplx_arg(0));
    if (name == "squeezed") return expect(1, 1), squeezed(cplx_arg(0));
    if (name == "tmss") return expect(1, 1), tmss(cplx_arg(0));
    if (name == "thermal") {
      expect(1, 1);
      const auto v = text::parse_real(args[0]);
      if (!v || *v < 0.0) throw ConfigError("field spec '" + std::string(src) + "': bad mean occupation");
      return thermal(*v);
    }
    if (name == "eta") return expect(2, 2), eta(int_arg(0), int_arg(1));
    if (name == "rho_nm") return expect(2, 2), rho_nm(int_arg(0), int_arg(1));
    throw ConfigError("unknown field kind '" + name + "'");
  }

  /// Modes the spec lives on: 1 (single-mode picture) or 2. thermal(nbar)
  /// is accepted by both and reports 2.
  int modes() const {
    switch (kind) {
      case FieldKind::squeezed:
      case FieldKind::rho_nm: return 1;
      case FieldKind::fock:
      case FieldKind::coherent: return arity;
      default: return 2;
    }
  }
};

/// Field state as an ensemble on the mode factors, plus truncation record.
struct FieldState {
  Ensemble state;
  double discarded = 0.0;
  int modes = 2;
};

/// Population lost by cutting the spec at n_max; +inf when it cannot fit at all.
inline double field_tail(const FieldSpec& spec, int n_max) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  auto pair = [](double a, double b) { return 1.0 - (1.0 - a) * (1.0 - b); };
  switch (spec.kind) {
    case FieldKind::fock: return std::max(spec.n, spec.m) <= n_max ? 0.0 : kInf;
    case FieldKind::eta: return spec.n + spec.m <= n_max ? 0.0 : kInf;
    case FieldKind::rho_nm: return spec.n + spec.m <= n_max ? 0.0 : kInf;
    case FieldKind::coherent:
      return spec.arity == 1 ? coherent_tail(spec.alpha, n_max)
                             : pair(coherent_tail(spec.alpha, n_max), coherent_tail(spec.beta, n_max));
    case FieldKind::squeezed: return squeezed_tail(spec.xi, n_max);
    case FieldKind::squeezed_pair: return pair(squeezed_tail(spec.xi, n_max), squeezed_tail(-spec.xi, n_max));
    case FieldKind::tmss: return tmss_tail(spec.xi, n_max);
    case FieldKind::thermal: return pair(thermal_tail(spec.nbar, n_max), thermal_tail(spec.nbar, n_max));
  }
  return kInf;
}

/// Smallest cutoff >= floor whose discarded population is within eps.
inline int required_n_max(const FieldSpec& spec, double eps, int floor = 1, int ceiling = 80) {
  for (int n = std::max(floor, 0); n <= ceiling; ++n)
    if (field_tail(spec, n) <= eps) return n;
  throw TruncationTooSmall("no cutoff up to " + std::to_string(ceiling) + " holds " + spec.to_string() +
                           " within tolerance " + text::format_real(eps));
}

namespace detail {

inline Ensemble pure_ensemble(CompositeSpace space, const ComplexVector& v) {
  return Ensemble(std::move(space), {1.0}, {v / v.norm()});
}

inline ComplexVector kron_vec(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

}  // namespace detail

/// Build a field spec on `modes` (1 or 2) modes with cutoff n_max.
inline FieldState build_field(const FieldSpec& spec, int modes, int n_max, double eps = kDefaultTruncEps) {
  if (modes != 1 && modes != 2) throw DimensionMismatch("build_field: modes must be 1 or 2");
  if (spec.kind != FieldKind::thermal && spec.modes() != modes) {
    throw DimensionMismatch("field " + spec.to_string() + " is a " + std::to_string(spec.modes()) +
                            "-mode state but the picture has " + std::to_string(modes) + " mode(s)");
  }
  const CompositeSpace space = modes == 1 ? one_mode_space(n_max) : two_mode_space(n_max);
  switch (spec.kind) {
    case FieldKind::fock:
      if (modes == 1) return {Ensemble(fock_state(spec.n, n_max)), 0.0, 1};
      return {Ensemble(fock_state(spec.n, spec.m, n_max)), 0.0, 2};
    case FieldKind::eta: return {Ensemble(eta_state(spec.n, spec.m, n_max)), 0.0, 2};
    case FieldKind::rho_nm: {
      const DensityMatrix rho = rho_nm_state(spec.n, spec.m, n_max);
      return {Ensemble::from_density(rho, 0.0), 0.0, 1};
    }
    case FieldKind::coherent: {
      const ModeState a = coherent_state(spec.alpha, n_max, eps);
      if (modes == 1) return {detail::pure_ensemble(space, a.amplitudes), a.discarded, 1};
      const ModeState b = coherent_state(spec.beta, n_max, eps);
      const double lost = 1.0 - (1.0 - a.discarded) * (1.0 - b.discarded);
      detail::check_tail(lost, eps, "coherent pair", n_max);
      return {detail::pure_ensemble(space, detail::kron_vec(a.amplitudes, b.amplitudes)), lost, 2};
    }
    case FieldKind::squeezed: {
      const ModeState a = squeezed_vacuum(spec.xi, n_max, eps);
      return {detail::pure_ensemble(space, a.amplitudes), a.discarded, 1};
    }
    case FieldKind::squeezed_pair: {
      const ModeState a = squeezed_vacuum(spec.xi, n_max, eps);
      const ModeState b = squeezed_vacuum(-spec.xi, n_max, eps);
      const double lost = 1.0 - (1.0 - a.discarded) * (1.0 - b.discarded);
      detail::check_tail(lost, eps, "squeezed pair", n_max);
      return {detail::pure_ensemble(space, detail::kron_vec(a.amplitudes, b.amplitudes)), lost, 2};
    }
    case FieldKind::tmss: {
      double lost = 0.0;
      const StateVector s = two_mode_squeezed(spec.xi, n_max, eps, &lost);
      return {Ensemble(s), lost, 2};
    }
    case FieldKind::thermal: {
      const ModeMixture p = thermal_populations(spec.nbar, n_max, eps);
      if (modes == 1) {
        std::vector<double> w;
        std::vector<ComplexVector> s;
        for (int k = 0; k <= n_max; ++k) {
          if (p.populations(k) == 0.0) continue;
          w.push_back(p.populations(k));
          s.push_back(fock_state(k, n_max).amplitudes());
        }
        return {Ensemble(space, std::move(w), std::move(s)), p.discarded, 1};
      }
      const double lost = 1.0 - (1.0 - p.discarded) * (1.0 - p.discarded);
      detail::check_tail(lost, eps, "thermal pair", n_max);
      std::vector<double> w;
      std::vector<ComplexVector> s;
      for (int a = 0; a <= n_max; ++a)
        for (int b = 0; b <= n_max; ++b) {
          const double weight = p.populations(a) * p.populations(b);
          if (weight == 0.0) continue;
          w.push_back(weight);
          s.push_back(fock_state(a, b, n_max).amplitudes());
        }
      return {Ensemble(space, std::move(w), std::move(s)), lost, 2};
    }
  }
  throw ConfigError("build_field: unhandled field kind");
}

/// Atoms uncorrelated with the field: |atoms> (x) field, factors [a1, a2, modes...].
inline Ensemble assemble_initial(const AtomicState& atoms, const FieldState& field) {
  if (atoms.vector.size() != 4) throw DimensionMismatch("assemble_initial: atomic state must have 4 amplitudes");
  std::vector<Index> dims{2, 2};
  for (Index d : field.state.space().factor_dims()) dims.push_back(d);
  CompositeSpace space(std::move(dims));
  std::vector<ComplexVector> states;
  states.reserve(field.state.size());
  for (const auto& f : field.state.states()) states.push_back(detail::kron_vec(atoms.vector, f));
  return Ensemble(std::move(space), field.state.weights(), std::move(states));
}

}  // namespace twomode

#endif  // TWOMODE_FIELD_STATES_HPP
