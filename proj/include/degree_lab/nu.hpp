// Copyright 2026 The degree-lab Authors
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

#pragma once

// The concentration function nu(n, k): the unique positive zero of
//
//   f(x) = x ln k + x - (x + 1/2) ln x - (x - 1) ln n,
//
// which locates the maximum load of k balls thrown into n bins, together with
// the auxiliary functions K and g whose level sets characterise it:
//
//   K(nu(n, k)) = ln k,   g(nu_hat(n)) = ln n,   nu_hat(n) = nu(n, n).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace degree_lab {

inline double f_eval(double x, double n, double k) {
  if (!(x > 0)) throw std::invalid_argument("f_eval: x must be positive");
  return x * std::log(k) + x - (x + 0.5) * std::log(x) - (x - 1) * std::log(n);
}

inline double K_eval(double x, double n) {
  if (!(x > 0)) throw std::invalid_argument("K_eval: x must be positive");
  return (1 + 1 / (2 * x)) * std::log(x) + (1 - 1 / x) * std::log(n) - 1;
}

inline double g_eval(double x) {
  if (!(x > 0)) throw std::invalid_argument("g_eval: x must be positive");
  return (x + 0.5) * std::log(x) - x;
}

struct SolverOptions {
  double tol = 1e-12;        // relative bracket width and absolute |f| target
  int max_doublings = 64;    // cap on upper-bracket expansion
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
// Bisection on [1, hi]. f(1) = 1 + ln k > 0 and f is concave on [1, inf)
// with f -> -inf, so the bracket always holds exactly one zero.
inline double solve_nu(double n, double k, const SolverOptions& opt) {
  auto f = [&](double x) { return f_eval(x, n, k); };
  double lo = 1;
  double f_lo = f(lo);
  double hi = 2;
  double f_hi = f(hi);
  int doublings = 0;
  while (f_hi > 0) {
    if (++doublings > opt.max_doublings) {
      throw SolverError("nu: no sign change below " + std::to_string(hi) + " for n=" +
                        std::to_string(n) + ", k=" + std::to_string(k));
    }
    lo = hi;
    f_lo = f_hi;
    hi *= 2;
    f_hi = f(hi);
  }
  if (f_hi == 0) return hi;
  for (;;) {
    const double mid = lo + (hi - lo) / 2;
    if (!(mid > lo && mid < hi)) break;  // bracket exhausted at double precision
    const double f_mid = f(mid);
    if (f_mid == 0) return mid;
    if (f_mid > 0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
    if (hi - lo <= opt.tol * lo && std::min(std::abs(f_lo), std::abs(f_hi)) <= opt.tol) break;
  }
  return std::abs(f_hi) < std::abs(f_lo) ? hi : lo;
}

inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}
}  // namespace detail

/// nu(n, k) for real n >= 1, k >= 1. Always > 1.
inline double nu(double n, double k, const SolverOptions& opt = {}) {
  detail::require_finite(n, "nu: n");
  detail::require_finite(k, "nu: k");
  if (n < 1 || k < 1) throw std::invalid_argument("nu: requires n >= 1 and k >= 1");
  if (!(opt.tol > 0)) throw std::invalid_argument("nu: tolerance must be positive");
  return detail::solve_nu(n, k, opt);
}

/// nu_hat(n) = nu(n, n). Defined for every n > 1/e because g is a strictly
/// increasing bijection onto the reals; that range includes e^{g(2)} < 1.
inline double nu_hat(double n, const SolverOptions& opt = {}) {
  detail::require_finite(n, "nu_hat: n");
  if (!(n > std::exp(-1.0))) throw std::invalid_argument("nu_hat: requires n > 1/e");
  if (!(opt.tol > 0)) throw std::invalid_argument("nu_hat: tolerance must be positive");
  return detail::solve_nu(n, n, opt);
}

/// Closed integer interval [lo, hi].
struct IntInterval {
  std::int64_t lo = 0;
  std::int64_t hi = -1;

  bool contains(std::int64_t v) const { return lo <= v && v <= hi; }
  std::int64_t count() const { return hi < lo ? 0 : hi - lo + 1; }
  IntInterval shifted(std::int64_t by) const { return {lo + by, hi + by}; }
  friend bool operator==(const IntInterval&, const IntInterval&) = default;
};

/// [floor(centre - eps), floor(centre + eps)].
inline IntInterval interval_around(double centre, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("interval: eps must be positive");
  return {static_cast<std::int64_t>(std::floor(centre - eps)),
          static_cast<std::int64_t>(std::floor(centre + eps))};
}

/// Whp range of the maximum load of k balls in n bins.
inline IntInterval predicted_interval(double n, double k, double eps) {
  return interval_around(nu(n, k), eps);
}

enum class Regime { I, II, III, OutOfScope };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::I: return "I";
    case Regime::II: return "II";
    case Regime::III: return "III";
    case Regime::OutOfScope: return "out-of-scope";
  }
  return "?";
}

/// Finite-n stand-ins for the asymptotic regime hypotheses.
struct RegimeGates {
  double a = 1.0;                  // m <= n/2 + a n^{2/3} is the sparse regime
  double s_max_fraction = 1.0 / 20; // s = o(n) read as s <= n/20
  double delta0 = 0.05;            // alpha = 2m/n in (1 + delta0, 2 - delta0)
};

struct RegimeSpec {
  double n = 0;
  double m = 0;
  Regime regime = Regime::I;

  double s() const { return m - n / 2; }
  double alpha() const { return 2 * m / n; }
};

struct TwoPointPrediction {
  std::int64_t h = 0;
  IntInterval interval;
  Regime regime = Regime::I;
};

/// h and {h, h+1} for the three sparse regimes.
inline TwoPointPrediction two_point(const RegimeSpec& spec, const RegimeGates& gates = {}) {
  if (!(spec.n >= 1) || !(spec.m >= 0)) {
    throw std::invalid_argument("two_point: need n >= 1 and m >= 0");
  }
  const double n = spec.n;
  const double third = 1.0 / 3;
  TwoPointPrediction out;
  out.regime = spec.regime;
  switch (spec.regime) {
    case Regime::I:
      if (spec.m > n / 2 + gates.a * std::cbrt(n * n)) {
        throw std::invalid_argument("two_point: regime I needs m <= n/2 + A n^{2/3}");
      }
      if (spec.m < 0.5) throw std::invalid_argument("two_point: regime I needs 2m >= 1");
      out.h = static_cast<std::int64_t>(std::floor(nu(n, 2 * spec.m) - third));
      break;
    case Regime::II: {
      const double s = spec.s();
      if (!(s > 0) || s > gates.s_max_fraction * n) {
        throw std::invalid_argument("two_point: regime II needs 0 < s <= n/20, got s = " +
                                    std::to_string(s));
      }
      out.h = std::max(static_cast<std::int64_t>(std::floor(nu_hat(s) + 2 * third)),
                       static_cast<std::int64_t>(std::floor(nu_hat(n) - third)));
      break;
    }
    case Regime::III: {
      const double alpha = spec.alpha();
      if (!(alpha > 1 && alpha < 2)) {
        throw std::invalid_argument("two_point: regime III needs 2m/n in (1, 2)");
      }
      out.h = static_cast<std::int64_t>(std::floor(nu_hat(n) + 2 * third));
      break;
    }
    case Regime::OutOfScope:
      throw std::invalid_argument("two_point: no prediction outside regimes I-III");
  }
  out.interval = {out.h, out.h + 1};
  return out;
}

}  // namespace degree_lab
