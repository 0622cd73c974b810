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

#include "degree_lab/nu.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <limits>
#include <vector>

namespace degree_lab {
namespace {

constexpr double kTol = 1e-12;

// High-precision reference values computed offline with 30-digit arithmetic.
constexpr double kNu1e4Half = 5.7666934827616144639;      // nu(1e4, 5e3)
constexpr double kNuHat1e5 = 8.8392781303688995705;
constexpr double kNuHat1e6 = 9.8458003100308184128;
constexpr double kNuHat2e5 = 9.1470672113314178029;
constexpr double kNu10x3 = 2.0748581770637281381;         // nu(10, 3)
constexpr double kNuHat1e12 = 15.238717460600807951;

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> out;
  for (int i = 0; i < points; ++i) {
    out.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (points - 1)));
  }
  return out;
}

TEST(FEval, Examples) {
  for (double k : {1.0, 7.0, 1e6}) EXPECT_DOUBLE_EQ(f_eval(1, 123.0, k), 1 + std::log(k));
  for (double x : {0.3, 2.0, 11.5}) {
    const double n = 4321;
    EXPECT_NEAR(f_eval(x, n, n), x - (x + 0.5) * std::log(x) + std::log(n), 1e-12);
  }
  const double n = std::exp(g_eval(3));
  EXPECT_NEAR(f_eval(3, n, n), 0, 1e-13);
  EXPECT_THROW(f_eval(0, 2, 2), std::invalid_argument);
  EXPECT_THROW(f_eval(-1, 2, 2), std::invalid_argument);
}

TEST(GAndK, Examples) {
  EXPECT_DOUBLE_EQ(g_eval(1), -1);
  EXPECT_DOUBLE_EQ(K_eval(1, 1e9), -1);
  EXPECT_DOUBLE_EQ(g_eval(3), 3.5 * std::log(3.0) - 3);
  EXPECT_THROW(g_eval(0), std::invalid_argument);
  EXPECT_THROW(K_eval(-2, 10), std::invalid_argument);
}

TEST(GAndK, RelationToF) {
  for (double x : {0.5, 1.5, 4.0, 17.0}) {
    for (double n : {3.0, 1e5}) {
      for (double k : {2.0, 1e3}) {
        EXPECT_NEAR(K_eval(x, n) - std::log(k), -f_eval(x, n, k) / x, 1e-12);
      }
      EXPECT_NEAR(f_eval(x, n, n), std::log(n) - g_eval(x), 1e-12);
    }
  }
}

TEST(Nu, InvertsG) {
  EXPECT_NEAR(nu_hat(std::exp(g_eval(3))), 3, 1e-9);
  EXPECT_NEAR(nu(std::exp(g_eval(3)), std::exp(g_eval(3))), 3, 1e-9);
  EXPECT_NEAR(nu_hat(std::exp(g_eval(2))), 2, 1e-9);
  EXPECT_NEAR(nu_hat(std::exp(g_eval(5))), 5, 1e-9);
  EXPECT_LT(std::exp(g_eval(2)), 1.0);  // below the nu domain, inside the nu_hat domain
}

TEST(Nu, ReferenceValues) {
  EXPECT_NEAR(nu(1e4, 5e3), kNu1e4Half, 1e-10);
  EXPECT_NEAR(nu_hat(1e5), kNuHat1e5, 1e-10);
  EXPECT_NEAR(nu_hat(1e6), kNuHat1e6, 1e-10);
  EXPECT_NEAR(nu_hat(2e5), kNuHat2e5, 1e-10);
  EXPECT_NEAR(nu(10, 3), kNu10x3, 1e-10);
  EXPECT_NEAR(nu_hat(1e12), kNuHat1e12, 1e-10);
}

TEST(Nu, Residuals) {
  const double x = nu(1e4, 5e3);
  EXPECT_NEAR(K_eval(x, 1e4), std::log(5e3), 10 * kTol);
  EXPECT_LE(std::abs(f_eval(x, 1e4, 5e3)), kTol);
  const double y = nu_hat(1e6);
  EXPECT_NEAR(g_eval(y), std::log(1e6), 10 * kTol);
}

TEST(Nu, IdentitiesOnGrid) {
  for (double n : log_grid(10, 1e12, 40)) {
    for (double frac : {1e-6, 1e-3, 0.1, 0.5, 1.0, 3.0}) {
      const double k = std::max(1.0, frac * n);
      const double x = nu(n, k);
      EXPECT_GT(x, 1);
      EXPECT_NEAR(K_eval(x, n), std::log(k), 10 * kTol) << n << ' ' << k;
    }
    EXPECT_NEAR(g_eval(nu_hat(n)), std::log(n), 10 * kTol) << n;
  }
}

TEST(Nu, GreaterThanOne) {
  for (double n : log_grid(10, 1e12, 10)) {
    for (double k : log_grid(1, n, 10)) EXPECT_GT(nu(n, k), 1) << n << ' ' << k;
  }
  EXPECT_GT(nu(1, 1), 1);
}

TEST(Nu, MonotoneInK) {
  for (double n : {1e2, 1e5, 1e9}) {
    for (double k : {1.0, 10.0, 1e3, n / 2, n}) EXPECT_LT(nu(n, k), nu(n, k + 1)) << n << ' ' << k;
  }
}

TEST(NuHat, StrictlyIncreasing) {
  EXPECT_LT(nu_hat(1e3), nu_hat(1e6));
  double prev = nu_hat(2);
  for (double n : log_grid(3, 1e12, 60)) {
    const double cur = nu_hat(n);
    EXPECT_GT(cur, prev);
    prev = cur;
  }
}

TEST(NuHat, SmallCubeRootLoad) {
  const double n = 1e9;
  EXPECT_LE(nu(n, std::floor(std::cbrt(n))), 5.0 / 3 + 0.05);
}

TEST(NuHat, ShiftByRootNIsSmall) {
  const double n = 1e9;
  EXPECT_LT(std::abs(nu(n, n + std::floor(std::sqrt(n))) - nu(n, n)), 0.05);
}

TEST(NuHat, DominatesMeanLoad) {
  const double n = 1e9;
  EXPECT_GE(nu(n, n) * n / n, 10);
}

// The leading-order ratio and the doubling difference both converge like
// 1/log log n, so at desk-scale n they are far from their limits. These
// checks pin the trend rather than the limit.
TEST(NuHat, LeadingOrderTrend) {
  auto ratio = [](double n) { return nu_hat(n) * std::log(std::log(n)) / std::log(n); };
  EXPECT_GT(ratio(1e6), ratio(1e12));
  EXPECT_GT(ratio(1e12), ratio(1e100));
  EXPECT_GT(ratio(1e100), 1.0);
  EXPECT_GT(ratio(1e100), ratio(1e300));
}

TEST(NuHat, DoublingDifferenceShrinks) {
  auto diff = [](double n) { return nu_hat(2 * n) - nu_hat(n); };
  EXPECT_GT(diff(1e3), diff(1e9));
  EXPECT_GT(diff(1e9), diff(1e100));
  EXPECT_GT(diff(1e100), 0);
}

TEST(Nu, BitwiseDeterministic) {
  for (double n : {17.0, 1e5, 3e11}) {
    EXPECT_EQ(std::bit_cast<std::uint64_t>(nu(n, n / 3 + 1)),
              std::bit_cast<std::uint64_t>(nu(n, n / 3 + 1)));
    EXPECT_EQ(std::bit_cast<std::uint64_t>(nu_hat(n)), std::bit_cast<std::uint64_t>(nu_hat(n)));
  }
}

TEST(Nu, RejectsBadInput) {
  EXPECT_THROW(nu(0.5, 3), std::invalid_argument);
  EXPECT_THROW(nu(10, 0.5), std::invalid_argument);
  EXPECT_THROW(nu(std::numeric_limits<double>::quiet_NaN(), 3), std::invalid_argument);
  EXPECT_THROW(nu(10, std::numeric_limits<double>::infinity()), std::invalid_argument);
  EXPECT_THROW(nu(10, 3, {0.0, 64}), std::invalid_argument);
  EXPECT_THROW(nu_hat(0.3), std::invalid_argument);
  EXPECT_THROW(nu(1e300, 1e300, {1e-12, 2}), SolverError);
}

TEST(Interval, FloorArithmetic) {
  EXPECT_EQ(interval_around(4.5, 1.0 / 3), (IntInterval{4, 4}));
  EXPECT_EQ(interval_around(4.5, 0.6), (IntInterval{3, 5}));
  EXPECT_EQ(interval_around(4.5, 0.6).count(), 3);
  EXPECT_THROW(interval_around(4.5, 0), std::invalid_argument);
  EXPECT_EQ(predicted_interval(1e5, 1e5, 0.25), interval_around(kNuHat1e5, 0.25));
  EXPECT_EQ(predicted_interval(1e5, 1e5, 0.25), (IntInterval{8, 9}));
  EXPECT_TRUE((IntInterval{8, 9}).contains(9));
  EXPECT_FALSE((IntInterval{8, 9}).contains(10));
  EXPECT_EQ((IntInterval{8, 9}).shifted(1), (IntInterval{9, 10}));
}

TEST(Interval, ContainsShiftedFloorWhenEpsAtLeastThird) {
  for (double n : log_grid(10, 1e12, 50)) {
    const auto iv = predicted_interval(n, n, 1.0 / 3);
    EXPECT_TRUE(iv.contains(static_cast<std::int64_t>(std::floor(nu_hat(n) - 1.0 / 3)))) << n;
  }
}

TEST(TwoPoint, RegimeI) {
  const auto p = two_point({1e5, 5e4, Regime::I});
  EXPECT_EQ(p.h, static_cast<std::int64_t>(std::floor(kNuHat1e5 - 1.0 / 3)));
  EXPECT_EQ(p.h, 8);
  EXPECT_EQ(p.interval, (IntInterval{8, 9}));
  EXPECT_THROW(two_point({1e5, 1e5, Regime::I}), std::invalid_argument);
  EXPECT_THROW(two_point({1e5, 0, Regime::I}), std::invalid_argument);
}

TEST(TwoPoint, RegimeII) {
  const double n = 1e6;
  const double s = std::pow(n, 0.75);
  const auto p = two_point({n, n / 2 + s, Regime::II});
  const auto expected = std::max(static_cast<std::int64_t>(std::floor(nu_hat(s) + 2.0 / 3)),
                                 static_cast<std::int64_t>(std::floor(kNuHat1e6 - 1.0 / 3)));
  EXPECT_EQ(p.h, expected);
  EXPECT_EQ(p.interval.count(), 2);
  EXPECT_THROW(two_point({n, n / 2 + n, Regime::II}), std::invalid_argument);
  EXPECT_THROW(two_point({n, n / 2, Regime::II}), std::invalid_argument);
}

TEST(TwoPoint, RegimeIII) {
  const auto p = two_point({1e6, 0.75e6, Regime::III});
  EXPECT_EQ(p.h, static_cast<std::int64_t>(std::floor(kNuHat1e6 + 2.0 / 3)));
  EXPECT_EQ(p.interval, (IntInterval{p.h, p.h + 1}));
  EXPECT_THROW(two_point({1e6, 1e6, Regime::III}), std::invalid_argument);
  EXPECT_THROW(two_point({1e6, 1e6, Regime::OutOfScope}), std::invalid_argument);
}

}  // namespace
}  // namespace degree_lab
