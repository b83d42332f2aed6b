//
// Copyright 2026 The SmoothCert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Special functions and variate generators shared by the rest of the library.

#ifndef SMOOTHCERT_SPECIAL_HPP_
#define SMOOTHCERT_SPECIAL_HPP_

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "smoothcert/error.hpp"
#include "smoothcert/random.hpp"

namespace smoothcert {

// A real number in [0, 1]. Construction validates the range.
class Probability {
 public:
  constexpr Probability() = default;
  explicit Probability(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw DomainError("probability out of [0,1]: " + std::to_string(value));
    }
  }
  constexpr double value() const { return value_; }
  constexpr operator double() const { return value_; }  // NOLINT

 private:
  double value_ = 0.0;
};

// Standard normal CDF. Saturates to exactly 0 or 1 far in the tails.
inline double std_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

namespace internal {

// Lower-tail quantile for p in (0, 0.5]: rational initial guess followed by
// two Halley corrections against erfc.
inline double LowerNormalQuantile(double p) {
  static constexpr std::array<double, 6> a = {-3.969683028665376e+01, 2.209460984245205e+02,
                                              -2.759285104469687e+02, 1.383577518672690e+02,
                                              -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b = {-5.447609879822406e+01, 1.615858368580409e+02,
                                              -1.556989798598866e+02, 6.680131188771972e+01,
                                              -1.328068155288572e+01};
  static constexpr std::array<double, 6> c = {-7.784894002430293e-03, -3.223964580411365e-01,
                                              -2.400758277161838e+00, -2.549732539343734e+00,
                                              4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d = {7.784695709041462e-03, 3.224671290700398e-01,
                                              2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLowBreak = 0.02425;

  double x;
  if (p < kLowBreak) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double sqrt_2pi = std::sqrt(2.0 * std::numbers::pi);
  for (int step = 0; step < 2; ++step) {
    const double e = std_normal_cdf(x) - p;
    const double u = e * sqrt_2pi * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

}  // namespace internal

// Inverse of std_normal_cdf on the open interval (0, 1).
inline double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("std_normal_quantile requires 0 < p < 1, got " + std::to_string(p));
  }
  if (p == 0.5) return 0.0;
  // 1 - p is exact for p >= 0.5, so reflecting keeps Q(p) = -Q(1 - p) exact.
  if (p > 0.5) return -internal::LowerNormalQuantile(1.0 - p);
  return internal::LowerNormalQuantile(p);
}

// Natural log of the gamma function for x > 0.
inline double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma requires x > 0, got " + std::to_string(x));
  }
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);  // reentrant: std::lgamma writes signgam
#else
  return std::lgamma(x);
#endif
}

namespace internal {

// Modified Lentz evaluation of the incomplete-beta continued fraction.
inline double BetaContinuedFraction(double a, double b, double x) {
  constexpr int kMaxIterations = 20000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  return h;
}

inline void CheckBetaShape(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("incomplete beta requires a, b > 0");
  }
}

}  // namespace internal

// Regularized incomplete beta function I_x(a, b).
inline double reg_incomplete_beta(double a, double b, double x) {
  internal::CheckBetaShape(a, b);
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("incomplete beta requires 0 <= x <= 1, got " + std::to_string(x));
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = log_gamma(a + b) - log_gamma(a) - log_gamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * internal::BetaContinuedFraction(a, b, x) / a;
  }
  return 1.0 - front * internal::BetaContinuedFraction(b, a, 1.0 - x) / b;
}

// Inverse of reg_incomplete_beta in x, by bracketed bisection on [0, 1].
// Returns the lower end of the final bracket, so I_x(a, b) <= p.
inline double inverse_reg_incomplete_beta(double a, double b, double p) {
  internal::CheckBetaShape(a, b);
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("inverse incomplete beta requires 0 <= p <= 1");
  }
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 1100; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double value = reg_incomplete_beta(a, b, mid);
    if (value == p) return mid;
    if (value < p) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * hi) break;
  }
  return lo;
}

// Gamma(shape, scale) variate. Marsaglia-Tsang squeeze for shape >= 1; smaller
// shapes are boosted to shape + 1 and corrected by U^(1/shape).
inline double gamma_sample(double shape, double scale, RandomStream& rng) {
  if (!(shape > 0.0) || !(scale > 0.0)) {
    throw DomainError("gamma_sample requires positive shape and scale");
  }
  if (shape < 1.0) {
    const double boosted = gamma_sample(shape + 1.0, scale, rng);
    return boosted * std::pow(rng.uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v * scale;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v * scale;
  }
}

}  // namespace smoothcert

#endif  // SMOOTHCERT_SPECIAL_HPP_
