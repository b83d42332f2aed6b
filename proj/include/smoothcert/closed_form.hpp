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

// Closed-form certificates for Gaussian (l2) and Laplacian (l1) smoothing and
// the exact binomial lower confidence bound on p0.

#ifndef SMOOTHCERT_CLOSED_FORM_HPP_
#define SMOOTHCERT_CLOSED_FORM_HPP_

#include <cmath>
#include <cstdint>
#include <string>

#include "smoothcert/error.hpp"
#include "smoothcert/special.hpp"

namespace smoothcert {

struct BinomialEvidence {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;

  void validate() const {
    if (trials == 0) throw DomainError("binomial evidence needs at least one trial");
    if (successes > trials) throw DomainError("successes exceed trials");
  }
  double fraction() const { return static_cast<double>(successes) / static_cast<double>(trials); }
};

// One-sided Clopper-Pearson lower bound: the alpha quantile of
// Beta(s, n - s + 1). Coverage is at least 1 - alpha.
inline double clopper_pearson_lower(const BinomialEvidence& evidence, double alpha) {
  evidence.validate();
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (evidence.successes == 0) return 0.0;
  const double s = static_cast<double>(evidence.successes);
  const double n = static_cast<double>(evidence.trials);
  return inverse_reg_incomplete_beta(s, n - s + 1.0, alpha);
}

// A closed-form value and whether it was clamped at a limit.
struct SaturatingValue {
  double value = 0.0;
  bool saturated = false;
};

// Radii beyond this are reported as this value with saturated = true.
inline constexpr double kDefaultMaxRadius = 1e6;

struct RadiusValue {
  double radius = 0.0;
  bool certifiable = false;
  bool saturated = false;
};

namespace internal {

inline void CheckProbabilityArg(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
  }
}

inline RadiusValue CappedRadius(double radius, double max_radius) {
  RadiusValue out;
  out.saturated = !(std::fabs(radius) <= max_radius);
  out.radius = out.saturated ? std::copysign(max_radius, radius) : radius;
  out.certifiable = out.radius > 0.0;
  return out;
}

}  // namespace internal

// Phi(Phi^-1(p0) - r / sigma).
inline SaturatingValue cohen_bound(double p0, double sigma, double r) {
  internal::CheckProbabilityArg(p0, "p0");
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  if (!(r >= 0.0)) throw DomainError("r must be >= 0");
  if (p0 == 0.0 || p0 == 1.0) return {p0, true};
  if (r == 0.0) return {p0, false};
  return {std_normal_cdf(std_normal_quantile(p0) - r / sigma), false};
}

// sigma Phi^-1(p0); negative when no radius can be certified.
inline RadiusValue cohen_radius(double p0, double sigma, double max_radius = kDefaultMaxRadius) {
  internal::CheckProbabilityArg(p0, "p0");
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  if (p0 == 1.0) return {max_radius, true, true};
  if (p0 == 0.0) return {-max_radius, false, true};
  return internal::CappedRadius(sigma * std_normal_quantile(p0), max_radius);
}

// Exact dual bound for Laplace(b) smoothing against an l1 ball of radius r.
// Above the threshold 1 - exp(-r/b) / 2 the optimal multiplier exceeds
// exp(r/b); between 1/2 and the threshold it is interior; below 1/2 it
// sits at exp(-r/b) and the bound is p0 exp(-r/b). The three pieces agree
// at their junctions.
inline double teng_bound(double p0, double b, double r) {
  internal::CheckProbabilityArg(p0, "p0");
  if (!(b > 0.0)) throw DomainError("b must be positive");
  if (!(r >= 0.0)) throw DomainError("r must be >= 0");
  const double threshold = 1.0 - 0.5 * std::exp(-r / b);
  if (p0 >= threshold) return 1.0 - std::exp(r / b) * (1.0 - p0);
  if (p0 > 0.5) return 0.5 * std::exp(-r / b - std::log(2.0 * (1.0 - p0)));
  return p0 * std::exp(-r / b);
}

// -b ln(2 (1 - p0)); certifiable only for p0 > 1/2.
inline RadiusValue teng_radius(double p0, double b, double max_radius = kDefaultMaxRadius) {
  internal::CheckProbabilityArg(p0, "p0");
  if (!(b > 0.0)) throw DomainError("b must be positive");
  if (p0 == 1.0) return {max_radius, true, true};
  RadiusValue out = internal::CappedRadius(-b * std::log(2.0 * (1.0 - p0)), max_radius);
  out.certifiable = p0 > 0.5 && out.radius > 0.0;
  return out;
}

// sigma / 2 (Phi^-1(pA) - Phi^-1(pB)) for the top-two class probabilities.
inline RadiusValue gaussian_bilateral_radius(double p_a, double p_b, double sigma,
                                             double max_radius = kDefaultMaxRadius) {
  internal::CheckProbabilityArg(p_a, "pA");
  internal::CheckProbabilityArg(p_b, "pB");
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  if (p_a <= p_b) return {0.0, false, false};
  if (p_a == 1.0 || p_b == 0.0) return {max_radius, true, true};
  return internal::CappedRadius(
      0.5 * sigma * (std_normal_quantile(p_a) - std_normal_quantile(p_b)), max_radius);
}

}  // namespace smoothcert

#endif  // SMOOTHCERT_CLOSED_FORM_HPP_
