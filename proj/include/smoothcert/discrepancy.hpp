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

// The discrepancy term D(lambda pi_0 || pi_delta) = int (lambda pi_0 - pi_delta)_+
// and the dual lower bound
//
//   L = max_{lambda >= 0} { lambda p0 - max_{delta in B} D(lambda pi_0 || pi_delta) }
//
// on the worst-case value of the smoothed classifier over the threat set B.

#ifndef SMOOTHCERT_DISCREPANCY_HPP_
#define SMOOTHCERT_DISCREPANCY_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smoothcert/error.hpp"
#include "smoothcert/family.hpp"
#include "smoothcert/parallel.hpp"
#include "smoothcert/random.hpp"
#include "smoothcert/sampling.hpp"
#include "smoothcert/special.hpp"
#include "smoothcert/threat.hpp"

namespace smoothcert {

enum class WorstDeltaRationale { kL2Boundary, kL1Boundary, kLinfVertex, kLinfViaL2Equivalence };

inline std::string_view to_string(WorstDeltaRationale rationale) {
  switch (rationale) {
    case WorstDeltaRationale::kL2Boundary:
      return "l2_boundary";
    case WorstDeltaRationale::kL1Boundary:
      return "l1_boundary";
    case WorstDeltaRationale::kLinfVertex:
      return "linf_vertex";
    case WorstDeltaRationale::kLinfViaL2Equivalence:
      return "linf_via_l2_equivalence";
  }
  return "?";
}

// The shift at which the discrepancy is maximal over the threat set.
// For kLinfViaL2Equivalence, `effective_threat` is the l2 ball of radius
// sqrt(d) r that the l-infinity problem reduces to; otherwise it equals the
// input threat.
struct WorstDelta {
  std::vector<double> vector;
  WorstDeltaRationale rationale = WorstDeltaRationale::kL2Boundary;
  ThreatModel effective_threat;
};

inline WorstDelta worst_delta(const ThreatModel& threat, const SmoothingFamily& family) {
  const std::size_t d = family.dimension();
  WorstDelta out;
  out.vector.assign(d, 0.0);
  out.effective_threat = threat;
  const auto unsupported = [&]() -> WorstDelta {
    throw UnsupportedError("no worst-case perturbation result for the " +
                           std::string(to_string(threat.norm)) + " threat with the " +
                           std::string(family.name()) +
                           " family; supported pairs are l1 with laplacian/l1_power_tail, l2 "
                           "with gaussian/l2_power_tail, linf with mixed_norm/linf_pure or "
                           "gaussian/l2_power_tail");
  };
  switch (threat.norm) {
    case Norm::kL1:
      if (!family.l1_based()) return unsupported();
      out.vector[0] = threat.radius;
      out.rationale = WorstDeltaRationale::kL1Boundary;
      return out;
    case Norm::kL2:
      if (!family.spherical()) return unsupported();
      out.vector[0] = threat.radius;
      out.rationale = WorstDeltaRationale::kL2Boundary;
      return out;
    case Norm::kLinf:
      if (family.kind() == FamilyKind::kMixedNorm || family.kind() == FamilyKind::kLinfPure) {
        out.vector.assign(d, threat.radius);
        out.rationale = WorstDeltaRationale::kLinfVertex;
        return out;
      }
      if (family.spherical()) {
        out.effective_threat = linf_as_l2(threat, d);
        out.vector[0] = out.effective_threat.radius;
        out.rationale = WorstDeltaRationale::kLinfViaL2Equivalence;
        return out;
      }
      return unsupported();
  }
  return unsupported();
}

// One-sided Hoeffding half-width: with probability >= 1 - alpha the true
// discrepancy lies below (estimate + epsilon), since each summand is in
// [0, lambda].
inline double hoeffding_epsilon(std::size_t n, double lambda, double alpha) {
  if (n == 0) throw DomainError("hoeffding_epsilon requires n >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("hoeffding_epsilon requires 0 < alpha < 1");
  if (!(lambda >= 0.0)) throw DomainError("hoeffding_epsilon requires lambda >= 0");
  return lambda * std::sqrt(std::log(1.0 / alpha) / (2.0 * static_cast<double>(n)));
}

struct DiscrepancyEstimate {
  double mean = 0.0;
  double epsilon = 0.0;
  std::size_t n = 0;
  double lambda = 0.0;
  double alpha = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)

  double upper() const { return mean + epsilon; }
};

// Density ratios pi_delta(z_i) / pi_0(z_i) for z_i ~ pi_0, in sample order.
struct ShiftRatioBatch {
  std::vector<double> ratios;
  SamplerTelemetry telemetry;
};

inline ShiftRatioBatch shift_ratios(const SmoothingFamily& family, std::span<const double> delta,
                                    std::size_t n, const RandomStream& stream,
                                    std::size_t workers = 1) {
  internal::CheckDimension(family, delta.size(), "delta");
  if (n == 0) throw DomainError("discrepancy estimation requires n >= 1");
  const std::size_t d = family.dimension();
  ShiftRatioBatch out;
  out.ratios.resize(n);
  std::vector<SamplerTelemetry> per_block(block_count(n));
  for_each_sample_block(
      family, n, stream, workers,
      [&](std::size_t block, std::size_t first, std::span<const double> points,
          const SamplerTelemetry& telemetry) {
        const std::size_t rows = points.size() / d;
        for (std::size_t i = 0; i < rows; ++i) {
          const auto z = points.subspan(i * d, d);
          const double log_ratio = family.log_kernel(norms_of_difference(z, delta)) -
                                   family.log_kernel(norms_of(z));
          out.ratios[first + i] = std::exp(log_ratio);
        }
        per_block[block] = telemetry;
      });
  for (const auto& t : per_block) out.telemetry += t;
  return out;
}

// Ratios pi_delta / pi_0 at already drawn points, for reusing one batch
// across several shifts.
inline std::vector<double> ratios_for_shift(const SampleBatch& batch,
                                            std::span<const double> delta) {
  internal::CheckDimension(batch.family, delta.size(), "delta");
  std::vector<double> ratios(batch.n);
  for (std::size_t i = 0; i < batch.n; ++i) {
    const auto z = batch.row(i);
    ratios[i] = std::exp(batch.family.log_kernel(norms_of_difference(z, delta)) -
                         batch.family.log_kernel(norms_of(z)));
  }
  return ratios;
}

// Monte Carlo estimate of D(lambda pi_0 || pi_delta) from precomputed ratios.
// Summation runs in sample order, so the result is independent of how the
// ratios were produced.
inline DiscrepancyEstimate estimate_from_ratios(std::span<const double> ratios, double lambda,
                                                double alpha) {
  if (!(lambda >= 0.0)) throw DomainError("lambda must be >= 0");
  CompensatedSum sum;
  CompensatedSum sum_sq;
  for (double ratio : ratios) {
    if (ratio < lambda) {
      const double term = lambda - ratio;
      sum.add(term);
      sum_sq.add(term * term);
    }
  }
  const double n = static_cast<double>(ratios.size());
  DiscrepancyEstimate est;
  est.n = ratios.size();
  est.lambda = lambda;
  est.alpha = alpha;
  est.mean = std::clamp(sum.value() / n, 0.0, lambda);
  est.epsilon = hoeffding_epsilon(ratios.size(), lambda, alpha);
  const double variance = std::max(sum_sq.value() / n - est.mean * est.mean, 0.0);
  est.std_error = std::sqrt(variance / n);
  return est;
}

inline DiscrepancyEstimate discrepancy_mc(const SmoothingFamily& family,
                                          std::span<const double> delta, double lambda,
                                          std::size_t n, double alpha, const RandomStream& rng,
                                          std::size_t workers = 1) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("discrepancy_mc requires 0 < alpha < 1");
  if (!(lambda >= 0.0)) throw DomainError("discrepancy_mc requires lambda >= 0");
  const auto batch = shift_ratios(family, delta, n, rng, workers);
  return estimate_from_ratios(batch.ratios, lambda, alpha);
}

// Exact discrepancy between N(0, sigma^2 I) scaled by lambda and
// N(delta, sigma^2 I), ||delta||_2 = shift_norm. The region where
// lambda pi_0 >= pi_delta is a half-space, which gives
//   lambda Phi(s / 2 sigma + sigma ln(lambda) / s) - Phi(-s / 2 sigma + sigma ln(lambda) / s).
inline double discrepancy_gaussian_closed_form(double sigma, double shift_norm, double lambda) {
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  if (!(shift_norm >= 0.0)) throw DomainError("shift norm must be >= 0");
  if (!(lambda >= 0.0)) throw DomainError("lambda must be >= 0");
  if (lambda == 0.0) return 0.0;
  if (shift_norm == 0.0) return std::max(lambda - 1.0, 0.0);
  const double half = shift_norm / (2.0 * sigma);
  const double offset = sigma * std::log(lambda) / shift_norm;
  const double value = lambda * std_normal_cdf(half + offset) - std_normal_cdf(-half + offset);
  return std::clamp(value, std::max(lambda - 1.0, 0.0), lambda);
}

// Exact discrepancy for Laplace(b) smoothing at delta = [r, 0, ..., 0]; the
// untouched coordinates cancel so this is a one-dimensional integral. The
// log-ratio |z| - |z - r| is monotone in z, so lambda pi_0 >= pi_delta holds
// on a half-line z <= a with a = (b ln(lambda) + r) / 2 clipped to [0, r].
inline double discrepancy_laplace_closed_form(double b, double r, double lambda) {
  if (!(b > 0.0)) throw DomainError("b must be positive");
  if (!(r >= 0.0)) throw DomainError("r must be >= 0");
  if (!(lambda >= 0.0)) throw DomainError("lambda must be >= 0");
  if (lambda == 0.0) return 0.0;
  if (r == 0.0) return std::max(lambda - 1.0, 0.0);
  const double b_log_lambda = b * std::log(lambda);
  if (b_log_lambda >= r) return lambda - 1.0;
  if (b_log_lambda <= -r) return 0.0;
  const double a = 0.5 * (b_log_lambda + r);
  // lambda F(a) - F(a - r) with F the Laplace CDF, a in (0, r).
  const double value = lambda * (1.0 - 0.5 * std::exp(-a / b)) - 0.5 * std::exp((a - r) / b);
  return std::clamp(value, std::max(lambda - 1.0, 0.0), lambda);
}

// Candidate values of the Lagrange multiplier, ascending.
struct LambdaGrid {
  double start = 1e-2;
  double end = 1e4;
  std::size_t count = 200;
  bool log_spaced = true;

  void validate() const {
    if (count == 0) throw DomainError("lambda grid must be nonempty");
    if (!(start >= 0.0) || !(end >= start) || !std::isfinite(end)) {
      throw DomainError("lambda grid needs 0 <= start <= end < inf");
    }
    if (log_spaced && !(start > 0.0)) throw DomainError("log-spaced lambda grid needs start > 0");
  }

  std::vector<double> values() const {
    validate();
    std::vector<double> out(count);
    if (count == 1) {
      out[0] = start;
      return out;
    }
    for (std::size_t i = 0; i < count; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(count - 1);
      if (log_spaced) {
        out[i] = std::exp(std::log(start) + t * (std::log(end) - std::log(start)));
      } else {
        out[i] = start + t * (end - start);
      }
    }
    out.front() = start;
    out.back() = end;
    return out;
  }
};

struct LambdaTracePoint {
  double lambda = 0.0;
  double d_mean = 0.0;
  double epsilon = 0.0;
  double bound = 0.0;
  double std_error = 0.0;
};

struct DualBoundResult {
  double bound = 0.0;
  double lambda_star = 0.0;
  std::size_t argmax = 0;
  std::vector<LambdaTracePoint> trace;
  WorstDelta delta;
  std::size_t n = 0;
  double alpha_mc = 0.0;
  SamplerTelemetry telemetry;
};

// Evaluates lambda p0 - (D_hat + epsilon) over the grid using one shared
// sample batch. Each grid point gets confidence alpha_mc / |grid|, so by the
// union bound every point (and hence the maximum) is a valid lower bound
// with probability >= 1 - alpha_mc, given that p0_lower is valid.
inline DualBoundResult dual_bound_from_ratios(double p0_lower, std::span<const double> ratios,
                                              std::span<const double> lambdas, double alpha_mc) {
  if (lambdas.empty()) throw DomainError("lambda grid must be nonempty");
  const double alpha_each = alpha_mc / static_cast<double>(lambdas.size());
  DualBoundResult out;
  out.n = ratios.size();
  out.alpha_mc = alpha_mc;
  out.trace.reserve(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const auto est = estimate_from_ratios(ratios, lambdas[i], alpha_each);
    const double bound = lambdas[i] * p0_lower - est.mean - est.epsilon;
    out.trace.push_back({lambdas[i], est.mean, est.epsilon, bound, est.std_error});
    if (i == 0 || bound > out.bound) {
      out.bound = bound;
      out.lambda_star = lambdas[i];
      out.argmax = i;
    }
  }
  return out;
}

inline DualBoundResult dual_lower_bound(double p0_lower, const SmoothingFamily& family,
                                        const ThreatModel& threat, const LambdaGrid& grid,
                                        std::size_t n, double alpha_mc, const RandomStream& rng,
                                        std::size_t workers = 1) {
  static_cast<void>(Probability{p0_lower});
  if (!(alpha_mc > 0.0 && alpha_mc < 1.0)) throw DomainError("alpha_mc must lie in (0, 1)");
  WorstDelta worst = worst_delta(threat, family);
  if (worst.rationale == WorstDeltaRationale::kLinfViaL2Equivalence) {
    // Literally the l2 problem at radius sqrt(d) r.
    DualBoundResult out =
        dual_lower_bound(p0_lower, family, worst.effective_threat, grid, n, alpha_mc, rng, workers);
    out.delta.rationale = WorstDeltaRationale::kLinfViaL2Equivalence;
    return out;
  }
  const auto lambdas = grid.values();
  auto batch = shift_ratios(family, worst.vector, n, rng, workers);
  DualBoundResult out = dual_bound_from_ratios(p0_lower, batch.ratios, lambdas, alpha_mc);
  out.delta = std::move(worst);
  out.telemetry = batch.telemetry;
  return out;
}

}  // namespace smoothcert

#endif  // SMOOTHCERT_DISCREPANCY_HPP_
