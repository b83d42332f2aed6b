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

// End-to-end certification: estimate a lower confidence bound on p0 from
// classifier evaluations, then lower-bound the worst-case smoothed value with
// the dual bound.

#ifndef SMOOTHCERT_CERTIFY_HPP_
#define SMOOTHCERT_CERTIFY_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "smoothcert/classifier.hpp"
#include "smoothcert/closed_form.hpp"
#include "smoothcert/discrepancy.hpp"
#include "smoothcert/error.hpp"
#include "smoothcert/family.hpp"
#include "smoothcert/random.hpp"
#include "smoothcert/sampling.hpp"
#include "smoothcert/threat.hpp"

namespace smoothcert {

// Failure probabilities of the two estimation stages. The certificate holds
// with probability >= 1 - (alpha_p0 + alpha_mc) by the union bound.
struct ConfidenceBudget {
  double alpha_total = 0.001;
  double alpha_p0 = 0.0005;
  double alpha_mc = 0.0005;

  static ConfidenceBudget split(double alpha_total) {
    ConfidenceBudget budget{alpha_total, alpha_total / 2.0, alpha_total / 2.0};
    budget.validate();
    return budget;
  }

  void validate() const {
    for (double a : {alpha_total, alpha_p0, alpha_mc}) {
      if (!(a > 0.0 && a < 1.0)) throw DomainError("confidence levels must lie in (0, 1)");
    }
    if (alpha_p0 + alpha_mc > alpha_total * (1.0 + 1e-12)) {
      throw DomainError("alpha_p0 + alpha_mc must not exceed alpha_total");
    }
  }
};

enum class CertStatus { kCertified, kNotCertified, kAbstain };

inline std::string_view to_string(CertStatus status) {
  switch (status) {
    case CertStatus::kCertified:
      return "certified";
    case CertStatus::kNotCertified:
      return "not_certified";
    case CertStatus::kAbstain:
      return "abstain";
  }
  return "?";
}

// Stage 1 of the practical algorithm. Heuristic only: nothing here is
// charged to the confidence budget except through the final stage.
struct PilotStage {
  BinomialEvidence evidence;
  double p0_lower = 0.0;
  double lambda_hat = 0.0;
  std::vector<LambdaTracePoint> trace;
  bool refined = false;
};

struct Certificate {
  std::string input_id;
  BinomialEvidence evidence;
  double p0_lower = 0.0;
  double bound = 0.0;
  bool certified = false;
  CertStatus status = CertStatus::kAbstain;
  double lambda_star = 0.0;
  ThreatModel threat;
  SmoothingFamily family = SmoothingFamily::gaussian(1, 1.0);
  ConfidenceBudget budget;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  WorstDelta delta;
  std::vector<LambdaTracePoint> trace;
  SamplerTelemetry telemetry;
  std::optional<PilotStage> pilot;
};

namespace internal {

inline CertStatus Verdict(double p0_lower, double bound) {
  if (p0_lower <= 0.5) return CertStatus::kAbstain;
  return bound > 0.5 ? CertStatus::kCertified : CertStatus::kNotCertified;
}

inline void CheckCounts(std::size_t n1, std::size_t n2) {
  if (n1 == 0 || n2 == 0) throw DomainError("sample counts N1 and N2 must be >= 1");
}

}  // namespace internal

// Grid-search certification. N1 classifier evaluations use rng.substream(0);
// the N2 discrepancy samples use rng.substream(1).
inline Certificate certify(Classifier& classifier, std::span<const double> x0,
                           const SmoothingFamily& family, const ThreatModel& threat,
                           const LambdaGrid& grid, std::size_t n1, std::size_t n2,
                           const ConfidenceBudget& budget, const RandomStream& rng,
                           std::size_t workers = 1, std::string input_id = "0") {
  budget.validate();
  grid.validate();
  internal::CheckCounts(n1, n2);
  worst_delta(threat, family);  // reject unsupported pairs before sampling

  Certificate cert;
  cert.input_id = std::move(input_id);
  cert.threat = threat;
  cert.family = family;
  cert.budget = budget;
  cert.n1 = n1;
  cert.n2 = n2;
  cert.evidence = success_counts(classifier, x0, family, n1, rng.substream(0), workers);
  cert.p0_lower = clopper_pearson_lower(cert.evidence, budget.alpha_p0);

  DualBoundResult dual = dual_lower_bound(cert.p0_lower, family, threat, grid, n2,
                                          budget.alpha_mc, rng.substream(1), workers);
  cert.bound = dual.bound;
  cert.lambda_star = dual.lambda_star;
  cert.delta = std::move(dual.delta);
  cert.trace = std::move(dual.trace);
  cert.telemetry = dual.telemetry;
  cert.status = internal::Verdict(cert.p0_lower, cert.bound);
  cert.certified = cert.status == CertStatus::kCertified;
  return cert;
}

// argmax over the grid of lambda p0 - D_hat(lambda), optionally refined by a
// golden-section search in log(lambda) between the argmax's neighbours.
inline std::pair<double, std::vector<LambdaTracePoint>> select_lambda(
    double p0, std::span<const double> ratios, std::span<const double> lambdas, bool refine) {
  if (lambdas.empty()) throw DomainError("lambda grid must be nonempty");
  std::vector<LambdaTracePoint> trace;
  std::size_t best = 0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const auto est = estimate_from_ratios(ratios, lambdas[i], 0.5);
    trace.push_back({lambdas[i], est.mean, 0.0, lambdas[i] * p0 - est.mean, est.std_error});
    if (trace[i].bound > trace[best].bound) best = i;
  }
  double lambda_hat = lambdas[best];
  if (refine && lambdas.size() >= 3) {
    const auto objective = [&](double log_lambda) {
      const double lambda = std::exp(log_lambda);
      return lambda * p0 - estimate_from_ratios(ratios, lambda, 0.5).mean;
    };
    double lo = std::log(lambdas[best == 0 ? 0 : best - 1]);
    double hi = std::log(lambdas[std::min(best + 1, lambdas.size() - 1)]);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - inv_phi * (hi - lo);
    double b = lo + inv_phi * (hi - lo);
    double fa = objective(a);
    double fb = objective(b);
    for (int it = 0; it < 60; ++it) {
      if (fa >= fb) {
        hi = b;
        b = a;
        fb = fa;
        a = hi - inv_phi * (hi - lo);
        fa = objective(a);
      } else {
        lo = a;
        a = b;
        fa = fb;
        b = lo + inv_phi * (hi - lo);
        fb = objective(b);
      }
    }
    const double candidate = std::exp(0.5 * (lo + hi));
    if (objective(std::log(candidate)) > trace[best].bound) lambda_hat = candidate;
  }
  return {lambda_hat, std::move(trace)};
}

// Two-stage certification. The pilot (substreams 2 and 3) only selects
// lambda_hat; the final stage draws fresh samples (substreams 0 and 1) and
// bounds the single point lambda_hat, so the result is valid whatever the
// pilot returned.
inline Certificate certify_practical(Classifier& classifier, std::span<const double> x0,
                                     const SmoothingFamily& family, const ThreatModel& threat,
                                     const LambdaGrid& grid,
                                     std::pair<std::size_t, std::size_t> pilot_counts,
                                     std::pair<std::size_t, std::size_t> final_counts,
                                     const ConfidenceBudget& budget, const RandomStream& rng,
                                     std::size_t workers = 1, std::string input_id = "0",
                                     bool refine_lambda = false) {
  budget.validate();
  grid.validate();
  internal::CheckCounts(pilot_counts.first, pilot_counts.second);
  internal::CheckCounts(final_counts.first, final_counts.second);
  WorstDelta worst = worst_delta(threat, family);

  PilotStage pilot;
  pilot.evidence =
      success_counts(classifier, x0, family, pilot_counts.first, rng.substream(2), workers);
  pilot.p0_lower = clopper_pearson_lower(pilot.evidence, budget.alpha_p0);
  {
    const auto ratios =
        shift_ratios(family, worst.vector, pilot_counts.second, rng.substream(3), workers);
    const auto lambdas = grid.values();
    auto [lambda_hat, trace] = select_lambda(pilot.p0_lower, ratios.ratios, lambdas, refine_lambda);
    pilot.lambda_hat = lambda_hat;
    pilot.trace = std::move(trace);
    pilot.refined = refine_lambda;
  }

  Certificate cert;
  cert.input_id = std::move(input_id);
  cert.threat = threat;
  cert.family = family;
  cert.budget = budget;
  cert.n1 = final_counts.first;
  cert.n2 = final_counts.second;
  cert.evidence =
      success_counts(classifier, x0, family, final_counts.first, rng.substream(0), workers);
  cert.p0_lower = clopper_pearson_lower(cert.evidence, budget.alpha_p0);
  const auto batch =
      shift_ratios(family, worst.vector, final_counts.second, rng.substream(1), workers);
  const auto est = estimate_from_ratios(batch.ratios, pilot.lambda_hat, budget.alpha_mc);
  cert.lambda_star = pilot.lambda_hat;
  cert.bound = pilot.lambda_hat * cert.p0_lower - est.mean - est.epsilon;
  cert.trace = {{pilot.lambda_hat, est.mean, est.epsilon, cert.bound, est.std_error}};
  cert.telemetry = batch.telemetry;
  cert.delta = std::move(worst);
  cert.status = internal::Verdict(cert.p0_lower, cert.bound);
  cert.certified = cert.status == CertStatus::kCertified;
  cert.pilot = std::move(pilot);
  return cert;
}

inline constexpr std::size_t kMaxRadiusGrid = 4095;

struct RadiusProbe {
  double radius = 0.0;
  double bound = 0.0;
  double lambda_star = 0.0;
  bool certified = false;
};

struct RadiusCertificate {
  std::string input_id;
  BinomialEvidence evidence;
  double p0_lower = 0.0;
  CertStatus status = CertStatus::kAbstain;
  double radius = 0.0;  // largest certified grid radius, 0 if none
  double bound = 0.0;   // dual bound at `radius`
  bool certified = false;
  Norm norm = Norm::kL2;
  SmoothingFamily family = SmoothingFamily::gaussian(1, 1.0);
  ConfidenceBudget budget;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::vector<double> radius_grid;
  std::vector<RadiusProbe> probes;
};

// Largest certified radius on an ascending grid, by binary search. All probes
// reuse one batch of N2 samples; alpha_mc is split over every (lambda, radius)
// pair of the grids, so any probe the search happens to visit is covered.
inline RadiusCertificate certify_radius(Classifier& classifier, std::span<const double> x0,
                                        const SmoothingFamily& family, Norm norm,
                                        std::vector<double> radius_grid, const LambdaGrid& grid,
                                        std::size_t n1, std::size_t n2,
                                        const ConfidenceBudget& budget, const RandomStream& rng,
                                        std::size_t workers = 1, std::string input_id = "0") {
  budget.validate();
  grid.validate();
  internal::CheckCounts(n1, n2);
  if (radius_grid.empty() || radius_grid.size() > kMaxRadiusGrid) {
    throw DomainError("radius grid must hold between 1 and " + std::to_string(kMaxRadiusGrid) +
                      " values");
  }
  for (std::size_t i = 0; i < radius_grid.size(); ++i) {
    if (!(radius_grid[i] > 0.0) || !std::isfinite(radius_grid[i]) ||
        (i > 0 && !(radius_grid[i] > radius_grid[i - 1]))) {
      throw DomainError("radius grid must be positive, finite and strictly increasing");
    }
  }
  worst_delta(ThreatModel{norm, radius_grid.front()}, family);

  RadiusCertificate out;
  out.input_id = std::move(input_id);
  out.norm = norm;
  out.family = family;
  out.budget = budget;
  out.n1 = n1;
  out.n2 = n2;
  out.evidence = success_counts(classifier, x0, family, n1, rng.substream(0), workers);
  out.p0_lower = clopper_pearson_lower(out.evidence, budget.alpha_p0);
  out.radius_grid = std::move(radius_grid);
  if (out.p0_lower <= 0.5) {
    out.status = CertStatus::kAbstain;
    return out;
  }

  const SampleBatch batch = sample_blocked(family, n2, rng.substream(1), workers);
  const auto lambdas = grid.values();
  const double alpha_each = budget.alpha_mc / static_cast<double>(out.radius_grid.size());
  std::ptrdiff_t lo = -1;
  auto hi = static_cast<std::ptrdiff_t>(out.radius_grid.size());
  while (hi - lo > 1) {
    const std::ptrdiff_t mid = lo + (hi - lo) / 2;
    const double r = out.radius_grid[static_cast<std::size_t>(mid)];
    const WorstDelta worst = worst_delta(ThreatModel{norm, r}, family);
    const auto ratios = ratios_for_shift(batch, worst.vector);
    const auto dual = dual_bound_from_ratios(out.p0_lower, ratios, lambdas, alpha_each);
    const bool ok = dual.bound > 0.5;
    out.probes.push_back({r, dual.bound, dual.lambda_star, ok});
    if (ok) {
      lo = mid;
      out.radius = r;
      out.bound = dual.bound;
    } else {
      hi = mid;
    }
  }
  out.certified = lo >= 0;
  out.status = out.certified ? CertStatus::kCertified : CertStatus::kNotCertified;
  return out;
}

}  // namespace smoothcert

#endif  // SMOOTHCERT_CERTIFY_HPP_
