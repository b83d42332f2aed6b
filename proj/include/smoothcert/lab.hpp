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

// Batch experiments that check the theory numerically: the accuracy versus
// robustness frontier, radius moments, thin-shell concentration, worst-case
// shift location and the discrepancy oracle chain.

#ifndef SMOOTHCERT_LAB_HPP_
#define SMOOTHCERT_LAB_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "smoothcert/classifier.hpp"
#include "smoothcert/discrepancy.hpp"
#include "smoothcert/error.hpp"
#include "smoothcert/family.hpp"
#include "smoothcert/norms.hpp"
#include "smoothcert/parallel.hpp"
#include "smoothcert/quadrature.hpp"
#include "smoothcert/random.hpp"
#include "smoothcert/sampling.hpp"
#include "smoothcert/threat.hpp"

namespace smoothcert {

// ---------------------------------------------------------------------------
// Accuracy / robustness frontier.

struct ParetoFamilySpec {
  FamilyKind kind = FamilyKind::kMixedNorm;
  std::vector<double> k_grid;
  std::vector<double> scale_grid;
};

struct ParetoPoint {
  FamilyKind family = FamilyKind::kGaussian;
  double k = 0.0;
  double scale = 1.0;
  double accuracy = 0.0;
  double accuracy_se = 0.0;
  double robustness = 0.0;  // D(pi_0 || pi_delta*) at lambda = 1
  double robustness_se = 0.0;
  bool frontier = false;
};

inline std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (count == 0 || !(lo > 0.0) || !(hi >= lo)) throw DomainError("invalid log grid");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    out[i] = std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
  }
  return out;
}

// k = 0 plus a log grid on [k_lo, k_hi].
inline std::vector<double> k_grid_with_zero(double k_lo, double k_hi, std::size_t count) {
  std::vector<double> out{0.0};
  for (double k : log_grid(k_lo, k_hi, count)) out.push_back(k);
  return out;
}

// Grids for the l-infinity comparison at dimension d (k < d for all three).
inline std::vector<ParetoFamilySpec> default_pareto_families(std::size_t d) {
  const double k_hi = static_cast<double>(d) - 1.05;
  const auto ks = k_grid_with_zero(0.25, k_hi, 16);
  const auto sigmas = log_grid(0.05, 2.0, 32);
  return {{FamilyKind::kMixedNorm, ks, sigmas},
          {FamilyKind::kL2PowerTail, ks, sigmas},
          {FamilyKind::kLinfPure, ks, sigmas}};
}

// Marks, within each family, the points not dominated by another point of
// the same family (higher or equal accuracy and lower or equal robustness,
// one of them strict).
inline void mark_frontier(std::vector<ParetoPoint>& points) {
  for (auto& p : points) {
    p.frontier = true;
    for (const auto& q : points) {
      if (q.family != p.family) continue;
      const bool weakly = q.accuracy >= p.accuracy && q.robustness <= p.robustness;
      const bool strictly = q.accuracy > p.accuracy || q.robustness < p.robustness;
      if (weakly && strictly) {
        p.frontier = false;
        break;
      }
    }
  }
}

// accuracy = P(f(x0 + z) = 1) and robustness = D(pi_0 || pi_delta*) by Monte
// Carlo with n samples each. Configuration i uses rng.substream(i).
inline std::vector<ParetoPoint> pareto_sweep(const SyntheticClassifier& truth,
                                             std::span<const double> x0, std::size_t d,
                                             const ThreatModel& threat,
                                             const std::vector<ParetoFamilySpec>& families,
                                             std::size_t n, const RandomStream& rng,
                                             std::size_t workers = 1) {
  if (x0.size() != d) throw DomainError("x0 must have dimension d");
  struct Config {
    FamilyKind kind;
    double k;
    double scale;
  };
  std::vector<Config> configs;
  for (const auto& spec : families) {
    for (double k : spec.k_grid) {
      for (double s : spec.scale_grid) configs.push_back({spec.kind, k, s});
    }
  }
  std::vector<ParetoPoint> points(configs.size());
  parallel_for(configs.size(), workers, [&](std::size_t i) {
    const auto& c = configs[i];
    const auto family = SmoothingFamily::make(c.kind, d, c.k, c.scale);
    const RandomStream stream = rng.substream(i);
    SyntheticClassifier classifier = truth;
    const auto evidence = success_counts(classifier, x0, family, n, stream.substream(0));
    const auto delta = worst_delta(threat, family);
    const auto ratios = shift_ratios(family, delta.vector, n, stream.substream(1));
    const auto est = estimate_from_ratios(ratios.ratios, 1.0, 0.5);
    ParetoPoint& p = points[i];
    p.family = c.kind;
    p.k = c.k;
    p.scale = c.scale;
    p.accuracy = evidence.fraction();
    p.accuracy_se = std::sqrt(p.accuracy * (1.0 - p.accuracy) / static_cast<double>(n));
    p.robustness = est.mean;
    p.robustness_se = est.std_error;
  });
  mark_frontier(points);
  return points;
}

struct DominanceReport {
  FamilyKind dominant = FamilyKind::kMixedNorm;
  FamilyKind other = FamilyKind::kL2PowerTail;
  double range_lo = 0.0;  // shared robustness range of the two frontiers
  double range_hi = 0.0;
  std::size_t checked = 0;
  std::size_t violations = 0;
  double worst_accuracy_gap = 0.0;  // max over checked points of (deficit - guard), <= 0 passes
  bool passed() const { return checked > 0 && violations == 0; }
};

// For every frontier point P of `other` whose robustness lies in the shared
// range, looks for a frontier point Q of `dominant` with
//   Q.robustness <= P.robustness + guard * se_r  and
//   Q.accuracy   >= P.accuracy  - guard * se_a,
// where se_r, se_a combine the standard errors of P and Q.
inline DominanceReport frontier_dominance(const std::vector<ParetoPoint>& points,
                                          FamilyKind dominant, FamilyKind other,
                                          double guard = 2.0) {
  DominanceReport report;
  report.dominant = dominant;
  report.other = other;
  double dom_lo = std::numeric_limits<double>::infinity();
  double dom_hi = -dom_lo;
  double oth_lo = dom_lo;
  double oth_hi = -dom_lo;
  for (const auto& p : points) {
    if (!p.frontier) continue;
    if (p.family == dominant) {
      dom_lo = std::min(dom_lo, p.robustness);
      dom_hi = std::max(dom_hi, p.robustness);
    } else if (p.family == other) {
      oth_lo = std::min(oth_lo, p.robustness);
      oth_hi = std::max(oth_hi, p.robustness);
    }
  }
  report.range_lo = std::max(dom_lo, oth_lo);
  report.range_hi = std::min(dom_hi, oth_hi);
  report.worst_accuracy_gap = -std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    if (p.family != other || !p.frontier) continue;
    if (p.robustness < report.range_lo || p.robustness > report.range_hi) continue;
    ++report.checked;
    bool covered = false;
    double best_gap = std::numeric_limits<double>::infinity();
    for (const auto& q : points) {
      if (q.family != dominant || !q.frontier) continue;
      const double se_r = std::hypot(p.robustness_se, q.robustness_se);
      const double se_a = std::hypot(p.accuracy_se, q.accuracy_se);
      if (q.robustness > p.robustness + guard * se_r) continue;
      const double gap = (p.accuracy - q.accuracy) - guard * se_a;
      best_gap = std::min(best_gap, gap);
      if (gap <= 0.0) covered = true;
    }
    report.worst_accuracy_gap = std::max(report.worst_accuracy_gap, best_gap);
    if (!covered) ++report.violations;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Radius moments of the l2 power-tail family.

struct MeanVarianceRow {
  std::string curve;  // "sigma" (k = 0) or "k" (fixed sigma)
  double parameter = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};

inline std::vector<MeanVarianceRow> mean_variance_curve(std::size_t d,
                                                        std::span<const double> sigma_grid,
                                                        std::span<const double> k_grid,
                                                        double k_curve_sigma = 1.0) {
  std::vector<MeanVarianceRow> rows;
  for (double sigma : sigma_grid) {
    const auto stats = radius_stats(SmoothingFamily::l2_power_tail(d, 0.0, sigma));
    rows.push_back({"sigma", sigma, stats.mean, stats.variance});
  }
  for (double k : k_grid) {
    if (!(k < static_cast<double>(d) - 1.0)) {
      throw DomainError("mean_variance_curve requires k < d - 1 (k = " + std::to_string(k) + ")");
    }
    const auto stats = radius_stats(SmoothingFamily::l2_power_tail(d, k, k_curve_sigma));
    rows.push_back({"k", k, stats.mean, stats.variance});
  }
  return rows;
}

// The k at which the mean radius equals `ratio` times its k = 0 value, by
// bisection on [0, d - 1); the mean is decreasing in k.
inline double k_for_mean_ratio(std::size_t d, double sigma, double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw DomainError("ratio must lie in (0, 1)");
  const double base = radius_stats(SmoothingFamily::l2_power_tail(d, 0.0, sigma)).mean;
  const double target = ratio * base;
  double lo = 0.0;
  double hi = static_cast<double>(d) - 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double mean = radius_stats(SmoothingFamily::l2_power_tail(d, mid, sigma)).mean;
    (mean > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Least-squares slope of log(variance) against log(mean) over the rows of
// one curve.
inline double log_log_slope(const std::vector<MeanVarianceRow>& rows, const std::string& curve) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  double m = 0.0;
  for (const auto& row : rows) {
    if (row.curve != curve) continue;
    const double x = std::log(row.mean);
    const double y = std::log(row.variance);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    m += 1.0;
  }
  if (m < 2.0) throw DomainError("slope needs at least two rows");
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// Thin-shell concentration.

struct ThinShellRow {
  std::size_t d = 0;
  std::size_t n = 0;
  double gaussian_fraction = 0.0;           // ||z||_2 in sqrt(d) +- 4
  double gaussian_relative_fraction = 0.0;  // ||z||_2 / sqrt(d) in 1 +- 0.1
  double laplace_fraction = 0.0;            // ||z||_1 / d in 1 +- 1 / sqrt(d delta)
  double laplace_relative_fraction = 0.0;   // ||z||_1 / d in 1 +- 0.1
  double laplace_chebyshev_floor = 0.0;     // 1 - delta
};

inline constexpr double kThinShellGaussianWidth = 4.0;
inline constexpr double kThinShellRelativeWidth = 0.1;

// Standard gaussian (sigma = 1) and laplacian (b = 1) draws; dimension i of
// d_list uses rng.substream(i).
inline std::vector<ThinShellRow> thin_shell_report(std::span<const std::size_t> d_list,
                                                   std::size_t n, const RandomStream& rng,
                                                   double delta = 0.05, std::size_t workers = 1) {
  if (n == 0) throw DomainError("thin_shell_report requires n >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  std::vector<ThinShellRow> rows(d_list.size());
  for (std::size_t i = 0; i < d_list.size(); ++i) {
    const std::size_t d = d_list[i];
    const double dd = static_cast<double>(d);
    const auto gauss = SmoothingFamily::gaussian(d, 1.0);
    const auto laplace = SmoothingFamily::laplacian(d, 1.0);
    const RandomStream stream = rng.substream(i);
    std::vector<std::uint64_t> counts(4 * block_count(n), 0);
    for_each_sample_block(gauss, n, stream.substream(0), workers,
                          [&](std::size_t block, std::size_t, std::span<const double> pts,
                              const SamplerTelemetry&) {
                            for (std::size_t r = 0; r < pts.size() / d; ++r) {
                              const double norm = norms_of(pts.subspan(r * d, d)).l2();
                              counts[4 * block] +=
                                  std::fabs(norm - std::sqrt(dd)) <= kThinShellGaussianWidth;
                              counts[4 * block + 1] += std::fabs(norm / std::sqrt(dd) - 1.0) <=
                                                       kThinShellRelativeWidth;
                            }
                          });
    const double laplace_width = 1.0 / std::sqrt(dd * delta);
    for_each_sample_block(laplace, n, stream.substream(1), workers,
                          [&](std::size_t block, std::size_t, std::span<const double> pts,
                              const SamplerTelemetry&) {
                            for (std::size_t r = 0; r < pts.size() / d; ++r) {
                              const double x = norms_of(pts.subspan(r * d, d)).l1 / dd;
                              counts[4 * block + 2] += std::fabs(x - 1.0) <= laplace_width;
                              counts[4 * block + 3] +=
                                  std::fabs(x - 1.0) <= kThinShellRelativeWidth;
                            }
                          });
    std::uint64_t totals[4] = {0, 0, 0, 0};
    for (std::size_t j = 0; j < counts.size(); ++j) totals[j % 4] += counts[j];
    const double nn = static_cast<double>(n);
    rows[i] = {d,
               n,
               static_cast<double>(totals[0]) / nn,
               static_cast<double>(totals[1]) / nn,
               static_cast<double>(totals[2]) / nn,
               static_cast<double>(totals[3]) / nn,
               1.0 - delta};
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Worst-case shift location by quadrature over a grid of shifts (d = 2).

struct WorstDeltaPoint {
  double x = 0.0;
  double y = 0.0;
  bool on_boundary = false;
  bool predicted = false;  // in the symmetry orbit of the predicted worst shift
  std::vector<double> values;  // one per lambda
};

struct WorstDeltaLambdaSummary {
  double lambda = 0.0;
  double predicted_value = 0.0;  // D at the predicted worst shift
  double max_value = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;
  double max_excess = 0.0;        // max_value - predicted_value
  double other_max = 0.0;         // max over shifts outside the predicted orbit
  double interior_margin = 0.0;   // predicted_value - other_max
  double predicted_spread = 0.0;  // max - min over the predicted orbit
  bool passed = false;
};

struct WorstDeltaReport {
  std::string family;
  double k = 0.0;
  double scale = 0.0;
  ThreatModel threat;
  std::size_t resolution = 0;
  double tolerance = 0.0;
  std::vector<double> predicted;  // worst_delta(threat, family).vector
  std::vector<WorstDeltaPoint> points;
  std::vector<WorstDeltaLambdaSummary> summaries;
  bool passed() const {
    return !summaries.empty() &&
           std::all_of(summaries.begin(), summaries.end(), [](const auto& s) { return s.passed; });
  }
};

inline constexpr double kWorstDeltaTolerance = 1e-4;

// Evaluates D(lambda pi_0 || pi_delta) by quadrature on the shifts of the
// first quadrant of the threat ball (all families are symmetric under sign
// flips and coordinate swaps): a (resolution + 1)^2 lattice clipped to the
// ball, plus boundary arc points for l2. Passes when the maximum exceeds the
// predicted value by at most `tolerance` and every shift outside the
// predicted orbit is strictly below it.
inline WorstDeltaReport worst_delta_grid_check(const SmoothingFamily& family,
                                               const ThreatModel& threat,
                                               std::span<const double> lambdas,
                                               std::size_t resolution = 8,
                                               QuadratureGrid quad = {},
                                               double tolerance = kWorstDeltaTolerance,
                                               std::size_t workers = 1) {
  if (family.dimension() != 2) throw DomainError("worst_delta_grid_check requires d = 2");
  if (resolution < 2) throw DomainError("resolution must be >= 2");
  if (lambdas.empty()) throw DomainError("lambda list must be nonempty");
  const WorstDelta worst = worst_delta(threat, family);
  const ThreatModel ball{threat.norm, threat.radius};
  const double r = threat.radius;
  const double tiny = 1e-12 * std::max(r, 1.0);

  WorstDeltaReport report;
  report.family = std::string(family.name());
  report.k = family.k();
  report.scale = family.scale();
  report.threat = threat;
  report.resolution = resolution;
  report.tolerance = tolerance;
  report.predicted = worst.vector;

  const auto add = [&](double x, double y) {
    const std::vector<double> v{x, y};
    const double norm = norm_of(v, ball.norm);
    if (norm > r + tiny) return;
    WorstDeltaPoint p;
    p.x = x;
    p.y = y;
    p.on_boundary = norm >= r - tiny;
    switch (worst.rationale) {
      case WorstDeltaRationale::kL2Boundary:
        p.predicted = p.on_boundary;
        break;
      case WorstDeltaRationale::kL1Boundary:
        p.predicted = p.on_boundary && (x <= tiny || y <= tiny);
        break;
      case WorstDeltaRationale::kLinfVertex:
        p.predicted = x >= r - tiny && y >= r - tiny;
        break;
      case WorstDeltaRationale::kLinfViaL2Equivalence:
        // Spherical family on the l-infinity ball: the corner maximizes ||delta||_2.
        p.predicted = x >= r - tiny && y >= r - tiny;
        break;
    }
    report.points.push_back(std::move(p));
  };
  const double step = r / static_cast<double>(resolution);
  for (std::size_t i = 0; i <= resolution; ++i) {
    for (std::size_t j = 0; j <= resolution; ++j) {
      add(i == resolution ? r : step * static_cast<double>(i),
          j == resolution ? r : step * static_cast<double>(j));
    }
  }
  if (ball.norm == Norm::kL2) {
    for (std::size_t i = 0; i <= 2 * resolution; ++i) {
      const double angle =
          0.5 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(2 * resolution);
      add(r * std::cos(angle), r * std::sin(angle));
    }
  }

  parallel_for(report.points.size(), workers, [&](std::size_t i) {
    auto& p = report.points[i];
    const std::vector<double> v{p.x, p.y};
    p.values = discrepancy_quadrature(family, v, lambdas, quad);
  });

  for (std::size_t l = 0; l < lambdas.size(); ++l) {
    WorstDeltaLambdaSummary s;
    s.lambda = lambdas[l];
    double pred_max = -std::numeric_limits<double>::infinity();
    double pred_min = std::numeric_limits<double>::infinity();
    s.max_value = -std::numeric_limits<double>::infinity();
    s.other_max = -std::numeric_limits<double>::infinity();
    for (const auto& p : report.points) {
      const double v = p.values[l];
      if (v > s.max_value) {
        s.max_value = v;
        s.max_x = p.x;
        s.max_y = p.y;
      }
      if (p.predicted) {
        pred_max = std::max(pred_max, v);
        pred_min = std::min(pred_min, v);
      } else {
        s.other_max = std::max(s.other_max, v);
      }
    }
    const std::vector<double> star(worst.vector.begin(), worst.vector.end());
    s.predicted_value = discrepancy_quadrature(family, star, lambdas[l], quad);
    s.predicted_spread = pred_max - pred_min;
    s.max_excess = s.max_value - s.predicted_value;
    s.interior_margin = s.predicted_value - s.other_max;
    s.passed = s.max_excess <= tolerance && s.interior_margin > 0.0;
    report.summaries.push_back(s);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Gaussian discrepancy: Monte Carlo vs closed form vs quadrature.

struct OracleChainRow {
  double sigma = 0.0;
  double shift = 0.0;
  double lambda = 0.0;
  double closed_form = 0.0;
  double quadrature = 0.0;
  double mc = 0.0;
  double mc_epsilon = 0.0;
  double mc_std_error = 0.0;
  bool quadrature_ok = false;  // |quadrature - closed_form| <= quadrature_tolerance
  bool mc_ok = false;          // |mc - closed_form| <= epsilon + 3 se, same for quadrature
  bool passed() const { return quadrature_ok && mc_ok; }
};

struct OracleTriple {
  double sigma = 1.0;
  double shift = 1.0;
  double lambda = 1.0;
};

inline std::vector<OracleTriple> default_oracle_triples() {
  std::vector<OracleTriple> out;
  for (double sigma : {0.5, 1.0}) {
    for (double shift : {0.5, 2.0}) {
      for (double lambda : {0.5, 1.0, 2.0}) out.push_back({sigma, shift, lambda});
    }
  }
  return out;
}

inline constexpr double kQuadratureTolerance = 1e-4;

inline std::vector<OracleChainRow> oracle_chain_report(std::span<const OracleTriple> triples,
                                                       std::size_t n, double alpha,
                                                       const RandomStream& rng,
                                                       std::size_t workers = 1) {
  std::vector<OracleChainRow> rows(triples.size());
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto& t = triples[i];
    const auto family = SmoothingFamily::gaussian(2, t.sigma);
    const std::vector<double> delta{t.shift, 0.0};
    OracleChainRow& row = rows[i];
    row.sigma = t.sigma;
    row.shift = t.shift;
    row.lambda = t.lambda;
    row.closed_form = discrepancy_gaussian_closed_form(t.sigma, t.shift, t.lambda);
    row.quadrature = discrepancy_quadrature(family, delta, t.lambda);
    const auto est = discrepancy_mc(family, delta, t.lambda, n, alpha, rng.substream(i), workers);
    row.mc = est.mean;
    row.mc_epsilon = est.epsilon;
    row.mc_std_error = est.std_error;
    const double mc_tol = est.epsilon + 3.0 * est.std_error;
    row.quadrature_ok = std::fabs(row.quadrature - row.closed_form) <= kQuadratureTolerance;
    row.mc_ok = std::fabs(row.mc - row.closed_form) <= mc_tol &&
                std::fabs(row.mc - row.quadrature) <= mc_tol + kQuadratureTolerance;
  }
  return rows;
}

}  // namespace smoothcert

#endif  // SMOOTHCERT_LAB_HPP_
