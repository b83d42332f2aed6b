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

// Black-box hard-label classifiers f(x) in {0, 1} and the sampling loop that
// estimates their smoothed value E[f(x0 + z)], z ~ pi_0.

#ifndef SMOOTHCERT_CLASSIFIER_HPP_
#define SMOOTHCERT_CLASSIFIER_HPP_

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "smoothcert/closed_form.hpp"
#include "smoothcert/error.hpp"
#include "smoothcert/family.hpp"
#include "smoothcert/norms.hpp"
#include "smoothcert/random.hpp"
#include "smoothcert/sampling.hpp"
#include "smoothcert/special.hpp"

namespace smoothcert {

class Classifier {
 public:
  virtual ~Classifier() = default;

  // Input dimension, or 0 if any dimension is accepted.
  virtual std::size_t dimension() const = 0;

  // labels[i] = f(row i) for a row-major (labels.size() x d) batch.
  virtual void classify(std::span<const double> points, std::size_t d,
                        std::span<std::uint8_t> labels) = 0;

  // Whether classify() may be called from several threads at once.
  virtual bool concurrent() const { return false; }
};

class SyntheticClassifier final : public Classifier {
 public:
  struct Constant {
    std::uint8_t label = 1;
  };
  // 1 inside the closed ball ||x - center|| <= radius.
  struct BallIndicator {
    Norm norm = Norm::kL2;
    std::vector<double> center;
    double radius = 1.0;
  };
  // 1 where <w, x> + c >= 0.
  struct Halfspace {
    std::vector<double> w;
    double c = 0.0;
  };
  using Variant = std::variant<Constant, BallIndicator, Halfspace>;

  static SyntheticClassifier constant(int label) {
    if (label != 0 && label != 1) throw DomainError("constant classifier label must be 0 or 1");
    return SyntheticClassifier(Constant{static_cast<std::uint8_t>(label)});
  }
  static SyntheticClassifier ball(Norm norm, std::vector<double> center, double radius) {
    if (norm == Norm::kL1) throw DomainError("ball indicator supports l2 and linf norms");
    if (center.empty()) throw DomainError("ball indicator needs a center");
    if (!(radius >= 0.0)) throw DomainError("ball radius must be >= 0");
    return SyntheticClassifier(BallIndicator{norm, std::move(center), radius});
  }
  static SyntheticClassifier halfspace(std::vector<double> w, double c) {
    if (w.empty()) throw DomainError("halfspace needs a normal vector");
    return SyntheticClassifier(Halfspace{std::move(w), c});
  }

  const Variant& variant() const { return variant_; }

  std::size_t dimension() const override {
    if (const auto* b = std::get_if<BallIndicator>(&variant_)) return b->center.size();
    if (const auto* h = std::get_if<Halfspace>(&variant_)) return h->w.size();
    return 0;
  }

  std::uint8_t label(std::span<const double> x) const {
    if (const auto* c = std::get_if<Constant>(&variant_)) return c->label;
    if (const auto* b = std::get_if<BallIndicator>(&variant_)) {
      return norms_of_difference(x, b->center).get(b->norm) <= b->radius ? 1 : 0;
    }
    const auto& h = std::get<Halfspace>(variant_);
    double dot = h.c;
    for (std::size_t i = 0; i < x.size(); ++i) dot += h.w[i] * x[i];
    return dot >= 0.0 ? 1 : 0;
  }

  void classify(std::span<const double> points, std::size_t d,
                std::span<std::uint8_t> labels) override {
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = label(points.subspan(i * d, d));
  }

  bool concurrent() const override { return true; }

 private:
  explicit SyntheticClassifier(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

namespace internal {

inline void CheckClassifierDimension(const Classifier& classifier, std::size_t d) {
  if (classifier.dimension() != 0 && classifier.dimension() != d) {
    throw DomainError("classifier expects dimension " + std::to_string(classifier.dimension()) +
                      ", got " + std::to_string(d));
  }
}

}  // namespace internal

inline std::vector<std::uint8_t> evaluate(Classifier& classifier, const SampleBatch& points) {
  internal::CheckClassifierDimension(classifier, points.dimension());
  std::vector<std::uint8_t> labels(points.n);
  classifier.classify(points.points, points.dimension(), labels);
  return labels;
}

// Draws N points x0 + z, z ~ pi_0, and counts f = 1. Dimensions are checked
// before any sample is drawn.
inline BinomialEvidence success_counts(Classifier& classifier, std::span<const double> x0,
                                       const SmoothingFamily& family, std::size_t n,
                                       const RandomStream& rng, std::size_t workers = 1) {
  if (n == 0) throw DomainError("success_counts requires N >= 1");
  const std::size_t d = family.dimension();
  internal::CheckDimension(family, x0.size(), "x0");
  internal::CheckClassifierDimension(classifier, d);
  std::vector<std::uint64_t> per_block(block_count(n), 0);
  for_each_sample_block(family, n, rng, classifier.concurrent() ? workers : 1,
                        [&](std::size_t block, std::size_t, std::span<const double> points,
                            const SamplerTelemetry&) {
                          thread_local std::vector<double> shifted;
                          thread_local std::vector<std::uint8_t> labels;
                          const std::size_t rows = points.size() / d;
                          shifted.resize(points.size());
                          labels.resize(rows);
                          for (std::size_t i = 0; i < points.size(); ++i) {
                            shifted[i] = x0[i % d] + points[i];
                          }
                          classifier.classify(shifted, d, labels);
                          std::uint64_t count = 0;
                          for (std::uint8_t label : labels) count += label;
                          per_block[block] = count;
                        });
  BinomialEvidence evidence{0, n};
  for (std::uint64_t c : per_block) evidence.successes += c;
  return evidence;
}

// Exact E[f(x0 + shift + z)] for an l2 ball indicator f under a spherical
// family (gaussian or l2_power_tail). With o = ||x0 + shift - center||, the
// point is inside iff rho^2 + 2 rho o u_1 + o^2 <= R^2, where rho = ||z|| and
// u_1 is one coordinate of a uniform direction. Integrating the cap
// probability against the radius law leaves a one-dimensional integral.
inline double exact_smoothed_value(const SyntheticClassifier::BallIndicator& ball,
                                   std::span<const double> x0, const SmoothingFamily& family,
                                   std::span<const double> shift) {
  if (ball.norm != Norm::kL2) {
    throw UnsupportedError("exact_smoothed_value needs an l2 ball indicator");
  }
  if (!family.spherical()) {
    throw UnsupportedError("exact_smoothed_value needs a gaussian or l2_power_tail family");
  }
  const std::size_t d = family.dimension();
  internal::CheckDimension(family, x0.size(), "x0");
  internal::CheckDimension(family, shift.size(), "shift");
  internal::CheckDimension(family, ball.center.size(), "ball center");
  if (ball.radius == 0.0) return 0.0;

  double offset_sq = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double v = x0[i] + shift[i] - ball.center[i];
    offset_sq += v * v;
  }
  const double o = std::sqrt(offset_sq);
  const double big_r = ball.radius;
  const double sigma = family.scale();
  // G = rho^2 / (2 sigma^2) ~ Gamma(shape, 1).
  const double shape = 0.5 * (static_cast<double>(d) - family.k());
  const auto to_g = [&](double rho) { return rho * rho / (2.0 * sigma * sigma); };
  const auto radius_cdf = [&](double rho) {
    return rho <= 0.0 ? 0.0 : boost::math::gamma_p(shape, to_g(rho));
  };

  if (o == 0.0) return radius_cdf(big_r);

  const double inner = big_r > o ? radius_cdf(big_r - o) : 0.0;
  const double g_lo = to_g(std::fabs(big_r - o));
  const double g_hi = to_g(big_r + o);
  // P(u_1 <= t) for u uniform on the sphere S^(d-1).
  const auto cap = [&](double t) {
    t = std::clamp(t, -1.0, 1.0);
    if (d == 1) return t >= 1.0 ? 1.0 : (t >= -1.0 ? 0.5 : 0.0);
    const double a = 0.5 * (static_cast<double>(d) - 1.0);
    return reg_incomplete_beta(a, a, 0.5 * (1.0 + t));
  };
  if (d == 1) {
    // z = +-rho: inside when |rho - o| <= R, i.e. rho in [|R - o|, R + o]
    // for one of the two signs.
    return inner + 0.5 * (radius_cdf(big_r + o) - radius_cdf(std::fabs(big_r - o)));
  }
  const auto integrand = [&](double g) {
    const double rho = sigma * std::sqrt(2.0 * g);
    const double t = (big_r * big_r - rho * rho - offset_sq) / (2.0 * rho * o);
    return boost::math::gamma_p_derivative(shape, g) * cap(t);
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double shell = integrator.integrate(integrand, g_lo, g_hi, 1e-12);
  return std::clamp(inner + shell, 0.0, 1.0);
}

}  // namespace smoothcert

#endif  // SMOOTHCERT_CLASSIFIER_HPP_
