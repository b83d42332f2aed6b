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

#include "smoothcert/discrepancy.hpp"

#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <vector>

#include "smoothcert/closed_form.hpp"
#include "smoothcert/sampling.hpp"

namespace smoothcert {
namespace {

using boost::math::quadrature::gauss_kronrod;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Integral of (lambda phi_sigma(t) - phi_sigma(t - r))_+ along the shift
// axis; the orthogonal coordinates cancel.
double GaussianOracle(double sigma, double r, double lambda) {
  const auto phi = [sigma](double t) {
    return std::exp(-0.5 * t * t / (sigma * sigma)) / (sigma * std::sqrt(2.0 * M_PI));
  };
  const auto f = [&](double t) { return std::max(lambda * phi(t) - phi(t - r), 0.0); };
  // lambda phi(t) >= phi(t - r) exactly for t <= crossing.
  const double crossing = (sigma * sigma * std::log(lambda) + 0.5 * r * r) / r;
  return gauss_kronrod<double, 61>::integrate(f, -kInf, crossing, 15, 1e-13);
}

double LaplaceOracle(double b, double r, double lambda) {
  const auto p = [b](double t) { return std::exp(-std::fabs(t) / b) / (2.0 * b); };
  const auto f = [&](double t) { return std::max(lambda * p(t) - p(t - r), 0.0); };
  std::vector<double> cuts = {-kInf, 0.0, r, kInf};
  const double a = 0.5 * (b * std::log(lambda) + r);
  if (a > 0.0 && a < r) cuts.insert(cuts.begin() + 2, a);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += gauss_kronrod<double, 61>::integrate(f, cuts[i], cuts[i + 1], 15, 1e-13);
  }
  return total;
}

TEST(Hoeffding, Formula) {
  EXPECT_DOUBLE_EQ(hoeffding_epsilon(1000, 2.0, 0.01),
                   2.0 * std::sqrt(std::log(100.0) / 2000.0));
  EXPECT_EQ(hoeffding_epsilon(10, 0.0, 0.5), 0.0);
  EXPECT_THROW(hoeffding_epsilon(0, 1.0, 0.1), DomainError);
  EXPECT_THROW(hoeffding_epsilon(10, 1.0, 0.0), DomainError);
}

TEST(GaussianClosedForm, MatchesNumericalIntegration) {
  for (double sigma : {0.5, 1.0, 2.0}) {
    for (double r : {0.1, 1.0, 3.0}) {
      for (double lambda : {0.2, 1.0, 1.7, 5.0}) {
        EXPECT_NEAR(discrepancy_gaussian_closed_form(sigma, r, lambda),
                    GaussianOracle(sigma, r, lambda), 1e-10)
            << sigma << " " << r << " " << lambda;
      }
    }
  }
}

TEST(GaussianClosedForm, TotalVariationReference) {
  // TV(N(0, 1), N(2, 1)) = 2 Phi(1) - 1.
  EXPECT_NEAR(discrepancy_gaussian_closed_form(1.0, 2.0, 1.0), 0.6826894921370859, 1e-12);
}

TEST(LaplaceClosedForm, MatchesNumericalIntegration) {
  for (double b : {0.5, 1.0}) {
    for (double r : {0.1, 1.0, 2.5}) {
      for (double lambda : {0.05, 0.5, 1.0, 2.0, 40.0}) {
        EXPECT_NEAR(discrepancy_laplace_closed_form(b, r, lambda), LaplaceOracle(b, r, lambda),
                    1e-10)
            << b << " " << r << " " << lambda;
      }
    }
  }
}

TEST(ClosedForms, DiscrepancyShapeProperties) {
  for (double r : {0.3, 1.0}) {
    double prev = 0.0;
    double prev_slope = 0.0;
    for (double lambda = 0.0; lambda <= 6.0; lambda += 0.05) {
      for (double v : {discrepancy_gaussian_closed_form(1.0, r, lambda),
                       discrepancy_laplace_closed_form(1.0, r, lambda)}) {
        EXPECT_GE(v, std::max(lambda - 1.0, 0.0) - 1e-15);
        EXPECT_LE(v, lambda + 1e-15);
      }
      const double g = discrepancy_gaussian_closed_form(1.0, r, lambda);
      EXPECT_GE(g, prev - 1e-15);
      // Convex in lambda: slopes nondecreasing.
      const double slope = (g - prev) / 0.05;
      if (lambda > 0.05) EXPECT_GE(slope, prev_slope - 1e-9);
      prev_slope = slope;
      prev = g;
    }
  }
  EXPECT_LT(discrepancy_gaussian_closed_form(1.0, 0.5, 1.0),
            discrepancy_gaussian_closed_form(1.0, 1.0, 1.0));
}

TEST(DiscrepancyMc, AgreesWithClosedForms) {
  const std::size_t n = 200000;
  const double alpha = 0.001;
  for (double lambda : {0.5, 1.0, 3.0}) {
    const std::vector<double> delta = {0.6, 0.0, 0.0};
    const auto g = discrepancy_mc(SmoothingFamily::gaussian(3, 1.0), delta, lambda, n, alpha,
                                  RandomStream(1, 1));
    EXPECT_NEAR(g.mean, discrepancy_gaussian_closed_form(1.0, 0.6, lambda),
                g.epsilon + 3.0 * g.std_error);
    const auto l = discrepancy_mc(SmoothingFamily::laplacian(3, 1.0), delta, lambda, n, alpha,
                                  RandomStream(1, 2));
    EXPECT_NEAR(l.mean, discrepancy_laplace_closed_form(1.0, 0.6, lambda),
                l.epsilon + 3.0 * l.std_error);
  }
}

TEST(DiscrepancyMc, GaussianRotationInvariant) {
  // Same ||delta||_2 in another direction gives the same D.
  const std::vector<double> delta = {0.6, 0.8};
  const auto est = discrepancy_mc(SmoothingFamily::gaussian(2, 1.0), delta, 1.0, 200000, 0.001,
                                  RandomStream(3, 3));
  EXPECT_NEAR(est.mean, discrepancy_gaussian_closed_form(1.0, 1.0, 1.0),
              est.epsilon + 3.0 * est.std_error);
}

TEST(EstimateFromRatios, HandComputed) {
  const std::vector<double> ratios = {0.5, 2.0, 1.0, 0.0};
  const auto est = estimate_from_ratios(ratios, 1.0, 0.1);
  // (0.5 + 0 + 0 + 1) / 4
  EXPECT_DOUBLE_EQ(est.mean, 0.375);
  EXPECT_DOUBLE_EQ(est.epsilon, hoeffding_epsilon(4, 1.0, 0.1));
  const double var = (0.25 + 1.0) / 4.0 - 0.375 * 0.375;
  EXPECT_DOUBLE_EQ(est.std_error, std::sqrt(var / 4.0));
}

TEST(DualBoundFromRatios, HandComputedAndTies) {
  const std::vector<double> ratios = {0.5, 2.0};
  const std::vector<double> lambdas = {1.0, 2.0};
  const auto res = dual_bound_from_ratios(0.9, ratios, lambdas, 0.2);
  const double eps1 = hoeffding_epsilon(2, 1.0, 0.1);
  const double eps2 = hoeffding_epsilon(2, 2.0, 0.1);
  EXPECT_DOUBLE_EQ(res.trace[0].bound, 0.9 - 0.25 - eps1);
  EXPECT_DOUBLE_EQ(res.trace[1].bound, 1.8 - 0.75 - eps2);
  EXPECT_EQ(res.argmax, res.trace[0].bound >= res.trace[1].bound ? 0u : 1u);

  // All ratios huge: D = 0 for every lambda <= 1, bounds lambda p0 - eps;
  // with p0 = 0 every bound equals -0 - 0 at lambda = 0, ties go first.
  const std::vector<double> big = {100.0, 100.0};
  const std::vector<double> zeros = {0.0, 0.0, 0.0};
  const auto tie = dual_bound_from_ratios(0.0, big, zeros, 0.1);
  EXPECT_EQ(tie.argmax, 0u);
}

TEST(LambdaGrid, Values) {
  const auto v = LambdaGrid{0.01, 100.0, 5, true}.values();
  ASSERT_EQ(v.size(), 5u);
  EXPECT_EQ(v.front(), 0.01);
  EXPECT_EQ(v.back(), 100.0);
  EXPECT_NEAR(v[2], 1.0, 1e-12);
  EXPECT_THROW((LambdaGrid{0.0, 1.0, 3, true}.values()), DomainError);
  EXPECT_THROW((LambdaGrid{2.0, 1.0, 3, false}.values()), DomainError);
  const auto lin = LambdaGrid{0.0, 1.0, 3, false}.values();
  EXPECT_EQ(lin[1], 0.5);
}

TEST(DualLowerBound, BelowExactBoundAndClose) {
  const std::size_t n = 200000;
  for (double p0 : {0.7, 0.95}) {
    const auto res = dual_lower_bound(p0, SmoothingFamily::gaussian(2, 1.0), {Norm::kL2, 0.5},
                                      {}, n, 0.001, RandomStream(2, 2));
    const double exact = cohen_bound(p0, 1.0, 0.5).value;
    EXPECT_LT(res.bound, exact);
    const double eps = res.trace[res.argmax].epsilon;
    EXPECT_GT(res.bound, exact - eps - 3.0 * res.trace[res.argmax].std_error - 0.01);
  }
}

TEST(DualLowerBound, MonotoneInP0) {
  double prev = -INFINITY;
  for (double p0 = 0.5; p0 <= 1.0; p0 += 0.05) {
    const auto res = dual_lower_bound(p0, SmoothingFamily::laplacian(2, 1.0), {Norm::kL1, 0.5},
                                      {}, 20000, 0.001, RandomStream(2, 2));
    EXPECT_GE(res.bound, prev);
    prev = res.bound;
  }
}

TEST(DualLowerBound, IndependentOfWorkerCount) {
  const auto family = SmoothingFamily::mixed_norm(4, 1.0, 1.0);
  const ThreatModel threat(Norm::kLinf, 0.2);
  const auto a = dual_lower_bound(0.9, family, threat, {}, 50000, 0.001, RandomStream(6, 1), 1);
  const auto b = dual_lower_bound(0.9, family, threat, {}, 50000, 0.001, RandomStream(6, 1), 3);
  EXPECT_EQ(a.bound, b.bound);
  EXPECT_EQ(a.lambda_star, b.lambda_star);
}

TEST(RatiosForShift, MatchesShiftRatiosOnSameStream) {
  const auto family = SmoothingFamily::l1_power_tail(3, 1.0, 1.0);
  const std::vector<double> delta = {0.4, 0.0, 0.0};
  const RandomStream rng(5, 5);
  const auto direct = shift_ratios(family, delta, 20000, rng);
  const auto batch = sample_blocked(family, 20000, rng, 1);
  EXPECT_EQ(ratios_for_shift(batch, delta), direct.ratios);
}

}  // namespace
}  // namespace smoothcert
