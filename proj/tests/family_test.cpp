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

#include "smoothcert/family.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "smoothcert/discrepancy.hpp"
#include "smoothcert/error.hpp"
#include "smoothcert/threat.hpp"

namespace smoothcert {
namespace {

TEST(SmoothingFamily, RejectsInvalidParameters) {
  EXPECT_THROW(SmoothingFamily::gaussian(0, 1.0), DomainError);
  EXPECT_THROW(SmoothingFamily::gaussian(2, 0.0), DomainError);
  EXPECT_THROW(SmoothingFamily::gaussian(2, -1.0), DomainError);
  EXPECT_THROW(SmoothingFamily::laplacian(2, INFINITY), DomainError);
  EXPECT_THROW(SmoothingFamily::l2_power_tail(3, -0.5, 1.0), DomainError);
  EXPECT_THROW(SmoothingFamily::l2_power_tail(3, 3.0, 1.0), DomainError);
  EXPECT_THROW(SmoothingFamily::make(FamilyKind::kGaussian, 3, 1.0, 1.0), DomainError);
  EXPECT_NO_THROW(SmoothingFamily::mixed_norm(3, 2.5, 1.0));
}

TEST(SmoothingFamily, NormAssignments) {
  const auto mixed = SmoothingFamily::mixed_norm(3, 1.0, 1.0);
  EXPECT_EQ(mixed.power_norm(), Norm::kLinf);
  EXPECT_EQ(mixed.exponent_norm(), Norm::kL2);
  const auto pure = SmoothingFamily::linf_pure(3, 1.0, 1.0);
  EXPECT_EQ(pure.power_norm(), Norm::kLinf);
  EXPECT_EQ(pure.exponent_norm(), Norm::kLinf);
  EXPECT_TRUE(SmoothingFamily::l2_power_tail(3, 1.0, 1.0).spherical());
  EXPECT_FALSE(mixed.spherical());
  EXPECT_TRUE(SmoothingFamily::l1_power_tail(3, 1.0, 1.0).l1_based());
}

TEST(SmoothingFamily, LogKernelMatchesDefinition) {
  const std::vector<double> z = {0.3, -1.2, 0.7};
  const double l1 = 0.3 + 1.2 + 0.7;
  const double l2sq = 0.09 + 1.44 + 0.49;
  const double linf = 1.2;
  const double k = 1.5, s = 0.8;
  EXPECT_NEAR(log_unnormalized_density(SmoothingFamily::gaussian(3, s), z), -l2sq / (2 * s * s),
              1e-14);
  EXPECT_NEAR(log_unnormalized_density(SmoothingFamily::laplacian(3, s), z), -l1 / s, 1e-14);
  EXPECT_NEAR(log_unnormalized_density(SmoothingFamily::l2_power_tail(3, k, s), z),
              -k * 0.5 * std::log(l2sq) - l2sq / (2 * s * s), 1e-13);
  EXPECT_NEAR(log_unnormalized_density(SmoothingFamily::l1_power_tail(3, k, s), z),
              -k * std::log(l1) - l1 / s, 1e-13);
  EXPECT_NEAR(log_unnormalized_density(SmoothingFamily::linf_pure(3, k, s), z),
              -k * std::log(linf) - linf * linf / (2 * s * s), 1e-13);
  EXPECT_NEAR(log_unnormalized_density(SmoothingFamily::mixed_norm(3, k, s), z),
              -k * std::log(linf) - l2sq / (2 * s * s), 1e-13);
}

TEST(SmoothingFamily, PowerTailSingularAtOrigin) {
  const std::vector<double> zero = {0.0, 0.0};
  EXPECT_THROW(log_unnormalized_density(SmoothingFamily::l2_power_tail(2, 1.0, 1.0), zero),
               SingularityError);
  EXPECT_NO_THROW(log_unnormalized_density(SmoothingFamily::gaussian(2, 1.0), zero));
}

TEST(SmoothingFamily, ShiftRatioIsKernelDifference) {
  const auto f = SmoothingFamily::gaussian(2, 1.0);
  const std::vector<double> z = {0.5, 0.25};
  const std::vector<double> delta = {1.0, 0.0};
  // exp(-(z - delta)^2 / 2 + z^2 / 2) = exp(z . delta - |delta|^2 / 2)
  EXPECT_NEAR(log_density_ratio_shift(f, z, delta), 0.5 - 0.5, 1e-14);
  EXPECT_THROW(log_density_ratio_shift(f, z, std::vector<double>{1.0}), DomainError);
}

TEST(RadiusStats, GaussianChiMoments) {
  // Chi(d) mean is sqrt(2) Gamma((d + 1) / 2) / Gamma(d / 2).
  const auto stats = radius_stats(SmoothingFamily::gaussian(3, 2.0));
  EXPECT_NEAR(stats.mean, 2.0 * 2.0 * std::sqrt(2.0 / M_PI), 1e-12);
  EXPECT_NEAR(stats.variance, 4.0 * (3.0 - 8.0 / M_PI), 1e-12);
  EXPECT_NEAR(stats.mode, 2.0 * std::sqrt(2.0), 1e-12);
}

TEST(RadiusStats, LaplacianGammaMoments) {
  const auto stats = radius_stats(SmoothingFamily::l1_power_tail(10, 4.0, 0.5));
  EXPECT_NEAR(stats.mean, 0.5 * 6.0, 1e-12);
  EXPECT_NEAR(stats.variance, 0.25 * 6.0, 1e-12);
  EXPECT_THROW(radius_stats(SmoothingFamily::mixed_norm(3, 1.0, 1.0)), UnsupportedError);
}

TEST(RadiusStats, PowerTailMeanDecreasesInK) {
  double prev = INFINITY;
  for (double k = 0.0; k < 99.0; k += 7.0) {
    const double m = radius_stats(SmoothingFamily::l2_power_tail(100, k, 1.0)).mean;
    EXPECT_LT(m, prev);
    prev = m;
  }
}

TEST(MatchedSigma, MatchesGaussianMode) {
  const double s = matched_sigma(10, 4.0, 1.0);
  EXPECT_NEAR(radius_stats(SmoothingFamily::l2_power_tail(10, 4.0, s)).mode,
              radius_stats(SmoothingFamily::gaussian(10, 1.0)).mode, 1e-12);
  EXPECT_THROW(matched_sigma(10, 9.0, 1.0), DomainError);
}

TEST(WorstDelta, BoundaryAndVertexShifts) {
  const auto l1 = worst_delta({Norm::kL1, 0.7}, SmoothingFamily::laplacian(3, 1.0));
  EXPECT_EQ(l1.vector, (std::vector<double>{0.7, 0.0, 0.0}));
  EXPECT_EQ(l1.rationale, WorstDeltaRationale::kL1Boundary);
  const auto l2 = worst_delta({Norm::kL2, 0.5}, SmoothingFamily::l2_power_tail(3, 1.0, 1.0));
  EXPECT_EQ(l2.vector, (std::vector<double>{0.5, 0.0, 0.0}));
  const auto vertex = worst_delta({Norm::kLinf, 0.2}, SmoothingFamily::mixed_norm(3, 1.0, 1.0));
  EXPECT_EQ(vertex.vector, (std::vector<double>{0.2, 0.2, 0.2}));
  EXPECT_EQ(vertex.rationale, WorstDeltaRationale::kLinfVertex);
}

TEST(WorstDelta, LinfWithSphericalFamilyUsesL2Equivalence) {
  const auto w = worst_delta({Norm::kLinf, 0.5}, SmoothingFamily::gaussian(16, 1.0));
  EXPECT_EQ(w.rationale, WorstDeltaRationale::kLinfViaL2Equivalence);
  EXPECT_EQ(w.effective_threat, ThreatModel(Norm::kL2, 2.0));
  EXPECT_EQ(w.vector[0], 2.0);
  for (std::size_t i = 1; i < 16; ++i) EXPECT_EQ(w.vector[i], 0.0);
}

TEST(WorstDelta, UnsupportedPairsThrow) {
  EXPECT_THROW(worst_delta({Norm::kL2, 0.5}, SmoothingFamily::laplacian(2, 1.0)),
               UnsupportedError);
  EXPECT_THROW(worst_delta({Norm::kL1, 0.5}, SmoothingFamily::gaussian(2, 1.0)),
               UnsupportedError);
  EXPECT_THROW(worst_delta({Norm::kLinf, 0.5}, SmoothingFamily::laplacian(2, 1.0)),
               UnsupportedError);
}

TEST(ThreatModel, RejectsNegativeRadius) {
  EXPECT_THROW(ThreatModel(Norm::kL2, -0.1), DomainError);
  EXPECT_THROW(ThreatModel(Norm::kL2, NAN), DomainError);
}

}  // namespace
}  // namespace smoothcert
