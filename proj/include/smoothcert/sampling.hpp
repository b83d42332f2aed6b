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

// Exact samplers for every smoothing family.
//
// The power-tail families factor into an independent radius and direction.
// With radius density r^(d-1-k) exp(-r^2 / 2 sigma^2) the substitution
// G = r^2 / 2 sigma^2 gives G ~ Gamma((d - k) / 2, 1), so r = sigma sqrt(2G).
// The l1 radius r^(d-1-k) exp(-r / b) is Gamma(d - k, b) directly.

#ifndef SMOOTHCERT_SAMPLING_HPP_
#define SMOOTHCERT_SAMPLING_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "smoothcert/error.hpp"
#include "smoothcert/family.hpp"
#include "smoothcert/parallel.hpp"
#include "smoothcert/random.hpp"
#include "smoothcert/special.hpp"

namespace smoothcert {

// Rejection counters. Only the mixed-norm sampler rejects; every other
// family reports proposals == accepted.
struct SamplerTelemetry {
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;

  double acceptance_rate() const {
    return proposals == 0 ? 1.0 : static_cast<double>(accepted) / static_cast<double>(proposals);
  }
  SamplerTelemetry& operator+=(const SamplerTelemetry& other) {
    proposals += other.proposals;
    accepted += other.accepted;
    return *this;
  }
};

// Mixed-norm sampling aborts once this many proposals have been made with an
// acceptance rate below kMinAcceptanceRate.
inline constexpr std::uint64_t kMinProposalsBeforeAbort = 100000;
inline constexpr double kMinAcceptanceRate = 1e-6;

// n i.i.d. draws stored row-major as an n x d matrix.
struct SampleBatch {
  SmoothingFamily family;
  std::size_t n = 0;
  std::vector<double> points;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  SamplerTelemetry telemetry;

  std::size_t dimension() const { return family.dimension(); }
  std::span<const double> row(std::size_t i) const {
    return {points.data() + i * dimension(), dimension()};
  }
  std::span<double> row(std::size_t i) { return {points.data() + i * dimension(), dimension()}; }
};

namespace internal {

inline void UniformSphereDirection(std::span<double> out, RandomStream& rng) {
  double norm_sq;
  do {
    norm_sq = 0.0;
    for (double& x : out) {
      x = rng.normal();
      norm_sq += x * x;
    }
  } while (norm_sq == 0.0);
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& x : out) x *= inv;
}

// sigma sqrt(2 G) with G ~ Gamma((d - k) / 2, 1); strictly positive.
inline double SquaredExponentRadius(const SmoothingFamily& family, RandomStream& rng) {
  const double shape = 0.5 * (static_cast<double>(family.dimension()) - family.k());
  double g;
  do {
    g = gamma_sample(shape, 1.0, rng);
  } while (g == 0.0);
  return family.scale() * std::sqrt(2.0 * g);
}

inline void SampleRow(const SmoothingFamily& family, std::span<double> z, RandomStream& rng,
                      SamplerTelemetry& telemetry) {
  const std::size_t d = z.size();
  const double scale = family.scale();
  switch (family.kind()) {
    case FamilyKind::kGaussian:
      for (double& x : z) x = scale * rng.normal();
      break;
    case FamilyKind::kLaplacian:
      for (double& x : z) x = scale * rng.sign() * rng.exponential();
      break;
    case FamilyKind::kL2PowerTail: {
      const double r = SquaredExponentRadius(family, rng);
      UniformSphereDirection(z, rng);
      for (double& x : z) x *= r;
      break;
    }
    case FamilyKind::kL1PowerTail: {
      double r;
      do {
        r = gamma_sample(static_cast<double>(d) - family.k(), scale, rng);
      } while (r == 0.0);
      // Normalized exponentials with random signs follow the cone measure
      // of the l1 unit sphere.
      double total = 0.0;
      for (double& x : z) {
        x = rng.exponential();
        total += x;
      }
      for (double& x : z) x = r * rng.sign() * (x / total);
      break;
    }
    case FamilyKind::kLinfPure: {
      const double a = SquaredExponentRadius(family, rng);
      double largest = 0.0;
      for (double& x : z) {
        x = 2.0 * rng.uniform() - 1.0;
        largest = std::max(largest, std::fabs(x));
      }
      for (double& x : z) x = a * (x / largest);
      break;
    }
    case FamilyKind::kMixedNorm: {
      const double r = SquaredExponentRadius(family, rng);
      const double k = family.k();
      const double sqrt_d = std::sqrt(static_cast<double>(d));
      // Target direction law is proportional to ||u||_inf^-k on the sphere;
      // since ||u||_inf >= 1 / sqrt(d), (sqrt(d) ||u||_inf)^-k <= 1 is a
      // valid acceptance probability against the uniform proposal.
      for (;;) {
        UniformSphereDirection(z, rng);
        ++telemetry.proposals;
        double linf = 0.0;
        for (double x : z) linf = std::max(linf, std::fabs(x));
        const double accept = k == 0.0 ? 1.0 : std::exp(-k * std::log(sqrt_d * linf));
        if (rng.uniform() < accept) break;
        if (telemetry.proposals >= kMinProposalsBeforeAbort &&
            static_cast<double>(telemetry.accepted) <
                kMinAcceptanceRate * static_cast<double>(telemetry.proposals)) {
          throw SamplerAbort("mixed_norm rejection sampler acceptance below 1e-6 after " +
                             std::to_string(telemetry.proposals) + " proposals (k = " +
                             std::to_string(k) + ", d = " + std::to_string(d) + ")");
        }
      }
      for (double& x : z) x *= r;
      ++telemetry.accepted;
      return;
    }
  }
  ++telemetry.proposals;
  ++telemetry.accepted;
}

}  // namespace internal

// Fills `out` (rows x d, row-major) with i.i.d. draws.
inline void sample_into(const SmoothingFamily& family, std::span<double> out, RandomStream& rng,
                        SamplerTelemetry& telemetry) {
  const std::size_t d = family.dimension();
  if (out.size() % d != 0) throw DomainError("sample buffer is not a multiple of the dimension");
  for (std::size_t offset = 0; offset < out.size(); offset += d) {
    internal::SampleRow(family, out.subspan(offset, d), rng, telemetry);
  }
}

inline SampleBatch sample(const SmoothingFamily& family, std::size_t n, RandomStream& rng) {
  if (n == 0) throw DomainError("sample requires n >= 1");
  SampleBatch batch{family, n, std::vector<double>(n * family.dimension()), rng.seed(),
                    rng.stream_id(), {}};
  sample_into(family, batch.points, rng, batch.telemetry);
  return batch;
}

// Rows per block in the blocked samplers. Block b always draws from
// stream.substream(b), so results do not depend on the worker count.
inline constexpr std::size_t kSampleBlockSize = 8192;

inline std::size_t block_count(std::size_t n) {
  return (n + kSampleBlockSize - 1) / kSampleBlockSize;
}

// Draws n samples in fixed-size blocks, possibly in parallel, and calls
// fn(block_index, first_row, points, telemetry) for each block. `points` is
// valid only during the call.
template <class Fn>
void for_each_sample_block(const SmoothingFamily& family, std::size_t n,
                           const RandomStream& stream, std::size_t workers, Fn&& fn) {
  const std::size_t d = family.dimension();
  parallel_for(block_count(n), workers, [&](std::size_t block) {
    const std::size_t first = block * kSampleBlockSize;
    const std::size_t rows = std::min(kSampleBlockSize, n - first);
    thread_local std::vector<double> buffer;
    buffer.resize(rows * d);
    RandomStream rng = stream.substream(block);
    SamplerTelemetry telemetry;
    sample_into(family, buffer, rng, telemetry);
    fn(block, first, std::span<const double>(buffer.data(), rows * d), telemetry);
  });
}

// Blocked equivalent of sample(); reproducible for any worker count.
inline SampleBatch sample_blocked(const SmoothingFamily& family, std::size_t n,
                                  const RandomStream& stream, std::size_t workers) {
  if (n == 0) throw DomainError("sample requires n >= 1");
  const std::size_t d = family.dimension();
  SampleBatch batch{family, n, std::vector<double>(n * d), stream.seed(), stream.stream_id(), {}};
  std::vector<SamplerTelemetry> per_block(block_count(n));
  for_each_sample_block(family, n, stream, workers,
                        [&](std::size_t block, std::size_t first, std::span<const double> pts,
                            const SamplerTelemetry& telemetry) {
                          std::copy(pts.begin(), pts.end(), batch.points.begin() + first * d);
                          per_block[block] = telemetry;
                        });
  for (const auto& t : per_block) batch.telemetry += t;
  return batch;
}

}  // namespace smoothcert

#endif  // SMOOTHCERT_SAMPLING_HPP_
