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

// Deterministic quadrature for D(lambda pi_0 || pi_delta) in dimension <= 3.
// This is an independent check on the Monte Carlo estimator and the closed
// forms: it normalizes pi_0 numerically on the same grid and integrates the
// positive part directly.

#ifndef SMOOTHCERT_QUADRATURE_HPP_
#define SMOOTHCERT_QUADRATURE_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "smoothcert/error.hpp"
#include "smoothcert/family.hpp"
#include "smoothcert/parallel.hpp"

namespace smoothcert {

// Zero fields select defaults for the family and dimension.
struct QuadratureGrid {
  std::size_t points_per_axis = 0;  // Cartesian midpoint rule on [-L, L]^d
  double half_width = 0.0;          // L
  std::size_t radial_points = 0;    // polar rule (d = 2 power-tail families)
  std::size_t angular_points = 0;
};

namespace internal {

inline double DefaultHalfWidth(const SmoothingFamily& family, std::span<const double> delta) {
  double shift = 0.0;
  for (double x : delta) shift = std::max(shift, std::fabs(x));
  const double reach = family.l1_based() ? 30.0 : 9.0;
  return reach * family.scale() + shift;
}

// Positive-part integrals of lambda a_i - b_i, normalized by sum a_i.
inline std::vector<double> PositivePartIntegrals(std::span<const double> a,
                                                 std::span<const double> b,
                                                 std::span<const double> lambdas) {
  CompensatedSum total;
  for (double x : a) total.add(x);
  std::vector<double> out;
  out.reserve(lambdas.size());
  for (double lambda : lambdas) {
    CompensatedSum sum;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double v = lambda * a[i] - b[i];
      if (v > 0.0) sum.add(v);
    }
    out.push_back(std::clamp(sum.value() / total.value(), 0.0, std::max(lambda, 0.0)));
  }
  return out;
}

// Log kernel that maps the singular point of a power-tail family to +inf
// instead of throwing; the positive part is zero there anyway.
inline double LogKernelOrInfinity(const SmoothingFamily& family, const NormTriple& norms) {
  if (family.k() != 0.0 && norms.get(family.power_norm()) == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return family.log_kernel(norms);
}

}  // namespace internal

inline std::vector<double> discrepancy_quadrature(const SmoothingFamily& family,
                                                  std::span<const double> delta,
                                                  std::span<const double> lambdas,
                                                  QuadratureGrid grid = {}) {
  const std::size_t d = family.dimension();
  internal::CheckDimension(family, delta.size(), "delta");
  if (d > 3) throw UnsupportedError("discrepancy_quadrature supports d <= 3 only");
  for (double lambda : lambdas) {
    if (!(lambda >= 0.0)) throw DomainError("lambda must be >= 0");
  }
  if (grid.half_width == 0.0) {
    grid.half_width = internal::DefaultHalfWidth(family, delta);
  } else if (!(grid.half_width >= 8.0 * family.scale())) {
    throw DomainError("quadrature half width must cover at least 8 scale units");
  }
  const double half_width = grid.half_width;
  const bool polar = d == 2 && family.k() > 0.0;

  // Weighted log kernels of pi_0 and pi_delta at the nodes; exponentiated
  // in place below.
  std::vector<double> a;
  std::vector<double> b;

  if (polar) {
    if (family.k() >= 2.0) throw DomainError("polar quadrature requires k < d");
    const std::size_t nr = grid.radial_points ? grid.radial_points : 1200;
    const std::size_t nt = grid.angular_points ? grid.angular_points : 1024;
    // r = L t^m with m = 2 / (2 - k) turns r^(1-k) dr into a multiple of t dt.
    const double m = 2.0 / (2.0 - family.k());
    const double dt = 1.0 / static_cast<double>(nr);
    const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(nt);
    const std::size_t total = nr * nt;
    a.resize(total);
    b.resize(total);
    std::vector<double> cos_t(nt);
    std::vector<double> sin_t(nt);
    for (std::size_t j = 0; j < nt; ++j) {
      cos_t[j] = std::cos(dtheta * static_cast<double>(j));
      sin_t[j] = std::sin(dtheta * static_cast<double>(j));
    }
    for (std::size_t i = 0; i < nr; ++i) {
      const double t = (static_cast<double>(i) + 0.5) * dt;
      const double r = half_width * std::pow(t, m);
      const double jacobian = half_width * m * std::pow(t, m - 1.0) * dt * r * dtheta;
      for (std::size_t j = 0; j < nt; ++j) {
        const std::array<double, 2> z = {r * cos_t[j], r * sin_t[j]};
        const std::size_t idx = i * nt + j;
        const double log_weight = std::log(jacobian);
        a[idx] = log_weight + internal::LogKernelOrInfinity(family, norms_of(z));
        b[idx] = log_weight + internal::LogKernelOrInfinity(family, norms_of_difference(z, delta));
      }
    }
  } else {
    std::size_t per_axis = grid.points_per_axis;
    if (per_axis == 0) per_axis = d == 1 ? 200000 : (d == 2 ? 1600 : 160);
    per_axis += per_axis % 2;  // even count keeps the origin off the nodes
    const double h = 2.0 * half_width / static_cast<double>(per_axis);
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= per_axis;
    const double log_weight = static_cast<double>(d) * std::log(h);
    a.resize(total);
    b.resize(total);
    std::array<double, 3> z{};
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rest = idx;
      for (std::size_t axis = 0; axis < d; ++axis) {
        const std::size_t cell = rest % per_axis;
        rest /= per_axis;
        z[axis] = -half_width + (static_cast<double>(cell) + 0.5) * h;
      }
      const std::span<const double> point(z.data(), d);
      a[idx] = log_weight + internal::LogKernelOrInfinity(family, norms_of(point));
      b[idx] = log_weight + internal::LogKernelOrInfinity(family, norms_of_difference(point, delta));
    }
  }

  // Shift by the largest finite log value so nothing overflows.
  double shift = -std::numeric_limits<double>::infinity();
  for (double x : a) {
    if (std::isfinite(x)) shift = std::max(shift, x);
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = std::exp(a[i] - shift);
    b[i] = std::exp(b[i] - shift);
  }
  return internal::PositivePartIntegrals(a, b, lambdas);
}

inline double discrepancy_quadrature(const SmoothingFamily& family, std::span<const double> delta,
                                     double lambda, QuadratureGrid grid = {}) {
  const double lambdas[] = {lambda};
  return discrepancy_quadrature(family, delta, lambdas, grid)[0];
}

}  // namespace smoothcert

#endif  // SMOOTHCERT_QUADRATURE_HPP_
