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

// Smoothing distributions: the Gaussian and Laplacian baselines, the l1/l2
// power-tail families ||z||^-k exp(-...), the pure l-infinity family and the
// mixed-norm family ||z||_inf^-k exp(-||z||_2^2 / 2 sigma^2).
//
// Densities are unnormalized kernels. Everything downstream works with
// ratios pi(z - delta) / pi(z), where the normalizing constants cancel.

#ifndef SMOOTHCERT_FAMILY_HPP_
#define SMOOTHCERT_FAMILY_HPP_

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "smoothcert/error.hpp"
#include "smoothcert/norms.hpp"
#include "smoothcert/special.hpp"

namespace smoothcert {

enum class FamilyKind { kGaussian, kLaplacian, kL2PowerTail, kL1PowerTail, kLinfPure, kMixedNorm };

inline std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kGaussian:
      return "gaussian";
    case FamilyKind::kLaplacian:
      return "laplacian";
    case FamilyKind::kL2PowerTail:
      return "l2_power_tail";
    case FamilyKind::kL1PowerTail:
      return "l1_power_tail";
    case FamilyKind::kLinfPure:
      return "linf_pure";
    case FamilyKind::kMixedNorm:
      return "mixed_norm";
  }
  return "?";
}

inline FamilyKind parse_family_kind(std::string_view text) {
  for (FamilyKind kind : {FamilyKind::kGaussian, FamilyKind::kLaplacian, FamilyKind::kL2PowerTail,
                          FamilyKind::kL1PowerTail, FamilyKind::kLinfPure,
                          FamilyKind::kMixedNorm}) {
    if (to_string(kind) == text) return kind;
  }
  throw DomainError("unknown smoothing family '" + std::string(text) + "'");
}

// An immutable smoothing distribution on R^d.
//
// `scale` is sigma for the squared-exponent families and b for the l1
// families. Gaussian and Laplacian are evaluated through exactly the same
// arithmetic as their k = 0 power-tail counterparts.
class SmoothingFamily {
 public:
  static SmoothingFamily gaussian(std::size_t d, double sigma) {
    return SmoothingFamily(FamilyKind::kGaussian, d, 0.0, sigma);
  }
  static SmoothingFamily laplacian(std::size_t d, double b) {
    return SmoothingFamily(FamilyKind::kLaplacian, d, 0.0, b);
  }
  static SmoothingFamily l2_power_tail(std::size_t d, double k, double sigma) {
    return SmoothingFamily(FamilyKind::kL2PowerTail, d, k, sigma);
  }
  static SmoothingFamily l1_power_tail(std::size_t d, double k, double b) {
    return SmoothingFamily(FamilyKind::kL1PowerTail, d, k, b);
  }
  static SmoothingFamily linf_pure(std::size_t d, double k, double sigma) {
    return SmoothingFamily(FamilyKind::kLinfPure, d, k, sigma);
  }
  static SmoothingFamily mixed_norm(std::size_t d, double k, double sigma) {
    return SmoothingFamily(FamilyKind::kMixedNorm, d, k, sigma);
  }
  static SmoothingFamily make(FamilyKind kind, std::size_t d, double k, double scale) {
    return SmoothingFamily(kind, d, k, scale);
  }

  FamilyKind kind() const { return kind_; }
  std::size_t dimension() const { return dimension_; }
  double k() const { return k_; }
  double scale() const { return scale_; }
  std::string_view name() const { return to_string(kind_); }

  // Norm inside the ||z||^-k factor.
  Norm power_norm() const {
    switch (kind_) {
      case FamilyKind::kGaussian:
      case FamilyKind::kL2PowerTail:
        return Norm::kL2;
      case FamilyKind::kLaplacian:
      case FamilyKind::kL1PowerTail:
        return Norm::kL1;
      case FamilyKind::kLinfPure:
      case FamilyKind::kMixedNorm:
        return Norm::kLinf;
    }
    return Norm::kL2;
  }

  // Norm inside the exponential.
  Norm exponent_norm() const {
    switch (kind_) {
      case FamilyKind::kLaplacian:
      case FamilyKind::kL1PowerTail:
        return Norm::kL1;
      case FamilyKind::kLinfPure:
        return Norm::kLinf;
      default:
        return Norm::kL2;
    }
  }

  // True for exp(-||z||^2 / 2 sigma^2), false for exp(-||z||_1 / b).
  bool squared_exponent() const { return exponent_norm() != Norm::kL1; }

  // Density depends on z only through ||z||_2.
  bool spherical() const {
    return kind_ == FamilyKind::kGaussian || kind_ == FamilyKind::kL2PowerTail;
  }

  bool l1_based() const {
    return kind_ == FamilyKind::kLaplacian || kind_ == FamilyKind::kL1PowerTail;
  }

  // Log kernel given the norms of the evaluation point.
  double log_kernel(const NormTriple& norms) const {
    double value;
    switch (exponent_norm()) {
      case Norm::kL1:
        value = -norms.l1 / scale_;
        break;
      case Norm::kLinf:
        value = -(norms.linf * norms.linf) * inv_two_scale_sq_;
        break;
      default:
        value = -norms.l2_squared * inv_two_scale_sq_;
        break;
    }
    if (k_ != 0.0) {
      const double radius = norms.get(power_norm());
      if (radius == 0.0) {
        throw SingularityError("power-tail density evaluated at the origin (k = " +
                               std::to_string(k_) + ")");
      }
      value -= k_ * std::log(radius);
    }
    return value;
  }

  friend bool operator==(const SmoothingFamily& a, const SmoothingFamily& b) {
    return a.kind_ == b.kind_ && a.dimension_ == b.dimension_ && a.k_ == b.k_ &&
           a.scale_ == b.scale_;
  }

 private:
  SmoothingFamily(FamilyKind kind, std::size_t d, double k, double scale)
      : kind_(kind), dimension_(d), k_(k), scale_(scale) {
    if (d == 0) throw DomainError("smoothing family needs dimension >= 1");
    if (!(scale > 0.0) || !std::isfinite(scale)) {
      throw DomainError("smoothing scale must be positive and finite");
    }
    if (!(k >= 0.0) || !std::isfinite(k)) throw DomainError("tail exponent k must be >= 0");
    if ((kind == FamilyKind::kGaussian || kind == FamilyKind::kLaplacian) && k != 0.0) {
      throw DomainError("gaussian and laplacian families have k = 0");
    }
    // The radius law r^(d-1-k) must be integrable at the origin.
    if (k >= static_cast<double>(d)) {
      throw DomainError("tail exponent k = " + std::to_string(k) +
                        " must be below the dimension d = " + std::to_string(d));
    }
    inv_two_scale_sq_ = 1.0 / (2.0 * scale * scale);
  }

  FamilyKind kind_;
  std::size_t dimension_;
  double k_;
  double scale_;
  double inv_two_scale_sq_ = 0.0;
};

namespace internal {

inline void CheckDimension(const SmoothingFamily& family, std::size_t size, const char* what) {
  if (size != family.dimension()) {
    throw DomainError(std::string(what) + " has dimension " + std::to_string(size) +
                      ", family expects " + std::to_string(family.dimension()));
  }
}

}  // namespace internal

// log phi(z), where phi is the family's unnormalized density.
inline double log_unnormalized_density(const SmoothingFamily& family, std::span<const double> z) {
  internal::CheckDimension(family, z.size(), "z");
  return family.log_kernel(norms_of(z));
}

// log pi_delta(z) - log pi_0(z) = log phi(z - delta) - log phi(z).
inline double log_density_ratio_shift(const SmoothingFamily& family, std::span<const double> z,
                                      std::span<const double> delta) {
  internal::CheckDimension(family, z.size(), "z");
  internal::CheckDimension(family, delta.size(), "delta");
  return family.log_kernel(norms_of_difference(z, delta)) - family.log_kernel(norms_of(z));
}

// Mode, mean and variance of the family's natural radius: ||z||_2 for the
// l2 families, ||z||_1 for the l1 families, ||z||_inf for the pure
// l-infinity family.
struct RadiusStats {
  double mode = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};

inline RadiusStats radius_stats(const SmoothingFamily& family) {
  const double d = static_cast<double>(family.dimension());
  const double k = family.k();
  const double s = family.scale();
  RadiusStats stats;
  switch (family.kind()) {
    case FamilyKind::kGaussian:
    case FamilyKind::kL2PowerTail:
    case FamilyKind::kLinfPure: {
      // Radius density proportional to r^m exp(-r^2 / 2 s^2).
      const double m = d - 1.0 - k;
      stats.mode = s * std::sqrt(std::max(m, 0.0));
      stats.mean = s * std::numbers::sqrt2 *
                   std::exp(log_gamma((m + 2.0) / 2.0) - log_gamma((m + 1.0) / 2.0));
      stats.variance = std::max(s * s * (m + 1.0) - stats.mean * stats.mean, 0.0);
      return stats;
    }
    case FamilyKind::kLaplacian:
    case FamilyKind::kL1PowerTail: {
      // Radius ~ Gamma(d - k, b).
      const double shape = d - k;
      stats.mode = s * std::max(shape - 1.0, 0.0);
      stats.mean = s * shape;
      stats.variance = s * s * shape;
      return stats;
    }
    case FamilyKind::kMixedNorm:
      break;
  }
  throw UnsupportedError("radius_stats is not available for the mixed_norm family");
}

// sigma such that the power-tail radius matches that of N(0, sigma0^2 I).
inline double matched_sigma(std::size_t d, double k, double sigma0) {
  const double dm1 = static_cast<double>(d) - 1.0;
  if (!(k >= 0.0) || !(k < dm1)) {
    throw DomainError("matched_sigma requires 0 <= k < d - 1 (k = " + std::to_string(k) +
                      ", d = " + std::to_string(d) + ")");
  }
  if (!(sigma0 > 0.0)) throw DomainError("matched_sigma requires sigma0 > 0");
  return std::sqrt(dm1 / (dm1 - k)) * sigma0;
}

}  // namespace smoothcert

#endif  // SMOOTHCERT_FAMILY_HPP_
