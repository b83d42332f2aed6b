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

#ifndef SMOOTHCERT_THREAT_HPP_
#define SMOOTHCERT_THREAT_HPP_

#include <cmath>
#include <cstddef>
#include <string>

#include "smoothcert/error.hpp"
#include "smoothcert/norms.hpp"

namespace smoothcert {

// The perturbation set {delta : ||delta||_norm <= radius}.
struct ThreatModel {
  Norm norm = Norm::kL2;
  double radius = 0.0;

  ThreatModel() = default;
  ThreatModel(Norm n, double r) : norm(n), radius(r) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw DomainError("threat radius must be finite and >= 0, got " + std::to_string(r));
    }
  }

  friend bool operator==(const ThreatModel&, const ThreatModel&) = default;
};

// An l-infinity ball of radius r sits inside the l2 ball of radius sqrt(d) r,
// and for spherically symmetric smoothing the two certificates coincide.
inline ThreatModel linf_as_l2(const ThreatModel& threat, std::size_t dimension) {
  return ThreatModel(Norm::kL2, std::sqrt(static_cast<double>(dimension)) * threat.radius);
}

}  // namespace smoothcert

#endif  // SMOOTHCERT_THREAT_HPP_
