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

#ifndef SMOOTHCERT_NORMS_HPP_
#define SMOOTHCERT_NORMS_HPP_

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <string_view>

#include "smoothcert/error.hpp"

namespace smoothcert {

enum class Norm { kL1, kL2, kLinf };

inline std::string_view to_string(Norm norm) {
  switch (norm) {
    case Norm::kL1:
      return "l1";
    case Norm::kL2:
      return "l2";
    case Norm::kLinf:
      return "linf";
  }
  return "?";
}

inline Norm parse_norm(std::string_view text) {
  if (text == "l1") return Norm::kL1;
  if (text == "l2") return Norm::kL2;
  if (text == "linf") return Norm::kLinf;
  throw DomainError("unknown norm '" + std::string(text) + "' (expected l1, l2 or linf)");
}

// The three norms of one vector, gathered in a single pass.
struct NormTriple {
  double l1 = 0.0;
  double l2_squared = 0.0;
  double linf = 0.0;

  double l2() const { return std::sqrt(l2_squared); }
  double get(Norm norm) const {
    switch (norm) {
      case Norm::kL1:
        return l1;
      case Norm::kL2:
        return l2();
      case Norm::kLinf:
        return linf;
    }
    return 0.0;
  }
};

inline NormTriple norms_of(std::span<const double> v) {
  NormTriple out;
  for (double x : v) {
    const double a = std::fabs(x);
    out.l1 += a;
    out.l2_squared += x * x;
    out.linf = std::max(out.linf, a);
  }
  return out;
}

// Norms of (v - shift) without materializing the difference.
inline NormTriple norms_of_difference(std::span<const double> v, std::span<const double> shift) {
  NormTriple out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = v[i] - shift[i];
    const double a = std::fabs(x);
    out.l1 += a;
    out.l2_squared += x * x;
    out.linf = std::max(out.linf, a);
  }
  return out;
}

inline double norm_of(std::span<const double> v, Norm norm) { return norms_of(v).get(norm); }

}  // namespace smoothcert

#endif  // SMOOTHCERT_NORMS_HPP_
