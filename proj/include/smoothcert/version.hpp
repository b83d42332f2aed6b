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

#ifndef SMOOTHCERT_VERSION_HPP_
#define SMOOTHCERT_VERSION_HPP_

namespace smoothcert {

inline constexpr const char* kEngineName = "smoothcert";
inline constexpr const char* kEngineVersion = "1.0.0";

}  // namespace smoothcert

#endif  // SMOOTHCERT_VERSION_HPP_
