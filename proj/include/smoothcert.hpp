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

// Umbrella header.

#ifndef SMOOTHCERT_SMOOTHCERT_HPP_
#define SMOOTHCERT_SMOOTHCERT_HPP_

#include "smoothcert/certify.hpp"
#include "smoothcert/classifier.hpp"
#include "smoothcert/closed_form.hpp"
#include "smoothcert/discrepancy.hpp"
#include "smoothcert/error.hpp"
#include "smoothcert/external_classifier.hpp"
#include "smoothcert/family.hpp"
#include "smoothcert/norms.hpp"
#include "smoothcert/parallel.hpp"
#include "smoothcert/quadrature.hpp"
#include "smoothcert/random.hpp"
#include "smoothcert/sampling.hpp"
#include "smoothcert/special.hpp"
#include "smoothcert/threat.hpp"
#include "smoothcert/version.hpp"

#endif  // SMOOTHCERT_SMOOTHCERT_HPP_
