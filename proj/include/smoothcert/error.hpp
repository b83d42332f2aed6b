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

#ifndef SMOOTHCERT_ERROR_HPP_
#define SMOOTHCERT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace smoothcert {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The (threat, family) pair or family variant has no implementation.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// A power-tail density was evaluated at its singular point.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A rejection sampler gave up because its acceptance rate collapsed.
class SamplerAbort : public Error {
 public:
  using Error::Error;
};

// The external classifier process misbehaved (timeout, bad framing, exit).
class TransportError : public Error {
 public:
  using Error::Error;
};

// A run configuration failed validation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace smoothcert

#endif  // SMOOTHCERT_ERROR_HPP_
