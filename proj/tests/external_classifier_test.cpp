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

#include "smoothcert/external_classifier.hpp"

#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "smoothcert/certify.hpp"
#include "smoothcert/classifier.hpp"
#include "smoothcert/error.hpp"
#include "smoothcert/sampling.hpp"

namespace smoothcert {
namespace {

ExternalClassifierOptions Worker(std::vector<std::string> args, std::size_t d,
                                 std::size_t batch = 1024, int timeout_ms = 10000) {
  args.insert(args.begin(), SMOOTHCERT_EVAL_WORKER);
  return {std::move(args), d, batch, timeout_ms};
}

TEST(ExternalClassifier, RoundTripMatchesSyntheticOnTenThousandPoints) {
  const std::size_t d = 3;
  const auto family = SmoothingFamily::gaussian(d, 1.0);
  const auto batch = sample_blocked(family, 10000, RandomStream(1, 2), 1);
  ExternalClassifier ext(Worker({"ball-l2", "1.5"}, d, 777));
  auto ref = SyntheticClassifier::ball(Norm::kL2, std::vector<double>(d, 0.0), 1.5);
  const auto got = evaluate(ext, batch);
  const auto want = evaluate(ref, batch);
  EXPECT_EQ(got, want);
  std::size_t ones = 0;
  for (auto v : got) ones += v;
  EXPECT_GT(ones, 1000u);
  EXPECT_LT(ones, 9000u);
}

TEST(ExternalClassifier, HalfspaceAndLinfModes) {
  const auto batch = sample_blocked(SmoothingFamily::laplacian(2, 1.0), 2000, RandomStream(1, 3), 1);
  ExternalClassifier half(Worker({"halfspace", "0.25", "1", "-2"}, 2));
  auto half_ref = SyntheticClassifier::halfspace({1.0, -2.0}, 0.25);
  EXPECT_EQ(evaluate(half, batch), evaluate(half_ref, batch));
  ExternalClassifier cube(Worker({"ball-linf", "0.8", "0.1", "-0.1"}, 2));
  auto cube_ref = SyntheticClassifier::ball(Norm::kLinf, {0.1, -0.1}, 0.8);
  EXPECT_EQ(evaluate(cube, batch), evaluate(cube_ref, batch));
}

TEST(ExternalClassifier, CertificateEqualsSyntheticCertificate) {
  const std::size_t d = 2;
  const std::vector<double> x0 = {0.2, 0.0};
  const auto family = SmoothingFamily::gaussian(d, 0.5);
  const ThreatModel threat(Norm::kL2, 0.1);
  ExternalClassifier ext(Worker({"ball-l2", "1"}, d));
  auto ref = SyntheticClassifier::ball(Norm::kL2, {0.0, 0.0}, 1.0);
  const auto a = certify(ext, x0, family, threat, {}, 5000, 5000, {}, RandomStream(4, 0));
  const auto b = certify(ref, x0, family, threat, {}, 5000, 5000, {}, RandomStream(4, 0));
  EXPECT_EQ(a.evidence.successes, b.evidence.successes);
  EXPECT_EQ(a.bound, b.bound);
}

TEST(ExternalClassifier, ReusesChildAcrossCalls) {
  ExternalClassifier ext(Worker({"constant", "1"}, 1, 3));
  std::vector<double> pts(10, 0.5);
  std::vector<std::uint8_t> labels(10, 9);
  for (int i = 0; i < 3; ++i) {
    ext.classify(pts, 1, labels);
    for (auto v : labels) EXPECT_EQ(v, 1);
  }
}

void ExpectTransportError(ExternalClassifier& ext, const std::string& fragment) {
  std::vector<double> pts(8, 0.1);
  std::vector<std::uint8_t> labels(4);
  try {
    ext.classify(pts, 2, labels);
    FAIL() << "expected TransportError containing '" << fragment << "'";
  } catch (const TransportError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
  // The adapter stays broken afterwards.
  EXPECT_THROW(ext.classify(pts, 2, labels), TransportError);
}

TEST(ExternalClassifier, MalformedResponse) {
  ExternalClassifier ext(Worker({"malformed"}, 2));
  ExpectTransportError(ext, "malformed");
}

TEST(ExternalClassifier, Timeout) {
  ExternalClassifier ext(Worker({"hang"}, 2, 1024, 300));
  ExpectTransportError(ext, "timed out");
}

TEST(ExternalClassifier, EarlyExit) {
  ExternalClassifier ext(Worker({"exit-early"}, 2));
  ExpectTransportError(ext, "exited");
}

TEST(ExternalClassifier, TooManyLabels) {
  ExternalClassifier ext(Worker({"extra"}, 2));
  ExpectTransportError(ext, "more labels");
}

TEST(ExternalClassifier, ImmediateExit) {
  ExternalClassifier ext(Worker({"garbage-exit"}, 2));
  std::vector<double> pts(8, 0.1);
  std::vector<std::uint8_t> labels(4);
  EXPECT_THROW(ext.classify(pts, 2, labels), TransportError);
}

TEST(ExternalClassifier, MissingExecutable) {
  ExternalClassifier ext({{"/nonexistent/eval_worker"}, 2, 16, 1000});
  std::vector<double> pts(8, 0.1);
  std::vector<std::uint8_t> labels(4);
  EXPECT_THROW(ext.classify(pts, 2, labels), TransportError);
}

TEST(ExternalClassifier, RejectsBadOptions) {
  EXPECT_THROW(ExternalClassifier({{}, 2, 16, 1000}), ConfigError);
  EXPECT_THROW(ExternalClassifier({{"x"}, 2, 0, 1000}), ConfigError);
  EXPECT_THROW(ExternalClassifier({{"x"}, 2, 16, 0}), ConfigError);
}

TEST(ExternalClassifier, FloatsRoundTripExactly) {
  for (double x : {0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, std::numeric_limits<double>::min(),
                   std::nextafter(1.0, 2.0)}) {
    std::string s;
    internal::AppendDouble(s, x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, x) << s;
  }
}

}  // namespace
}  // namespace smoothcert
