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

// Reference child process for the EVAL protocol.
//
//   eval_worker constant <label>
//   eval_worker ball-l2 <radius> [c1 ... cd]
//   eval_worker ball-linf <radius> [c1 ... cd]
//   eval_worker halfspace <c> <w1> ... <wd>     label = [w.x + c >= 0]
//
// Fault modes for transport tests: malformed (answers "x"), hang (never
// answers), exit-early (answers half of the first batch, then exits), extra
// (answers one label too many), garbage-exit (exits with status 7 at once).

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace {

double Parse(const char* text) {
  char* end = nullptr;
  const double v = std::strtod(text, &end);
  if (end == text || *end != '\0') {
    std::fprintf(stderr, "eval_worker: bad number '%s'\n", text);
    std::exit(2);
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: eval_worker <mode> [args]\n");
    return 2;
  }
  const std::string mode = argv[1];
  std::vector<double> args;
  for (int i = 2; i < argc; ++i) args.push_back(Parse(argv[i]));
  if (mode == "garbage-exit") return 7;

  std::ios::sync_with_stdio(false);
  std::string word;
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<double> x;
  while (std::cin >> word >> n >> d) {
    if (word != "EVAL") {
      std::fprintf(stderr, "eval_worker: unexpected '%s'\n", word.c_str());
      return 2;
    }
    std::string out;
    x.resize(d);
    for (std::size_t i = 0; i < n; ++i) {
      for (double& v : x) std::cin >> v;
      if (!std::cin) return 2;
      int label = 0;
      if (mode == "constant") {
        label = args.empty() ? 1 : static_cast<int>(args[0]);
      } else if (mode == "ball-l2" || mode == "ball-linf") {
        double norm = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          const double c = args.size() > 1 + j ? args[1 + j] : 0.0;
          const double diff = std::fabs(x[j] - c);
          norm = mode == "ball-l2" ? norm + diff * diff : std::max(norm, diff);
        }
        if (mode == "ball-l2") norm = std::sqrt(norm);
        label = norm <= args.at(0) ? 1 : 0;
      } else if (mode == "halfspace") {
        double s = args.at(0);
        for (std::size_t j = 0; j < d; ++j) s += args.at(1 + j) * x[j];
        label = s >= 0.0 ? 1 : 0;
      } else if (mode == "malformed") {
        out += "x\n";
        continue;
      } else if (mode == "hang") {
        for (;;) pause();
      } else if (mode == "exit-early") {
        if (i == n / 2) {
          std::fwrite(out.data(), 1, out.size(), stdout);
          std::fflush(stdout);
          return 0;
        }
        label = 1;
      } else if (mode == "extra") {
        label = 1;
      } else {
        std::fprintf(stderr, "eval_worker: unknown mode '%s'\n", mode.c_str());
        return 2;
      }
      out += label ? "1\n" : "0\n";
    }
    if (mode == "extra") out += "1\n";
    std::fwrite(out.data(), 1, out.size(), stdout);
    std::fflush(stdout);
  }
  return 0;
}
