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

// Run configuration: a single JSON document, parsed strictly (unknown keys
// are errors) and echoed back with every default resolved.

#ifndef SMOOTHCERT_CONFIG_HPP_
#define SMOOTHCERT_CONFIG_HPP_

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "smoothcert/certify.hpp"
#include "smoothcert/discrepancy.hpp"
#include "smoothcert/error.hpp"
#include "smoothcert/external_classifier.hpp"
#include "smoothcert/family.hpp"
#include "smoothcert/threat.hpp"

namespace smoothcert {

using Json = nlohmann::ordered_json;

enum class Command { kCertify, kRadius, kSample, kPareto, kVerify, kBench };

inline std::string_view to_string(Command command) {
  switch (command) {
    case Command::kCertify:
      return "certify";
    case Command::kRadius:
      return "radius";
    case Command::kSample:
      return "sample";
    case Command::kPareto:
      return "pareto";
    case Command::kVerify:
      return "verify";
    case Command::kBench:
      return "bench";
  }
  return "?";
}

inline Command parse_command(std::string_view text) {
  for (Command c : {Command::kCertify, Command::kRadius, Command::kSample, Command::kPareto,
                    Command::kVerify, Command::kBench}) {
    if (to_string(c) == text) return c;
  }
  throw ConfigError("unknown command '" + std::string(text) + "'");
}

struct FamilySpec {
  FamilyKind kind = FamilyKind::kGaussian;
  std::size_t dimension = 2;
  double k = 0.0;
  double scale = 1.0;

  SmoothingFamily build() const { return SmoothingFamily::make(kind, dimension, k, scale); }
};

struct ClassifierSpec {
  std::string type = "constant";  // constant | ball | halfspace | external
  int label = 1;
  Norm norm = Norm::kL2;
  std::vector<double> center;  // empty: the origin
  double radius = 1.0;
  std::vector<double> w;
  double c = 0.0;
  std::vector<std::string> command;
  std::size_t batch_size = 1024;
  int timeout_ms = 30000;
};

struct InputSpec {
  std::string id;
  std::vector<double> x;
};

struct SampleCounts {
  std::size_t n1 = 100000;
  std::size_t n2 = 100000;
  std::size_t pilot_n1 = 1000;
  std::size_t pilot_n2 = 10000;
};

struct BudgetSpec {
  double alpha = 0.001;
  std::optional<double> alpha_p0;
  std::optional<double> alpha_mc;

  ConfidenceBudget build() const {
    ConfidenceBudget budget{alpha, alpha_p0.value_or(alpha / 2.0), alpha_mc.value_or(alpha / 2.0)};
    budget.validate();
    return budget;
  }
};

struct RadiusSpec {
  std::string closed_form;  // empty: dual-bound search; else cohen | teng | bilateral
  std::optional<double> p0;
  std::optional<double> p_b;
  double max_radius = kDefaultMaxRadius;
  std::vector<double> grid;  // explicit grid; overrides start/end/count
  double grid_start = 0.01;
  double grid_end = 4.0;
  std::size_t grid_count = 400;

  std::vector<double> resolved_grid() const {
    if (!grid.empty()) return grid;
    std::vector<double> out(grid_count);
    for (std::size_t i = 0; i < grid_count; ++i) {
      const double t =
          grid_count == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(grid_count - 1);
      out[i] = grid_start + t * (grid_end - grid_start);
    }
    return out;
  }
};

struct SampleSpec {
  std::size_t n = 1000;
};

struct ParetoSpec {
  std::size_t dimension = 5;
  double truth_radius = 0.65;
  std::vector<FamilyKind> families = {FamilyKind::kMixedNorm, FamilyKind::kL2PowerTail,
                                      FamilyKind::kLinfPure};
  std::size_t n = 100000;
  double k_min = 0.25;
  std::optional<double> k_max;  // default d - 1.05
  std::size_t k_count = 16;
  double sigma_min = 0.05;
  double sigma_max = 2.0;
  std::size_t sigma_count = 32;
};

struct VerifySpec {
  std::vector<std::string> experiments = {"oracle_chain", "worst_delta", "thin_shell",
                                          "mean_variance"};
  std::size_t oracle_n = 1000000;
  double oracle_alpha = 0.001;
  std::size_t worst_delta_resolution = 8;
  std::vector<std::size_t> thin_shell_dimensions = {1, 10, 100, 1000};
  std::size_t thin_shell_n = 10000;
  double thin_shell_delta = 0.05;
  std::size_t mean_variance_dimension = 100;
};

struct BenchSpec {
  std::size_t n = 1000000;
  std::size_t repeats = 3;
};

struct RunConfig {
  Command command = Command::kCertify;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::string out = "smoothcert_out";
  FamilySpec family;
  ThreatModel threat{Norm::kL2, 0.5};
  LambdaGrid lambda_grid;
  SampleCounts samples;
  BudgetSpec budget;
  std::string mode = "grid";  // grid | practical
  bool refine_lambda = false;
  ClassifierSpec classifier;
  std::vector<InputSpec> inputs;  // empty: one input "0" at the origin
  std::string inputs_file;
  RadiusSpec radius;
  SampleSpec sample;
  ParetoSpec pareto;
  VerifySpec verify;
  BenchSpec bench;
};

namespace internal {

// Reads fields from one JSON object and rejects any key it was not asked
// about.
class StrictObject {
 public:
  StrictObject(const Json& json, std::string path) : json_(json), path_(std::move(path)) {
    if (!json_.is_object()) throw ConfigError(where() + " must be a JSON object");
  }

  template <class T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    const auto it = json_.find(key);
    if (it == json_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError(field(key) + " has the wrong type");
    }
  }

  template <class T>
  void read(const char* key, std::optional<T>& out) {
    seen_.insert(key);
    const auto it = json_.find(key);
    if (it == json_.end() || it->is_null()) return;
    try {
      out = it->template get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError(field(key) + " has the wrong type");
    }
  }

  // Calls fn(value, path) if the key is present.
  template <class Fn>
  void nested(const char* key, Fn&& fn) {
    seen_.insert(key);
    const auto it = json_.find(key);
    if (it != json_.end()) fn(*it, field(key));
  }

  void finish() const {
    for (const auto& item : json_.items()) {
      if (!seen_.count(item.key())) throw ConfigError("unknown key " + field(item.key().c_str()));
    }
  }

 private:
  std::string where() const { return path_.empty() ? "config" : "'" + path_ + "'"; }
  std::string field(const char* key) const {
    return "'" + (path_.empty() ? std::string(key) : path_ + "." + key) + "'";
  }

  const Json& json_;
  std::string path_;
  std::set<std::string, std::less<>> seen_;
};

template <class Parse>
auto ParseEnum(const std::string& text, const std::string& path, Parse&& parse) {
  try {
    return parse(text);
  } catch (const Error& e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
}

inline std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace internal

// Lines of "<id> <x_1> ... <x_d>", separated by commas or whitespace. '#'
// starts a comment; blank lines are skipped.
inline std::vector<InputSpec> read_inputs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open inputs file '" + path + "'");
  std::vector<InputSpec> inputs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (internal::Trim(line).empty()) continue;
    for (char& ch : line) {
      if (ch == ',') ch = ' ';
    }
    std::istringstream fields(line);
    InputSpec input;
    fields >> input.id;
    std::string token;
    while (fields >> token) {
      double v = 0.0;
      const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
      if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
        throw ConfigError(path + ":" + std::to_string(line_no) + ": bad number '" + token + "'");
      }
      input.x.push_back(v);
    }
    inputs.push_back(std::move(input));
  }
  return inputs;
}

inline RunConfig parse_config(const Json& json) {
  RunConfig cfg;
  internal::StrictObject root(json, "");
  std::string command = std::string(to_string(cfg.command));
  root.read("command", command);
  cfg.command = parse_command(command);
  root.read("seed", cfg.seed);
  root.read("workers", cfg.workers);
  root.read("out", cfg.out);
  root.read("mode", cfg.mode);
  root.read("refine_lambda", cfg.refine_lambda);
  root.read("inputs_file", cfg.inputs_file);

  root.nested("family", [&](const Json& j, const std::string& path) {
    internal::StrictObject o(j, path);
    std::string kind = std::string(to_string(cfg.family.kind));
    o.read("kind", kind);
    cfg.family.kind = internal::ParseEnum(kind, path + ".kind", parse_family_kind);
    o.read("dimension", cfg.family.dimension);
    o.read("k", cfg.family.k);
    o.read("scale", cfg.family.scale);
    o.finish();
  });
  root.nested("threat", [&](const Json& j, const std::string& path) {
    internal::StrictObject o(j, path);
    std::string norm = std::string(to_string(cfg.threat.norm));
    o.read("norm", norm);
    cfg.threat.norm = internal::ParseEnum(norm, path + ".norm", parse_norm);
    o.read("radius", cfg.threat.radius);
    o.finish();
  });
  root.nested("lambda_grid", [&](const Json& j, const std::string& path) {
    internal::StrictObject o(j, path);
    o.read("start", cfg.lambda_grid.start);
    o.read("end", cfg.lambda_grid.end);
    o.read("count", cfg.lambda_grid.count);
    o.read("log_spaced", cfg.lambda_grid.log_spaced);
    o.finish();
  });
  root.nested("samples", [&](const Json& j, const std::string& path) {
    internal::StrictObject o(j, path);
    o.read("n1", cfg.samples.n1);
    o.read("n2", cfg.samples.n2);
    o.read("pilot_n1", cfg.samples.pilot_n1);
    o.read("pilot_n2", cfg.samples.pilot_n2);
    o.finish();
  });
  root.nested("budget", [&](const Json& j, const std::string& path) {
    internal::StrictObject o(j, path);
    o.read("alpha", cfg.budget.alpha);
    o.read("alpha_p0", cfg.budget.alpha_p0);
    o.read("alpha_mc", cfg.budget.alpha_mc);
    o.finish();
  });
  root.nested("classifier", [&](const Json& j, const std::string& path) {
    internal::StrictObject o(j, path);
    auto& c = cfg.classifier;
    o.read("type", c.type);
    o.read("label", c.label);
    std::string norm = std::string(to_string(c.norm));
    o.read("norm", norm);
    c.norm = internal::ParseEnum(norm, path + ".norm", parse_norm);
    o.read("center", c.center);
    o.read("radius", c.radius);
    o.read("w", c.w);
    o.read("c", c.c);
    o.nested("command", [&](const Json& cmd, const std::string& cmd_path) {
      if (cmd.is_string()) {
        c.command = {"/bin/sh", "-c", cmd.get<std::string>()};
      } else {
        try {
          c.command = cmd.get<std::vector<std::string>>();
        } catch (const nlohmann::json::exception&) {
          throw ConfigError("'" + cmd_path + "' must be a string or an array of strings");
        }
      }
    });
    o.read("batch_size", c.batch_size);
    o.read("timeout_ms", c.timeout_ms);
    o.finish();
  });
  root.nested("inputs", [&](const Json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError("'" + path + "' must be an array");
    for (std::size_t i = 0; i < j.size(); ++i) {
      internal::StrictObject o(j[i], path + "[" + std::to_string(i) + "]");
      InputSpec input;
      input.id = std::to_string(i);
      o.read("id", input.id);
      o.read("x", input.x);
      o.finish();
      cfg.inputs.push_back(std::move(input));
    }
  });
  root.nested("radius", [&](const Json& j, const std::string& path) {
    internal::StrictObject o(j, path);
    auto& r = cfg.radius;
    o.read("closed_form", r.closed_form);
    o.read("p0", r.p0);
    o.read("p_b", r.p_b);
    o.read("max_radius", r.max_radius);
    o.read("grid", r.grid);
    o.read("grid_start", r.grid_start);
    o.read("grid_end", r.grid_end);
    o.read("grid_count", r.grid_count);
    o.finish();
  });
  root.nested("sample", [&](const Json& j, const std::string& path) {
    internal::StrictObject o(j, path);
    o.read("n", cfg.sample.n);
    o.finish();
  });
  root.nested("pareto", [&](const Json& j, const std::string& path) {
    internal::StrictObject o(j, path);
    auto& p = cfg.pareto;
    o.read("dimension", p.dimension);
    o.read("truth_radius", p.truth_radius);
    std::vector<std::string> families;
    o.read("families", families);
    if (!families.empty()) {
      p.families.clear();
      for (const auto& f : families) {
        p.families.push_back(internal::ParseEnum(f, path + ".families", parse_family_kind));
      }
    }
    o.read("n", p.n);
    o.read("k_min", p.k_min);
    o.read("k_max", p.k_max);
    o.read("k_count", p.k_count);
    o.read("sigma_min", p.sigma_min);
    o.read("sigma_max", p.sigma_max);
    o.read("sigma_count", p.sigma_count);
    o.finish();
  });
  root.nested("verify", [&](const Json& j, const std::string& path) {
    internal::StrictObject o(j, path);
    auto& v = cfg.verify;
    o.read("experiments", v.experiments);
    o.read("oracle_n", v.oracle_n);
    o.read("oracle_alpha", v.oracle_alpha);
    o.read("worst_delta_resolution", v.worst_delta_resolution);
    o.read("thin_shell_dimensions", v.thin_shell_dimensions);
    o.read("thin_shell_n", v.thin_shell_n);
    o.read("thin_shell_delta", v.thin_shell_delta);
    o.read("mean_variance_dimension", v.mean_variance_dimension);
    o.finish();
  });
  root.nested("bench", [&](const Json& j, const std::string& path) {
    internal::StrictObject o(j, path);
    o.read("n", cfg.bench.n);
    o.read("repeats", cfg.bench.repeats);
    o.finish();
  });
  root.finish();
  return cfg;
}

inline RunConfig parse_config_text(std::string_view text) {
  Json json;
  try {
    json = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(json);
}

// Checks every cross-field invariant. Messages name the violated condition.
inline void validate(const RunConfig& cfg) {
  const auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  const auto& f = cfg.family;
  if (cfg.workers == 0) fail("workers must be >= 1");
  if (f.dimension == 0) fail("family.dimension must be >= 1");
  if (!(f.scale > 0.0) || !std::isfinite(f.scale)) fail("family.scale must be > 0");
  if (!(f.k >= 0.0) || !std::isfinite(f.k)) fail("family.k must be >= 0");
  if ((f.kind == FamilyKind::kGaussian || f.kind == FamilyKind::kLaplacian) && f.k != 0.0) {
    fail("family.k must be 0 for the " + std::string(to_string(f.kind)) + " family");
  }
  if (f.k > 0.0 && !(f.k < static_cast<double>(f.dimension) - 1.0)) {
    std::ostringstream msg;
    msg << "family.k must satisfy k < d - 1 (k = " << f.k << ", d = " << f.dimension << ")";
    fail(msg.str());
  }
  if (!(cfg.threat.radius >= 0.0) || !std::isfinite(cfg.threat.radius)) {
    fail("threat.radius must be a finite value >= 0");
  }
  try {
    cfg.lambda_grid.validate();
    cfg.budget.build();
  } catch (const DomainError& e) {
    fail(e.what());
  }
  if (cfg.mode != "grid" && cfg.mode != "practical") fail("mode must be 'grid' or 'practical'");
  const auto& s = cfg.samples;
  if (s.n1 == 0 || s.n2 == 0 || s.pilot_n1 == 0 || s.pilot_n2 == 0) {
    fail("sample counts must be >= 1");
  }
  const auto& c = cfg.classifier;
  if (c.type == "constant") {
    if (c.label != 0 && c.label != 1) fail("classifier.label must be 0 or 1");
  } else if (c.type == "ball") {
    if (c.norm == Norm::kL1) fail("classifier.norm must be l2 or linf for a ball");
    if (!c.center.empty() && c.center.size() != f.dimension) {
      fail("classifier.center must have dimension family.dimension");
    }
    if (!(c.radius >= 0.0)) fail("classifier.radius must be >= 0");
  } else if (c.type == "halfspace") {
    if (c.w.size() != f.dimension) fail("classifier.w must have dimension family.dimension");
  } else if (c.type == "external") {
    if (c.command.empty()) fail("classifier.command is required for an external classifier");
    if (c.batch_size == 0) fail("classifier.batch_size must be >= 1");
    if (c.timeout_ms <= 0) fail("classifier.timeout_ms must be > 0");
  } else {
    fail("classifier.type must be constant, ball, halfspace or external");
  }
  for (const auto& input : cfg.inputs) {
    if (input.x.size() != f.dimension) {
      fail("input '" + input.id + "' has dimension " + std::to_string(input.x.size()) +
           ", expected family.dimension = " + std::to_string(f.dimension));
    }
  }
  const auto& r = cfg.radius;
  if (!r.closed_form.empty() && r.closed_form != "cohen" && r.closed_form != "teng" &&
      r.closed_form != "bilateral") {
    fail("radius.closed_form must be cohen, teng or bilateral");
  }
  if (!(r.max_radius > 0.0)) fail("radius.max_radius must be > 0");
  if (r.grid.empty() && (r.grid_count == 0 || !(r.grid_start > 0.0) ||
                         !(r.grid_end >= r.grid_start) || r.grid_count > kMaxRadiusGrid)) {
    fail("radius grid needs 0 < grid_start <= grid_end and 1 <= grid_count <= " +
         std::to_string(kMaxRadiusGrid));
  }
  if (cfg.sample.n == 0) fail("sample.n must be >= 1");
  const auto& p = cfg.pareto;
  if (p.dimension < 2) fail("pareto.dimension must be >= 2");
  if (p.n == 0 || p.k_count == 0 || p.sigma_count == 0) fail("pareto counts must be >= 1");
  if (!(p.k_min > 0.0) || !(p.sigma_min > 0.0) || !(p.sigma_max >= p.sigma_min)) {
    fail("pareto grids need k_min > 0 and 0 < sigma_min <= sigma_max");
  }
  const double k_max = p.k_max.value_or(static_cast<double>(p.dimension) - 1.05);
  if (!(k_max >= p.k_min) || !(k_max < static_cast<double>(p.dimension))) {
    fail("pareto.k_max must satisfy k_min <= k_max < pareto.dimension");
  }
  const auto& v = cfg.verify;
  for (const auto& e : v.experiments) {
    if (e != "oracle_chain" && e != "worst_delta" && e != "thin_shell" && e != "mean_variance") {
      fail("unknown verify experiment '" + e + "'");
    }
  }
  if (v.oracle_n == 0 || v.thin_shell_n == 0) fail("verify sample counts must be >= 1");
  if (!(v.oracle_alpha > 0.0 && v.oracle_alpha < 1.0)) fail("verify.oracle_alpha must be in (0, 1)");
  if (v.worst_delta_resolution < 2) fail("verify.worst_delta_resolution must be >= 2");
  if (v.mean_variance_dimension < 3) fail("verify.mean_variance_dimension must be >= 3");
  if (cfg.bench.n == 0 || cfg.bench.repeats == 0) fail("bench counts must be >= 1");

  // Family and threat must form a pair with a known worst-case shift.
  if (cfg.command == Command::kCertify ||
      (cfg.command == Command::kRadius && r.closed_form.empty())) {
    try {
      worst_delta(cfg.threat, f.build());
    } catch (const UnsupportedError& e) {
      fail(e.what());
    }
  }
}

inline Json to_json(const RunConfig& cfg) {
  const auto kinds = [](const std::vector<FamilyKind>& v) {
    Json out = Json::array();
    for (auto k : v) out.push_back(std::string(to_string(k)));
    return out;
  };
  Json j;
  j["command"] = std::string(to_string(cfg.command));
  j["seed"] = cfg.seed;
  j["workers"] = cfg.workers;
  j["out"] = cfg.out;
  j["family"] = {{"kind", std::string(to_string(cfg.family.kind))},
                 {"dimension", cfg.family.dimension},
                 {"k", cfg.family.k},
                 {"scale", cfg.family.scale}};
  j["threat"] = {{"norm", std::string(to_string(cfg.threat.norm))},
                 {"radius", cfg.threat.radius}};
  j["lambda_grid"] = {{"start", cfg.lambda_grid.start},
                      {"end", cfg.lambda_grid.end},
                      {"count", cfg.lambda_grid.count},
                      {"log_spaced", cfg.lambda_grid.log_spaced}};
  j["samples"] = {{"n1", cfg.samples.n1},
                  {"n2", cfg.samples.n2},
                  {"pilot_n1", cfg.samples.pilot_n1},
                  {"pilot_n2", cfg.samples.pilot_n2}};
  const auto budget = cfg.budget.build();
  j["budget"] = {{"alpha", budget.alpha_total},
                 {"alpha_p0", budget.alpha_p0},
                 {"alpha_mc", budget.alpha_mc}};
  j["mode"] = cfg.mode;
  j["refine_lambda"] = cfg.refine_lambda;
  const auto& c = cfg.classifier;
  Json cj;
  cj["type"] = c.type;
  if (c.type == "constant") {
    cj["label"] = c.label;
  } else if (c.type == "ball") {
    cj["norm"] = std::string(to_string(c.norm));
    cj["center"] = c.center.empty() ? std::vector<double>(cfg.family.dimension, 0.0) : c.center;
    cj["radius"] = c.radius;
  } else if (c.type == "halfspace") {
    cj["w"] = c.w;
    cj["c"] = c.c;
  } else if (c.type == "external") {
    cj["command"] = c.command;
    cj["batch_size"] = c.batch_size;
    cj["timeout_ms"] = c.timeout_ms;
  }
  j["classifier"] = cj;
  Json inputs = Json::array();
  for (const auto& in : cfg.inputs) inputs.push_back({{"id", in.id}, {"x", in.x}});
  j["inputs"] = inputs;
  j["inputs_file"] = cfg.inputs_file;
  const auto& r = cfg.radius;
  j["radius"] = {{"closed_form", r.closed_form},
                 {"p0", r.p0 ? Json(*r.p0) : Json()},
                 {"p_b", r.p_b ? Json(*r.p_b) : Json()},
                 {"max_radius", r.max_radius},
                 {"grid", r.grid},
                 {"grid_start", r.grid_start},
                 {"grid_end", r.grid_end},
                 {"grid_count", r.grid_count}};
  j["sample"] = {{"n", cfg.sample.n}};
  const auto& p = cfg.pareto;
  j["pareto"] = {{"dimension", p.dimension},
                 {"truth_radius", p.truth_radius},
                 {"families", kinds(p.families)},
                 {"n", p.n},
                 {"k_min", p.k_min},
                 {"k_max", p.k_max.value_or(static_cast<double>(p.dimension) - 1.05)},
                 {"k_count", p.k_count},
                 {"sigma_min", p.sigma_min},
                 {"sigma_max", p.sigma_max},
                 {"sigma_count", p.sigma_count}};
  const auto& v = cfg.verify;
  j["verify"] = {{"experiments", v.experiments},
                 {"oracle_n", v.oracle_n},
                 {"oracle_alpha", v.oracle_alpha},
                 {"worst_delta_resolution", v.worst_delta_resolution},
                 {"thin_shell_dimensions", v.thin_shell_dimensions},
                 {"thin_shell_n", v.thin_shell_n},
                 {"thin_shell_delta", v.thin_shell_delta},
                 {"mean_variance_dimension", v.mean_variance_dimension}};
  j["bench"] = {{"n", cfg.bench.n}, {"repeats", cfg.bench.repeats}};
  return j;
}

}  // namespace smoothcert

#endif  // SMOOTHCERT_CONFIG_HPP_
