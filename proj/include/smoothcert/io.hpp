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

// Result persistence: JSON documents and self-describing CSV files. Every
// CSV starts with '#' comment lines naming the engine version and echoing
// the configuration, followed by one header row.

#ifndef SMOOTHCERT_IO_HPP_
#define SMOOTHCERT_IO_HPP_

#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "json.hpp"
#include "smoothcert/certify.hpp"
#include "smoothcert/config.hpp"
#include "smoothcert/error.hpp"
#include "smoothcert/family.hpp"
#include "smoothcert/lab.hpp"
#include "smoothcert/version.hpp"

namespace smoothcert {

// Shortest decimal that round-trips.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline void write_text_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

inline void write_json_file(const std::filesystem::path& path, const Json& json) {
  write_text_file(path, json.dump(2) + "\n");
}

class CsvWriter {
 public:
  // `notes` become extra comment lines after the engine and config lines.
  CsvWriter(const Json& config, std::vector<std::string> columns,
            const std::vector<std::string>& notes = {})
      : width_(columns.size()) {
    text_ += std::string("# engine: ") + kEngineName + " " + kEngineVersion + "\n";
    text_ += "# config: " + config.dump() + "\n";
    for (const auto& note : notes) text_ += "# " + note + "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) text_ += ',';
      text_ += columns[i];
    }
    text_ += '\n';
  }

  class Row {
   public:
    explicit Row(CsvWriter& w) : w_(w) {}
    Row& operator<<(double v) { return cell(format_double(v)); }
    template <class T>
      requires(std::is_integral_v<T> && !std::is_same_v<T, bool>)
    Row& operator<<(T v) {
      return cell(std::to_string(v));
    }
    Row& operator<<(bool v) { return cell(v ? "true" : "false"); }
    Row& operator<<(std::string_view v) { return cell(Quote(v)); }
    Row& operator<<(const char* v) { return cell(Quote(v)); }
    ~Row() { w_.text_ += '\n'; }

   private:
    static std::string Quote(std::string_view v) {
      if (v.find_first_of(",\"\n") == std::string_view::npos) return std::string(v);
      std::string out = "\"";
      for (char ch : v) {
        if (ch == '"') out += '"';
        out += ch;
      }
      return out + "\"";
    }
    Row& cell(const std::string& s) {
      if (count_++) w_.text_ += ',';
      w_.text_ += s;
      return *this;
    }
    CsvWriter& w_;
    std::size_t count_ = 0;
  };

  Row row() { return Row(*this); }
  const std::string& text() const { return text_; }
  std::size_t width() const { return width_; }
  void save(const std::filesystem::path& path) const { write_text_file(path, text_); }

 private:
  std::string text_;
  std::size_t width_;
};

inline Json to_json(const SmoothingFamily& family) {
  return {{"kind", std::string(family.name())},
          {"dimension", family.dimension()},
          {"k", family.k()},
          {"scale", family.scale()}};
}

inline Json to_json(const ThreatModel& threat) {
  return {{"norm", std::string(to_string(threat.norm))}, {"radius", threat.radius}};
}

inline Json to_json(const ConfidenceBudget& budget) {
  return {{"alpha_total", budget.alpha_total},
          {"alpha_p0", budget.alpha_p0},
          {"alpha_mc", budget.alpha_mc}};
}

inline Json to_json(const SamplerTelemetry& t) {
  return {{"proposals", t.proposals},
          {"accepted", t.accepted},
          {"acceptance_rate", t.acceptance_rate()}};
}

inline Json to_json(const Certificate& cert) {
  Json j;
  j["input_id"] = cert.input_id;
  j["status"] = std::string(to_string(cert.status));
  j["certified"] = cert.certified;
  j["p0_lower"] = cert.p0_lower;
  j["bound"] = cert.bound;
  j["lambda_star"] = cert.lambda_star;
  j["successes"] = cert.evidence.successes;
  j["sample_counts"] = {{"n1", cert.n1}, {"n2", cert.n2}};
  j["threat"] = to_json(cert.threat);
  j["family"] = to_json(cert.family);
  j["budget"] = to_json(cert.budget);
  j["worst_delta"] = {{"rationale", std::string(to_string(cert.delta.rationale))},
                      {"effective_threat", to_json(cert.delta.effective_threat)},
                      {"vector", cert.delta.vector}};
  j["sampler"] = to_json(cert.telemetry);
  if (cert.pilot) {
    j["pilot"] = {{"successes", cert.pilot->evidence.successes},
                  {"trials", cert.pilot->evidence.trials},
                  {"p0_lower", cert.pilot->p0_lower},
                  {"lambda_hat", cert.pilot->lambda_hat},
                  {"refined", cert.pilot->refined}};
  }
  return j;
}

inline Json to_json(const RadiusCertificate& cert) {
  Json j;
  j["input_id"] = cert.input_id;
  j["status"] = std::string(to_string(cert.status));
  j["certified"] = cert.certified;
  j["radius"] = cert.radius;
  j["bound"] = cert.bound;
  j["p0_lower"] = cert.p0_lower;
  j["successes"] = cert.evidence.successes;
  j["sample_counts"] = {{"n1", cert.n1}, {"n2", cert.n2}};
  j["norm"] = std::string(to_string(cert.norm));
  j["family"] = to_json(cert.family);
  j["budget"] = to_json(cert.budget);
  Json probes = Json::array();
  for (const auto& p : cert.probes) {
    probes.push_back({{"radius", p.radius},
                      {"bound", p.bound},
                      {"lambda_star", p.lambda_star},
                      {"certified", p.certified}});
  }
  j["probes"] = probes;
  return j;
}

inline CsvWriter trace_csv(const Json& config, const std::vector<LambdaTracePoint>& trace) {
  CsvWriter csv(config, {"lambda", "d_mean", "epsilon", "bound", "std_error"});
  for (const auto& t : trace) csv.row() << t.lambda << t.d_mean << t.epsilon << t.bound << t.std_error;
  return csv;
}

// Engine name and version plus the resolved configuration, shared by every
// result document.
inline Json result_header(const Json& config) {
  Json j;
  j["engine"] = kEngineName;
  j["version"] = kEngineVersion;
  j["config"] = config;
  return j;
}

}  // namespace smoothcert

#endif  // SMOOTHCERT_IO_HPP_
