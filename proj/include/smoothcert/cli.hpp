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

// Command-line front end. parse_command_line() layers the JSON config, the
// SMOOTHCERT_SEED environment variable and flag overrides into a RunConfig;
// run() executes it and writes <out>/result.json, <out>/summary.csv and any
// experiment-specific CSVs. result.json never contains timings, so reruns
// with the same config, seed and worker count are byte-identical.

#ifndef SMOOTHCERT_CLI_HPP_
#define SMOOTHCERT_CLI_HPP_

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smoothcert/certify.hpp"
#include "smoothcert/classifier.hpp"
#include "smoothcert/closed_form.hpp"
#include "smoothcert/config.hpp"
#include "smoothcert/error.hpp"
#include "smoothcert/external_classifier.hpp"
#include "smoothcert/io.hpp"
#include "smoothcert/lab.hpp"
#include "smoothcert/parallel.hpp"
#include "smoothcert/sampling.hpp"

namespace smoothcert::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitTransport = 3;
inline constexpr int kExitSamplerAbort = 4;

inline constexpr const char* kSeedEnv = "SMOOTHCERT_SEED";

namespace internal {

inline std::unique_ptr<Classifier> MakeClassifier(const RunConfig& cfg) {
  const auto& c = cfg.classifier;
  const std::size_t d = cfg.family.dimension;
  if (c.type == "constant") {
    return std::make_unique<SyntheticClassifier>(SyntheticClassifier::constant(c.label));
  }
  if (c.type == "ball") {
    auto center = c.center.empty() ? std::vector<double>(d, 0.0) : c.center;
    return std::make_unique<SyntheticClassifier>(
        SyntheticClassifier::ball(c.norm, std::move(center), c.radius));
  }
  if (c.type == "halfspace") {
    return std::make_unique<SyntheticClassifier>(SyntheticClassifier::halfspace(c.w, c.c));
  }
  return std::make_unique<ExternalClassifier>(
      ExternalClassifierOptions{c.command, d, c.batch_size, c.timeout_ms});
}

inline std::vector<InputSpec> ResolveInputs(const RunConfig& cfg) {
  std::vector<InputSpec> inputs = cfg.inputs;
  if (!cfg.inputs_file.empty()) {
    for (auto& in : read_inputs_file(cfg.inputs_file)) {
      if (in.x.size() != cfg.family.dimension) {
        throw ConfigError("input '" + in.id + "' in " + cfg.inputs_file + " has dimension " +
                          std::to_string(in.x.size()) + ", expected family.dimension = " +
                          std::to_string(cfg.family.dimension));
      }
      inputs.push_back(std::move(in));
    }
  }
  if (inputs.empty()) inputs.push_back({"0", std::vector<double>(cfg.family.dimension, 0.0)});
  return inputs;
}

inline std::string FileSafe(std::string_view id) {
  std::string out(id);
  for (char& ch : out) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                    (ch >= '0' && ch <= '9') || ch == '-' || ch == '_' || ch == '.';
    if (!ok) ch = '_';
  }
  return out;
}

inline CsvWriter SummaryCsv(const Json& config) {
  return CsvWriter(config, {"input_id", "p0_lower", "radius", "bound", "certified"});
}

inline void RunCertify(const RunConfig& cfg, const Json& config, const std::filesystem::path& out) {
  const auto family = cfg.family.build();
  const auto budget = cfg.budget.build();
  const auto inputs = ResolveInputs(cfg);
  auto classifier = MakeClassifier(cfg);
  std::vector<Certificate> certs(inputs.size());
  const auto certify_one = [&](std::size_t i, std::size_t workers) {
    // Disjoint stream ids per input.
    const RandomStream rng(cfg.seed, i);
    if (cfg.mode == "practical") {
      certs[i] = certify_practical(*classifier, inputs[i].x, family, cfg.threat, cfg.lambda_grid,
                                   {cfg.samples.pilot_n1, cfg.samples.pilot_n2},
                                   {cfg.samples.n1, cfg.samples.n2}, budget, rng, workers,
                                   inputs[i].id, cfg.refine_lambda);
    } else {
      certs[i] = certify(*classifier, inputs[i].x, family, cfg.threat, cfg.lambda_grid,
                         cfg.samples.n1, cfg.samples.n2, budget, rng, workers, inputs[i].id);
    }
  };
  if (classifier->concurrent() && inputs.size() > 1 && cfg.workers > 1) {
    parallel_for(inputs.size(), cfg.workers, [&](std::size_t i) { certify_one(i, 1); });
  } else {
    for (std::size_t i = 0; i < inputs.size(); ++i) certify_one(i, cfg.workers);
  }

  Json result = result_header(config);
  Json list = Json::array();
  auto summary = SummaryCsv(config);
  for (const auto& cert : certs) {
    list.push_back(to_json(cert));
    summary.row() << cert.input_id << cert.p0_lower << cert.threat.radius << cert.bound
                  << cert.certified;
    const std::string id = FileSafe(cert.input_id);
    trace_csv(config, cert.trace).save(out / ("trace_" + id + ".csv"));
    if (cert.pilot) trace_csv(config, cert.pilot->trace).save(out / ("pilot_trace_" + id + ".csv"));
  }
  result["certificates"] = list;
  write_json_file(out / "result.json", result);
  summary.save(out / "summary.csv");
}

inline void RunRadius(const RunConfig& cfg, const Json& config, const std::filesystem::path& out) {
  const auto& r = cfg.radius;
  Json result = result_header(config);
  auto summary = SummaryCsv(config);
  if (!r.closed_form.empty()) {
    if (!r.p0) throw ConfigError("radius.p0 is required for a closed-form radius");
    const double scale = cfg.family.scale;
    const auto need_kind = [&](FamilyKind kind) {
      if (cfg.family.kind != kind) {
        throw ConfigError("closed form '" + r.closed_form + "' needs family.kind = " +
                          std::string(to_string(kind)));
      }
    };
    RadiusValue value;
    double bound = 0.0;
    try {
      if (r.closed_form == "cohen") {
        need_kind(FamilyKind::kGaussian);
        value = cohen_radius(*r.p0, scale, r.max_radius);
        bound = cohen_bound(*r.p0, scale, value.radius).value;
      } else if (r.closed_form == "teng") {
        need_kind(FamilyKind::kLaplacian);
        value = teng_radius(*r.p0, scale, r.max_radius);
        bound = teng_bound(*r.p0, scale, value.radius);
      } else {
        need_kind(FamilyKind::kGaussian);
        if (!r.p_b) throw ConfigError("radius.p_b is required for the bilateral radius");
        value = gaussian_bilateral_radius(*r.p0, *r.p_b, scale, r.max_radius);
        bound = std::numeric_limits<double>::quiet_NaN();
      }
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
    Json j;
    j["method"] = r.closed_form;
    j["p0"] = *r.p0;
    if (r.p_b) j["p_b"] = *r.p_b;
    j["scale"] = scale;
    j["radius"] = value.radius;
    j["certified"] = value.certifiable;
    j["saturated"] = value.saturated;
    if (!std::isnan(bound)) j["bound_at_radius"] = bound;
    result["closed_form"] = j;
    summary.row() << "closed_form" << *r.p0 << value.radius << bound << value.certifiable;
  } else {
    const auto family = cfg.family.build();
    const auto budget = cfg.budget.build();
    const auto inputs = ResolveInputs(cfg);
    auto classifier = MakeClassifier(cfg);
    const auto grid = r.resolved_grid();
    Json list = Json::array();
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const auto cert = certify_radius(*classifier, inputs[i].x, family, cfg.threat.norm, grid,
                                       cfg.lambda_grid, cfg.samples.n1, cfg.samples.n2, budget,
                                       RandomStream(cfg.seed, i), cfg.workers, inputs[i].id);
      list.push_back(to_json(cert));
      summary.row() << cert.input_id << cert.p0_lower << cert.radius << cert.bound
                    << cert.certified;
    }
    result["certificates"] = list;
  }
  write_json_file(out / "result.json", result);
  summary.save(out / "summary.csv");
}

inline void RunSample(const RunConfig& cfg, const Json& config, const std::filesystem::path& out) {
  const auto family = cfg.family.build();
  const std::size_t d = family.dimension();
  const auto batch = sample_blocked(family, cfg.sample.n, RandomStream(cfg.seed, 0), cfg.workers);
  std::vector<std::string> columns;
  for (std::size_t j = 0; j < d; ++j) columns.push_back("z" + std::to_string(j));
  CsvWriter samples(config, columns);
  for (std::size_t i = 0; i < batch.n; ++i) {
    auto row = samples.row();
    for (double v : batch.row(i)) row << v;
  }
  samples.save(out / "samples.csv");

  // Moments of the family's natural radius.
  const Norm norm = family.exponent_norm();
  CompensatedSum sum;
  CompensatedSum sum_sq;
  for (std::size_t i = 0; i < batch.n; ++i) {
    const double x = norms_of(batch.row(i)).get(norm);
    sum.add(x);
    sum_sq.add(x * x);
  }
  const double n = static_cast<double>(batch.n);
  const double mean = sum.value() / n;
  const double variance = std::max(sum_sq.value() / n - mean * mean, 0.0);
  Json result = result_header(config);
  result["n"] = batch.n;
  result["dimension"] = d;
  result["sampler"] = to_json(batch.telemetry);
  result["radius_norm"] = std::string(to_string(norm));
  result["sample_radius_mean"] = mean;
  result["sample_radius_variance"] = variance;
  CsvWriter summary(config, {"statistic", "value"});
  summary.row() << "sample_radius_mean" << mean;
  summary.row() << "sample_radius_variance" << variance;
  // The mixed-norm l2 radius has the l2 power-tail law.
  const auto stats = radius_stats(
      family.kind() == FamilyKind::kMixedNorm
          ? SmoothingFamily::l2_power_tail(d, family.k(), family.scale())
          : family);
  result["analytic_radius_mean"] = stats.mean;
  result["analytic_radius_variance"] = stats.variance;
  summary.row() << "analytic_radius_mean" << stats.mean;
  summary.row() << "analytic_radius_variance" << stats.variance;
  summary.row() << "acceptance_rate" << batch.telemetry.acceptance_rate();
  write_json_file(out / "result.json", result);
  summary.save(out / "summary.csv");
}

inline std::vector<ParetoFamilySpec> ParetoFamilies(const ParetoSpec& p) {
  const double k_max = p.k_max.value_or(static_cast<double>(p.dimension) - 1.05);
  const auto ks = k_grid_with_zero(p.k_min, k_max, p.k_count);
  const auto sigmas = log_grid(p.sigma_min, p.sigma_max, p.sigma_count);
  std::vector<ParetoFamilySpec> out;
  for (auto kind : p.families) out.push_back({kind, ks, sigmas});
  return out;
}

inline Json to_json(const DominanceReport& r) {
  return {{"dominant", std::string(to_string(r.dominant))},
          {"other", std::string(to_string(r.other))},
          {"shared_robustness_range", {r.range_lo, r.range_hi}},
          {"checked", r.checked},
          {"violations", r.violations},
          {"worst_accuracy_gap", r.worst_accuracy_gap},
          {"passed", r.passed()}};
}

inline void RunPareto(const RunConfig& cfg, const Json& config, const std::filesystem::path& out) {
  const auto& p = cfg.pareto;
  std::vector<double> x0(p.dimension, 0.0);
  const auto truth = SyntheticClassifier::ball(Norm::kL2, x0, p.truth_radius);
  const auto points = pareto_sweep(truth, x0, p.dimension, cfg.threat, ParetoFamilies(p), p.n,
                                   RandomStream(cfg.seed, 0), cfg.workers);
  const std::vector<std::string> notes = {
      "robustness: D(pi_0 || pi_delta*) at lambda = 1 (total variation), delta* = worst_delta",
      "accuracy: P(||x0 + z||_2 <= truth_radius), x0 = 0"};
  CsvWriter csv(config,
                {"family", "k", "scale", "accuracy", "accuracy_se", "robustness", "robustness_se",
                 "frontier"},
                notes);
  for (const auto& pt : points) {
    csv.row() << to_string(pt.family) << pt.k << pt.scale << pt.accuracy << pt.accuracy_se
              << pt.robustness << pt.robustness_se << pt.frontier;
  }
  csv.save(out / "pareto.csv");

  Json result = result_header(config);
  result["assumptions"] = notes;
  result["points"] = points.size();
  Json reports = Json::array();
  CsvWriter summary(config, {"dominant", "other", "checked", "violations", "passed"});
  const bool has_mixed =
      std::find(p.families.begin(), p.families.end(), FamilyKind::kMixedNorm) != p.families.end();
  for (auto other : p.families) {
    if (!has_mixed || other == FamilyKind::kMixedNorm) continue;
    const auto r = frontier_dominance(points, FamilyKind::kMixedNorm, other);
    reports.push_back(to_json(r));
    summary.row() << to_string(r.dominant) << to_string(r.other) << r.checked << r.violations
                  << r.passed();
  }
  result["dominance"] = reports;
  write_json_file(out / "result.json", result);
  summary.save(out / "summary.csv");
}

struct WorstDeltaCase {
  SmoothingFamily family;
  ThreatModel threat;
};

inline std::vector<WorstDeltaCase> DefaultWorstDeltaCases() {
  return {{SmoothingFamily::l2_power_tail(2, 1.0, 1.0), {Norm::kL2, 0.5}},
          {SmoothingFamily::laplacian(2, 1.0), {Norm::kL1, 1.0}},
          {SmoothingFamily::l1_power_tail(2, 1.0, 1.0), {Norm::kL1, 1.0}},
          {SmoothingFamily::mixed_norm(2, 1.0, 1.0), {Norm::kLinf, 0.5}}};
}

inline void RunVerify(const RunConfig& cfg, const Json& config, const std::filesystem::path& out) {
  const auto& v = cfg.verify;
  Json result = result_header(config);
  Json experiments;
  CsvWriter summary(config, {"experiment", "passed"});
  const RandomStream root(cfg.seed, 0);
  for (const auto& name : v.experiments) {
    bool passed = true;
    Json j;
    if (name == "oracle_chain") {
      const auto triples = default_oracle_triples();
      const auto rows = oracle_chain_report(triples, v.oracle_n, v.oracle_alpha,
                                            root.substream(1), cfg.workers);
      CsvWriter csv(config, {"sigma", "shift", "lambda", "closed_form", "quadrature", "mc",
                             "mc_epsilon", "mc_std_error", "quadrature_ok", "mc_ok"},
                    {"d = 2 gaussian; quadrature tolerance 1e-4; mc tolerance epsilon + 3 se"});
      for (const auto& r : rows) {
        csv.row() << r.sigma << r.shift << r.lambda << r.closed_form << r.quadrature << r.mc
                  << r.mc_epsilon << r.mc_std_error << r.quadrature_ok << r.mc_ok;
        passed = passed && r.passed();
      }
      csv.save(out / "oracle_chain.csv");
      j["rows"] = rows.size();
    } else if (name == "worst_delta") {
      const std::vector<double> lambdas = {0.5, 1.0, 2.0};
      CsvWriter csv(config,
                    {"family", "k", "threat_norm", "threat_radius", "lambda", "predicted_value",
                     "max_value", "max_x", "max_y", "max_excess", "interior_margin",
                     "predicted_spread", "passed"},
                    {"d = 2 quadrature over the first quadrant of the threat ball"});
      Json cases = Json::array();
      for (const auto& c : DefaultWorstDeltaCases()) {
        const auto rep = worst_delta_grid_check(c.family, c.threat, lambdas,
                                                v.worst_delta_resolution, {},
                                                kWorstDeltaTolerance, cfg.workers);
        double min_margin = std::numeric_limits<double>::infinity();
        for (const auto& s : rep.summaries) {
          csv.row() << rep.family << rep.k << to_string(c.threat.norm) << c.threat.radius
                    << s.lambda << s.predicted_value << s.max_value << s.max_x << s.max_y
                    << s.max_excess << s.interior_margin << s.predicted_spread << s.passed;
          min_margin = std::min(min_margin, s.interior_margin);
        }
        cases.push_back({{"family", rep.family},
                         {"threat", to_json(c.threat)},
                         {"min_interior_margin", min_margin},
                         {"passed", rep.passed()}});
        passed = passed && rep.passed();
      }
      csv.save(out / "worst_delta.csv");
      j["cases"] = cases;
    } else if (name == "thin_shell") {
      const auto rows = thin_shell_report(v.thin_shell_dimensions, v.thin_shell_n,
                                          root.substream(2), v.thin_shell_delta, cfg.workers);
      CsvWriter csv(config,
                    {"d", "n", "gaussian_fraction", "gaussian_relative_fraction",
                     "laplace_fraction", "laplace_relative_fraction", "laplace_chebyshev_floor"},
                    {"gaussian: ||z||_2 in sqrt(d) +- 4; laplace: ||z||_1 / d in 1 +- "
                     "1/sqrt(d delta); relative: within +-10% of the centre"});
      for (const auto& r : rows) {
        csv.row() << r.d << r.n << r.gaussian_fraction << r.gaussian_relative_fraction
                  << r.laplace_fraction << r.laplace_relative_fraction
                  << r.laplace_chebyshev_floor;
        if (r.d >= 1000) {
          passed = passed && r.gaussian_fraction >= 0.99 &&
                   r.laplace_fraction >= r.laplace_chebyshev_floor;
        }
      }
      csv.save(out / "thin_shell.csv");
    } else if (name == "mean_variance") {
      const std::size_t d = v.mean_variance_dimension;
      const auto sigmas = log_grid(0.25, 2.0, 15);
      std::vector<double> ks;
      const double k_top = static_cast<double>(d) - 1.5;
      for (int i = 0; i <= 20; ++i) ks.push_back(k_top * i / 20.0);
      const auto rows = mean_variance_curve(d, sigmas, ks);
      CsvWriter csv(config, {"curve", "parameter", "mean", "variance"},
                    {"l2_power_tail radius moments; sigma curve at k = 0, k curve at sigma = 1"});
      for (const auto& r : rows) csv.row() << r.curve << r.parameter << r.mean << r.variance;
      csv.save(out / "mean_variance.csv");
      const double slope = log_log_slope(rows, "sigma");
      const double k_half = k_for_mean_ratio(d, 1.0, 0.5);
      const auto base = radius_stats(SmoothingFamily::l2_power_tail(d, 0.0, 1.0));
      const auto half = radius_stats(SmoothingFamily::l2_power_tail(d, k_half, 1.0));
      const double k_variance_ratio = half.variance / base.variance;
      j["sigma_curve_log_log_slope"] = slope;
      j["k_at_half_mean"] = k_half;
      j["k_curve_variance_ratio_at_half_mean"] = k_variance_ratio;
      j["sigma_curve_variance_ratio_at_half_mean"] = 0.25;
      passed = std::fabs(slope - 2.0) <= 0.05 && k_variance_ratio > 0.25;
    }
    j["passed"] = passed;
    experiments[name] = j;
    summary.row() << name << passed;
  }
  result["experiments"] = experiments;
  write_json_file(out / "result.json", result);
  summary.save(out / "summary.csv");
}

inline void RunBench(const RunConfig& cfg, const Json& config, const std::filesystem::path& out) {
  const auto& b = cfg.bench;
  const std::size_t d = cfg.family.dimension;
  std::vector<SmoothingFamily> families = {SmoothingFamily::gaussian(d, 1.0),
                                           SmoothingFamily::laplacian(d, 1.0)};
  if (d >= 3) {
    const double k = 0.5 * static_cast<double>(d - 1);
    families.push_back(SmoothingFamily::l2_power_tail(d, k, 1.0));
    families.push_back(SmoothingFamily::l1_power_tail(d, k, 1.0));
    families.push_back(SmoothingFamily::linf_pure(d, k, 1.0));
    families.push_back(SmoothingFamily::mixed_norm(d, k, 1.0));
  }
  // Timings go to bench.csv only, keeping result.json deterministic.
  CsvWriter csv(config, {"family", "task", "n", "repeat", "seconds", "items_per_second"});
  Json result = result_header(config);
  Json runs = Json::array();
  for (std::size_t f = 0; f < families.size(); ++f) {
    const auto& family = families[f];
    const auto delta = std::vector<double>(d, 0.1);
    for (std::size_t rep = 0; rep < b.repeats; ++rep) {
      const RandomStream rng(cfg.seed, f * 1000 + rep);
      auto t0 = std::chrono::steady_clock::now();
      const auto batch = shift_ratios(family, delta, b.n, rng, cfg.workers);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const auto est = estimate_from_ratios(batch.ratios, 1.0, 0.5);
      csv.row() << family.name() << "shift_ratios" << b.n << rep << secs
                << static_cast<double>(b.n) / secs;
      runs.push_back({{"family", std::string(family.name())},
                      {"task", "shift_ratios"},
                      {"n", b.n},
                      {"repeat", rep},
                      {"tv_estimate", est.mean},
                      {"sampler", to_json(batch.telemetry)}});
    }
  }
  csv.save(out / "bench.csv");
  csv.save(out / "summary.csv");
  result["runs"] = runs;
  write_json_file(out / "result.json", result);
}

}  // namespace internal

// Executes a validated configuration. Errors propagate as exceptions; see
// exit_code_for() for the mapping used by main().
inline void run(const RunConfig& cfg) {
  validate(cfg);
  const Json config = to_json(cfg);
  const std::filesystem::path out(cfg.out);
  std::filesystem::create_directories(out);
  switch (cfg.command) {
    case Command::kCertify:
      internal::RunCertify(cfg, config, out);
      break;
    case Command::kRadius:
      internal::RunRadius(cfg, config, out);
      break;
    case Command::kSample:
      internal::RunSample(cfg, config, out);
      break;
    case Command::kPareto:
      internal::RunPareto(cfg, config, out);
      break;
    case Command::kVerify:
      internal::RunVerify(cfg, config, out);
      break;
    case Command::kBench:
      internal::RunBench(cfg, config, out);
      break;
  }
}

// Parses argv into a RunConfig. Precedence: flags, then the config
// document, then SMOOTHCERT_SEED for the seed, then built-in defaults.
// Returns nullopt when CLI11 handled the arguments itself (e.g. --help);
// `exit_code` then holds the status to return.
inline std::optional<RunConfig> parse_command_line(int argc, const char* const* argv,
                                                   int& exit_code) {
  CLI::App app{"Randomized-smoothing certification engine"};
  std::string command;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::string> out;
  std::optional<std::string> mode;
  std::optional<double> lambda_start, lambda_end, alpha, p0, p_b;
  std::optional<std::size_t> lambda_count, n1, n2;
  std::optional<std::string> closed_form;
  app.add_option("command", command, "certify | radius | sample | pareto | verify | bench")
      ->required();
  app.add_option("-c,--config", config_path, "JSON config file, or '-' for stdin");
  app.add_option("--seed", seed, "Seed (default: config, then $SMOOTHCERT_SEED, then 0)");
  app.add_option("--workers", workers, "Worker threads (default: available parallelism)");
  app.add_option("--out", out, "Output directory");
  app.add_option("--mode", mode, "Certification mode: grid | practical");
  app.add_option("--lambda-start", lambda_start, "First lambda of the grid");
  app.add_option("--lambda-end", lambda_end, "Last lambda of the grid");
  app.add_option("--lambda-count", lambda_count, "Number of lambda grid points");
  app.add_option("--n1", n1, "Classifier evaluations for p0");
  app.add_option("--n2", n2, "Samples for the discrepancy estimate");
  app.add_option("--alpha", alpha, "Total failure probability");
  app.add_option("--closed-form", closed_form, "radius: cohen | teng | bilateral");
  app.add_option("--p0", p0, "radius: probability of the top class");
  app.add_option("--p-b", p_b, "radius: probability of the runner-up class (bilateral)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    exit_code = app.exit(e);
    if (exit_code != 0) exit_code = kExitConfig;
    return std::nullopt;
  }

  Json json = Json::object();
  if (!config_path.empty()) {
    std::string text;
    if (config_path == "-") {
      text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot open config '" + config_path + "'");
      text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    try {
      json = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
  }
  if (json.is_object() && json.contains("command") && json["command"] != command) {
    throw ConfigError("config command '" + json["command"].dump() +
                      "' does not match the command line '" + command + "'");
  }
  if (json.is_object()) json["command"] = command;
  RunConfig cfg = parse_config(json);

  if (!json.contains("seed")) {
    if (const char* env = std::getenv(kSeedEnv); env && *env) {
      std::uint64_t v = 0;
      const std::string_view s(env);
      const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw ConfigError(std::string(kSeedEnv) + " must be a nonnegative integer");
      }
      cfg.seed = v;
    }
  }
  if (!json.contains("workers")) cfg.workers = default_workers();
  if (seed) cfg.seed = *seed;
  if (workers) cfg.workers = *workers;
  if (out) cfg.out = *out;
  if (mode) cfg.mode = *mode;
  if (lambda_start) cfg.lambda_grid.start = *lambda_start;
  if (lambda_end) cfg.lambda_grid.end = *lambda_end;
  if (lambda_count) cfg.lambda_grid.count = *lambda_count;
  if (n1) cfg.samples.n1 = *n1;
  if (n2) cfg.samples.n2 = *n2;
  if (alpha) {
    cfg.budget.alpha = *alpha;
    cfg.budget.alpha_p0.reset();
    cfg.budget.alpha_mc.reset();
  }
  if (closed_form) cfg.radius.closed_form = *closed_form;
  if (p0) cfg.radius.p0 = *p0;
  if (p_b) cfg.radius.p_b = *p_b;
  exit_code = kExitOk;
  return cfg;
}

inline int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  if (dynamic_cast<const TransportError*>(&e)) return kExitTransport;
  if (dynamic_cast<const SamplerAbort*>(&e)) return kExitSamplerAbort;
  if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const UnsupportedError*>(&e)) {
    return kExitConfig;
  }
  return kExitFailure;
}

inline int main(int argc, const char* const* argv) {
  try {
    int code = kExitOk;
    const auto cfg = parse_command_line(argc, argv, code);
    if (!cfg) return code;
    run(*cfg);
    return kExitOk;
  } catch (const std::exception& e) {
    const int code = exit_code_for(e);
    std::cerr << "smoothcert: " << e.what() << "\n";
    return code;
  }
}

}  // namespace smoothcert::cli

#endif  // SMOOTHCERT_CLI_HPP_
