//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "larg/json_io.hpp"

namespace larg {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kExitPass = 0,
  kExitCheckFailure = 1,
  kExitUsage = 2,
  kExitBudget = 3,
};

/// Parses "c0", "c", "ca" (with `a`) or "linf" (with `dim`). Throws
/// InvalidArgument otherwise.
SpaceTag parse_space(const std::string &name, double a, std::size_t dim);
Engine parse_engine(const std::string &name);

struct ExperimentConfig {
  std::string space = "ca";
  double a = 0.5;
  std::size_t dim = 2;
  std::size_t n = 2000;
  std::size_t prefix_len = 1;
  std::uint64_t seed = 1;
  double delta = 1.0;
  double p = 0.5;
  std::optional<double> window = 3.0;
  double guard = kDefaultGuard;
  std::size_t distance_pairs = 10000;
  std::size_t distance_sources = 100;
  std::size_t gec_trials = 1000;
  std::size_t gec_max_ab = 3;
  double delta_prime = 0.1;
  std::string engine = "ca";
  std::size_t rounds = 10;
  std::size_t iop_budget = 0;
  std::size_t witness_scan = 0;
  std::size_t eps_samples = 2000;
  std::size_t eps_targets = 2000;
  std::string out_dir = "larg-out";

  /// Throws InvalidArgument on out-of-range fields.
  void validate() const;
  SamplerConfig sampler(std::uint64_t seed) const;

  friend bool operator==(const ExperimentConfig &,
                         const ExperimentConfig &) = default;
};

void to_json(Json &j, const ExperimentConfig &c);
/// Missing keys keep their defaults; unknown keys are a SchemaMismatch.
void from_json(const Json &j, ExperimentConfig &c);

/// {"experiment", "tool", "config", "seeds", "metrics", "counts",
///  "histograms"}; every rate in metrics lies in [0, 1].
Json probe_report(const std::string &experiment, const Json &config,
                  const std::vector<std::uint64_t> &seeds, Json metrics,
                  Json counts, Json histograms = Json::object());

struct PipelineCheck {
  std::string name;
  bool passed;
  bool budget;  // failure caused by a search budget or witness shortage
  std::string detail;
};

/// Exit code for a list of checks: 0 if all pass, 3 if every failure is a
/// budget or witness failure, 1 otherwise.
int exit_code_for(const std::vector<PipelineCheck> &checks);

struct PipelineResult {
  Json summary;
  std::vector<PipelineCheck> checks;
  int exit_code = kExitPass;
};

/// sample -> build x2 -> distance law -> g.e.c. -> back-and-forth ->
/// eps-isometry, writing every artifact into cfg.out_dir. A pure function
/// of the config.
PipelineResult run_pipeline(const ExperimentConfig &cfg);

/// Samples for the eps-isometry domain and targets: fresh draws from the
/// sampling law of each vertex set.
std::vector<SeqPoint> law_samples(const DenseSet &like, std::size_t count,
                                  std::uint64_t seed);

/// Eps-isometry report of a vertex map between g and h as a ProbeReport.
Json eps_iso_report(const LargGraph &g, const LargGraph &h,
                    const std::vector<std::pair<Vertex, Vertex>> &map,
                    std::size_t samples, std::size_t targets,
                    std::uint64_t seed, const Json &config);

struct Aggregate {
  Json summary;
  std::string csv;  // experiment,metric,count,mean,stddev,min,max
};

/// Groups ProbeReports (or pipeline summaries) by experiment and reduces
/// every numeric metric to count / mean / stddev / min / max. Throws
/// InvalidArgument on an empty list, SchemaMismatch on a non-report input.
Aggregate aggregate_reports(const std::vector<Json> &reports);

}  // namespace larg
