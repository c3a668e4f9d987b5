//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#include "larg/lab.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "larg/error.hpp"

namespace larg {

namespace fs = std::filesystem;

SpaceTag parse_space(const std::string &name, double a, std::size_t dim) {
  if (name == "c0") return SpaceTag::c0();
  if (name == "c") return SpaceTag::c();
  if (name == "ca") return a == 0.0 ? SpaceTag::c0() : SpaceTag::ca(a);
  if (name == "linf") return SpaceTag::finite_dim(dim);
  throw Error(ErrorCode::InvalidArgument,
              "unknown space '" + name + "' (expected c0, c, ca or linf)");
}

Engine parse_engine(const std::string &name) {
  if (name == "c") return Engine::C;
  if (name == "ca") return Engine::Ca;
  throw Error(ErrorCode::InvalidArgument,
              "unknown engine '" + name + "' (expected c or ca)");
}

void ExperimentConfig::validate() const {
  const auto fail = [](const std::string &why) {
    throw Error(ErrorCode::InvalidArgument, why);
  };
  parse_space(space, a, dim);
  parse_engine(engine);
  if (n < 2) fail("n must be >= 2");
  if (prefix_len == 0) fail("prefix_len must be >= 1");
  if (!(delta > 0.0)) fail("delta must be positive");
  if (!(p > 0.0 && p <= 1.0)) fail("p must lie in (0, 1]");
  if (window && !(*window > 0.0)) fail("window must be positive");
  if (!(guard > 0.0 && guard < 0.5)) fail("guard must lie in (0, 0.5)");
  if (!(delta_prime > 0.0 && delta_prime < delta)) {
    fail("delta_prime must lie in (0, delta)");
  }
  if (distance_sources == 0) fail("distance_sources must be >= 1");
  if (out_dir.empty()) fail("out_dir must be set");
}

SamplerConfig ExperimentConfig::sampler(std::uint64_t s) const {
  SamplerConfig c;
  c.seed = s;
  c.tag = parse_space(space, a, dim);
  c.prefix_len = c.tag.kind() == SpaceKind::FiniteDim ? dim : prefix_len;
  c.idf_guard = guard;
  c.window = window;
  return c;
}

void to_json(Json &j, const ExperimentConfig &c) {
  j = Json{{"space", c.space},
           {"a", c.a},
           {"dim", c.dim},
           {"n", c.n},
           {"prefix_len", c.prefix_len},
           {"seed", c.seed},
           {"delta", c.delta},
           {"p", c.p},
           {"window", c.window ? Json(*c.window) : Json(nullptr)},
           {"guard", c.guard},
           {"distance_pairs", c.distance_pairs},
           {"distance_sources", c.distance_sources},
           {"gec_trials", c.gec_trials},
           {"gec_max_ab", c.gec_max_ab},
           {"delta_prime", c.delta_prime},
           {"engine", c.engine},
           {"rounds", c.rounds},
           {"iop_budget", c.iop_budget},
           {"witness_scan", c.witness_scan},
           {"eps_samples", c.eps_samples},
           {"eps_targets", c.eps_targets},
           {"out_dir", c.out_dir}};
}

void from_json(const Json &j, ExperimentConfig &c) {
  if (!j.is_object()) {
    throw Error(ErrorCode::SchemaMismatch, "config must be a JSON object");
  }
  const Json known = ExperimentConfig{};
  for (const auto &[key, value] : j.items()) {
    if (!known.contains(key)) {
      throw Error(ErrorCode::SchemaMismatch, "unknown config key '" + key + "'");
    }
  }
  const auto get = [&](const char *key, auto &field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  get("space", c.space);
  get("a", c.a);
  get("dim", c.dim);
  get("n", c.n);
  get("prefix_len", c.prefix_len);
  get("seed", c.seed);
  get("delta", c.delta);
  get("p", c.p);
  if (j.contains("window")) {
    const Json &w = j.at("window");
    c.window = w.is_null() ? std::nullopt : std::optional<double>(w.get<double>());
  }
  get("guard", c.guard);
  get("distance_pairs", c.distance_pairs);
  get("distance_sources", c.distance_sources);
  get("gec_trials", c.gec_trials);
  get("gec_max_ab", c.gec_max_ab);
  get("delta_prime", c.delta_prime);
  get("engine", c.engine);
  get("rounds", c.rounds);
  get("iop_budget", c.iop_budget);
  get("witness_scan", c.witness_scan);
  get("eps_samples", c.eps_samples);
  get("eps_targets", c.eps_targets);
  get("out_dir", c.out_dir);
}

Json probe_report(const std::string &experiment, const Json &config,
                  const std::vector<std::uint64_t> &seeds, Json metrics,
                  Json counts, Json histograms) {
  return Json{{"experiment", experiment},
              {"tool", tool_info()},
              {"config", config},
              {"seeds", seeds},
              {"metrics", std::move(metrics)},
              {"counts", std::move(counts)},
              {"histograms", std::move(histograms)}};
}

int exit_code_for(const std::vector<PipelineCheck> &checks) {
  bool any = false;
  bool hard = false;
  for (const auto &c : checks) {
    if (c.passed) continue;
    any = true;
    if (!c.budget) hard = true;
  }
  if (!any) return kExitPass;
  return hard ? kExitCheckFailure : kExitBudget;
}

std::vector<SeqPoint> law_samples(const DenseSet &like, std::size_t count,
                                  std::uint64_t seed) {
  if (count == 0) return {};
  SamplerConfig c = like.config;
  c.seed = seed;
  return sample_dense_set(c, count).points;
}

Json eps_iso_report(const LargGraph &g, const LargGraph &h,
                    const std::vector<std::pair<Vertex, Vertex>> &map,
                    std::size_t samples, std::size_t targets,
                    std::uint64_t seed, const Json &config) {
  const auto xs = law_samples(g.vertices(), samples, split_seed(seed, 0));
  const auto ys = law_samples(h.vertices(), targets, split_seed(seed, 1));
  const EpsIsometry t = build_eps_isometry(g, h, map, xs);
  const EpsIsoReport r = check_eps_isometry(t.map, ys);
  const EpsIsoReport v =
      check_eps_isometry(pair_map(g, h, map), std::span<const SeqPoint>{});
  Json metrics{{"max_defect", r.max_defect},
               {"surjectivity_radius", r.surjectivity_radius},
               {"vertex_defect", v.max_defect},
               {"coverage_rate",
                xs.empty() ? 0.0
                           : static_cast<double>(t.map.size()) /
                                 static_cast<double>(xs.size())}};
  Json counts{{"matched", map.size()},
              {"samples", xs.size()},
              {"mapped", t.map.size()},
              {"uncovered", t.uncovered.size()},
              {"pairs", r.pairs},
              {"targets", r.targets}};
  Json rep = probe_report("eps_isometry", config, {seed}, std::move(metrics),
                          std::move(counts));
  rep["pass"] = r.pass && !map.empty();
  rep["vertex_pass"] = v.max_defect < 2.0;
  return rep;
}

PipelineResult run_pipeline(const ExperimentConfig &cfg) {
  cfg.validate();
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  // The output location is not part of the experiment, so artifacts written
  // to different directories stay comparable byte for byte.
  Json cj = cfg;
  cj.erase("out_dir");
  const auto stage = [](const std::string &name, auto &&f) {
    try {
      return f();
    } catch (const Error &e) {
      throw Error(e.code(), "pipeline stage '" + name + "': " + e.what());
    }
  };

  const std::uint64_t s = cfg.seed;
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t k = 0; k < 7; ++k) seeds.push_back(split_seed(s, k));

  PipelineResult out;
  auto &checks = out.checks;

  write_json(dir / "config.json", Json{{"config", cj}, {"tool", tool_info()}});
  DenseSet a = stage("sample", [&] {
    return sample_dense_set(cfg.sampler(seeds[0]), cfg.n);
  });
  DenseSet b = stage("sample", [&] {
    return sample_dense_set(cfg.sampler(seeds[1]), cfg.n);
  });
  write_json(dir / "set_a.json", a);
  write_json(dir / "set_b.json", b);
  checks.push_back({"idf", a.idf.ok && b.idf.ok, false, ""});

  const LargGraph g = stage("build", [&] {
    return LargGraph::generate(std::move(a), cfg.delta, cfg.p, seeds[2]);
  });
  const LargGraph h = stage("build", [&] {
    return LargGraph::generate(std::move(b), cfg.delta, cfg.p, seeds[3]);
  });
  write_json(dir / "graph_a.json", graph_to_json(g));
  write_json(dir / "graph_b.json", graph_to_json(h));
  checks.push_back({"threshold", check_threshold(g) && check_threshold(h), false, ""});

  const auto law = stage("verify-distance", [&] {
    const auto pairs = sample_pairs(g, cfg.distance_pairs, cfg.distance_sources,
                                    0.0, std::numeric_limits<double>::infinity(),
                                    seeds[4]);
    return distance_law_report(g, pairs);
  });
  write_json(dir / "distance_report.json",
             probe_report("distance_law", cj, {seeds[4]},
                          Json{{"agreement", law.agreement()}},
                          Json{{"pairs_tested", law.pairs_tested},
                               {"agree", law.agree},
                               {"lower_bound_violations", law.lower_bound_violations},
                               {"disconnected", law.disconnected},
                               {"unsafe_floors", law.unsafe_floors},
                               {"near_pairs", law.near_pairs},
                               {"near_ok", law.near_ok}},
                          Json{{"report", law}}));
  checks.push_back({"distance_lower_bound", law.lower_bound_violations == 0,
                    false,
                    std::to_string(law.lower_bound_violations) + " violations"});
  checks.push_back({"distance_law", law.agreement() >= 0.99, false,
                    "agreement " + std::to_string(law.agreement())});

  GecStatistics gec;
  if (cfg.gec_trials > 0) {
    gec = stage("probe-gec", [&] {
      const auto sizes = sizes_up_to(cfg.gec_max_ab);
      return gec_statistics(g, cfg.gec_trials, sizes, cfg.delta_prime, seeds[5]);
    });
    write_json(dir / "gec_report.json",
               probe_report("gec", cj, {seeds[5]}, Json{{"rate", gec.rate()}},
                            Json{{"trials", gec.trials},
                                 {"skipped", gec.skipped},
                                 {"successes", gec.successes},
                                 {"witnesses_verified", gec.witnesses_verified}},
                            Json{{"statistics", gec}}));
    checks.push_back({"gec_witnesses_verified",
                      gec.witnesses_verified == gec.successes, false, ""});
  }

  const Engine engine = parse_engine(cfg.engine);
  const RunResult run = stage("back-forth", [&] {
    return run_back_forth(g, h, engine, cfg.rounds,
                          EngineBudgets{cfg.iop_budget, cfg.witness_scan});
  });
  Json rj = run;
  rj["inputs"] = Json{{"graph_a", "graph_a.json"}, {"graph_b", "graph_b.json"}};
  rj["config"] = cj;
  rj["tool"] = tool_info();
  write_json(dir / "run.json", rj);
  const bool completed = run.outcome == Outcome::Completed;
  checks.push_back({"back_forth_sound",
                    run.verification_failures == 0 &&
                        run.outcome != Outcome::InvariantViolation,
                    false, run.reason});
  checks.push_back({"back_forth_completed", completed, true,
                    to_string(run.outcome) + " after " +
                        std::to_string(run.stages_completed) + " rounds"});

  const Json eps = stage("eps-iso", [&] {
    return eps_iso_report(g, h, run.map, cfg.eps_samples, cfg.eps_targets,
                          seeds[6], cj);
  });
  write_json(dir / "eps_report.json", eps);
  checks.push_back({"eps_vertex_defect", eps.at("vertex_pass").get<bool>(), false,
                    ""});
  checks.push_back({"eps_bounds", eps.at("pass").get<bool>(), !completed, ""});

  Json cjs = Json::array();
  bool all = true;
  for (const auto &c : checks) {
    cjs.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    all = all && c.passed;
  }
  out.exit_code = exit_code_for(checks);
  out.summary = probe_report(
      "pipeline", cj, seeds,
      Json{{"distance_agreement", law.agreement()},
           {"gec_rate", gec.rate()},
           {"rounds_completed_rate",
            cfg.rounds == 0 ? 1.0
                            : static_cast<double>(run.stages_completed) /
                                  static_cast<double>(cfg.rounds)},
           {"max_defect", eps.at("metrics").at("max_defect")},
           {"surjectivity_radius", eps.at("metrics").at("surjectivity_radius")},
           {"vertex_defect", eps.at("metrics").at("vertex_defect")}},
      Json{{"stages_completed", run.stages_completed},
           {"matched", run.map.size()},
           {"edges_a", g.edge_count()},
           {"edges_b", h.edge_count()}});
  out.summary["outcome"] = to_string(run.outcome);
  out.summary["checks"] = std::move(cjs);
  out.summary["pass"] = all;
  out.summary["exit_code"] = out.exit_code;
  out.summary["artifacts"] = {"config.json",   "set_a.json",
                              "set_b.json",    "graph_a.json",
                              "graph_b.json",  "distance_report.json",
                              "gec_report.json", "run.json",
                              "eps_report.json", "summary.json"};
  write_json(dir / "summary.json", out.summary);
  return out;
}

namespace {

struct Series {
  std::vector<double> values;
};

std::string number(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

}  // namespace

Aggregate aggregate_reports(const std::vector<Json> &reports) {
  if (reports.empty()) {
    throw Error(ErrorCode::InvalidArgument, "no reports to aggregate");
  }
  std::map<std::string, std::map<std::string, Series>> groups;
  for (const Json &r : reports) {
    if (!r.is_object() || !r.contains("experiment") || !r.contains("metrics")) {
      throw Error(ErrorCode::SchemaMismatch,
                  "input is not a report (needs 'experiment' and 'metrics')");
    }
    auto &group = groups[r.at("experiment").get<std::string>()];
    for (const char *section : {"metrics", "counts"}) {
      if (!r.contains(section)) continue;
      for (const auto &[key, value] : r.at(section).items()) {
        if (value.is_number()) {
          group[std::string(section) + "." + key].values.push_back(
              value.get<double>());
        }
      }
    }
  }

  Aggregate out;
  Json experiments = Json::object();
  std::ostringstream csv;
  csv << "experiment,metric,count,mean,stddev,min,max\n";
  for (const auto &[name, group] : groups) {
    Json metrics = Json::object();
    for (const auto &[metric, series] : group) {
      const auto &v = series.values;
      const double n = static_cast<double>(v.size());
      double mean = 0.0;
      for (double x : v) mean += x;
      mean /= n;
      double ss = 0.0;
      for (double x : v) ss += (x - mean) * (x - mean);
      const double sd = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
      const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
      metrics[metric] = Json{{"count", v.size()},
                             {"mean", mean},
                             {"stddev", sd},
                             {"min", *lo},
                             {"max", *hi}};
      csv << name << ',' << metric << ',' << v.size() << ',' << number(mean)
          << ',' << number(sd) << ',' << number(*lo) << ',' << number(*hi)
          << '\n';
    }
    experiments[name] = std::move(metrics);
  }
  out.summary = Json{{"tool", tool_info()},
                     {"reports", reports.size()},
                     {"experiments", std::move(experiments)}};
  out.csv = csv.str();
  return out;
}

}  // namespace larg
