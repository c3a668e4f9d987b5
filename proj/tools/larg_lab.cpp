//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver: sampling, graph building, probes, back-and-forth runs
// and report aggregation. Every artifact is JSON.
//

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <random>

#include <CLI11.hpp>

#include "larg/error.hpp"
#include "larg/lab.hpp"

namespace fs = std::filesystem;
using namespace larg;

namespace {

struct SampleOpts {
  std::string space = "c0";
  double a = 0.5;
  std::size_t dim = 2;
  std::size_t n = 500;
  std::size_t prefix_len = 64;
  std::uint64_t seed = 42;
  double guard = kDefaultGuard;
  double window = 0.0;
  std::string out = "set.json";
};

int cmd_sample(const SampleOpts &o) {
  SamplerConfig c;
  c.seed = o.seed;
  c.tag = parse_space(o.space, o.a, o.dim);
  c.prefix_len = c.tag.kind() == SpaceKind::FiniteDim ? o.dim : o.prefix_len;
  c.idf_guard = o.guard;
  if (o.window > 0.0) c.window = o.window;
  const DenseSet s = sample_dense_set(c, o.n);
  write_json(o.out, s);
  std::cout << s.size() << " points in " << c.tag.to_string() << ", idf "
            << (s.idf.ok ? "ok" : "VIOLATED") << " (" << s.stats.draws
            << " draws, " << s.stats.idf_rejections << " idf rejections, "
            << s.stats.window_rejections << " window rejections) -> " << o.out
            << "\n";
  return s.idf.ok ? kExitPass : kExitCheckFailure;
}

struct BuildOpts {
  std::string in;
  double delta = 1.0;
  double p = 0.5;
  std::uint64_t seed = 7;
  std::string out = "graph.json";
};

int cmd_build(const BuildOpts &o) {
  DenseSet s = with_schema(o.in, [&] { return dense_set_from_json(read_json(o.in)); });
  const LargGraph g = LargGraph::generate(std::move(s), o.delta, o.p, o.seed);
  write_json(o.out, graph_to_json(g));
  std::cout << g.size() << " vertices, " << g.edge_count() << " edges -> "
            << o.out << "\n";
  return check_threshold(g) ? kExitPass : kExitCheckFailure;
}

LargGraph load_graph(const std::string &path) {
  return with_schema(path, [&] { return graph_from_json(read_json(path)); });
}

struct DistanceOpts {
  std::string graph;
  std::size_t pairs = 10000;
  std::size_t sources = 100;
  double min_dist = 0.0;
  double max_dist = 0.0;
  std::uint64_t seed = 1;
  double target = 0.99;
  std::string out;
};

int cmd_verify_distance(const DistanceOpts &o) {
  const LargGraph g = load_graph(o.graph);
  const double hi = o.max_dist > 0.0 ? o.max_dist
                                     : std::numeric_limits<double>::infinity();
  const auto pairs = sample_pairs(g, o.pairs, o.sources, o.min_dist, hi, o.seed);
  const auto r = distance_law_report(g, pairs);
  std::cout << "far pairs " << r.pairs_tested << ", agreement " << r.agreement()
            << ", lower-bound violations " << r.lower_bound_violations
            << ", near pairs " << r.near_pairs << " (" << r.near_ok
            << " ok), unsafe floors " << r.unsafe_floors << "\n";
  if (!o.out.empty()) {
    write_json(o.out, probe_report("distance_law", Json{{"graph", o.graph}},
                                   {o.seed}, Json{{"agreement", r.agreement()}},
                                   Json{{"pairs_tested", r.pairs_tested},
                                        {"lower_bound_violations",
                                         r.lower_bound_violations}},
                                   Json{{"report", r}}));
  }
  const bool ok = r.lower_bound_violations == 0 && r.agreement() >= o.target &&
                  r.near_ok == r.near_pairs;
  return ok ? kExitPass : kExitCheckFailure;
}

struct GecOpts {
  std::string graph;
  std::size_t trials = 1000;
  std::size_t max_ab = 3;
  double delta_prime = 0.1;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_probe_gec(const GecOpts &o) {
  const LargGraph g = load_graph(o.graph);
  const auto sizes = sizes_up_to(o.max_ab);
  const auto st = gec_statistics(g, o.trials, sizes, o.delta_prime, o.seed);
  std::cout << "trials " << st.trials << " (skipped " << st.skipped
            << "), success rate " << st.rate() << ", verified "
            << st.witnesses_verified << "/" << st.successes << "\n";
  for (const auto &[k, v] : st.by_size) {
    std::cout << "  |A|=" << k.first << " |B|=" << k.second << ": " << v.rate()
              << " of " << v.trials << "\n";
  }
  if (!o.out.empty()) {
    write_json(o.out, probe_report("gec", Json{{"graph", o.graph}}, {o.seed},
                                   Json{{"rate", st.rate()}},
                                   Json{{"trials", st.trials},
                                        {"successes", st.successes},
                                        {"witnesses_verified",
                                         st.witnesses_verified}},
                                   Json{{"statistics", st}}));
  }
  return st.witnesses_verified == st.successes ? kExitPass : kExitCheckFailure;
}

struct IopOpts {
  std::string in;
  std::size_t k = 3;
  std::size_t first = 1;
  std::size_t last = 0;
  std::uint64_t seed = 1;
  double tolerance = 0.02;
  std::string out;
};

int cmd_check_iop(const IopOpts &o) {
  const DenseSet s = with_schema(o.in, [&] { return dense_set_from_json(read_json(o.in)); });
  if (o.k < 1 || o.k > s.size()) {
    throw Error(ErrorCode::InvalidArgument, "k must lie in [1, n]");
  }
  std::vector<std::size_t> idx(s.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(o.seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(o.k);
  const std::size_t last = o.last == 0 ? s.config.prefix_len : o.last;
  const auto h = ordering_frequency(s, idx, o.first, last);
  double expected = 1.0;
  for (std::size_t m = 2; m <= o.k; ++m) expected /= static_cast<double>(m);
  double worst = 0.0;
  std::size_t seen = 0;
  for (const auto &[ord, count] : h.counts) {
    worst = std::max(worst, std::abs(h.frequency(ord) - expected));
    ++seen;
  }
  std::size_t perms = 1;
  for (std::size_t m = 2; m <= o.k; ++m) perms *= m;
  if (seen < perms) worst = std::max(worst, expected);
  std::cout << "k=" << o.k << " over " << h.coords << " coordinates: max |freq - "
            << expected << "| = " << worst << "\n";
  if (!o.out.empty()) {
    write_json(o.out, probe_report("iop", Json{{"set", o.in}, {"k", o.k}}, {o.seed},
                                   Json{{"max_deviation", worst},
                                        {"expected_frequency", expected}},
                                   Json{{"coords", h.coords}},
                                   Json{{"orderings", h}}));
  }
  return worst <= o.tolerance ? kExitPass : kExitCheckFailure;
}

struct BackForthOpts {
  std::string graph_a;
  std::string graph_b;
  std::string engine = "ca";
  std::size_t rounds = 20;
  std::uint64_t seed = 3;
  std::size_t iop_budget = 0;
  std::size_t witness_scan = 0;
  std::string audit = "audit.json";
};

std::string relative_to(const std::string &file, const std::string &anchor) {
  const fs::path base = fs::absolute(anchor).parent_path();
  return fs::relative(fs::absolute(file), base).generic_string();
}

int cmd_back_forth(const BackForthOpts &o) {
  const LargGraph g = load_graph(o.graph_a);
  const LargGraph h = load_graph(o.graph_b);
  const RunResult r = run_back_forth(g, h, parse_engine(o.engine), o.rounds,
                                     EngineBudgets{o.iop_budget, o.witness_scan});
  Json j = r;
  j["inputs"] = Json{{"graph_a", relative_to(o.graph_a, o.audit)},
                     {"graph_b", relative_to(o.graph_b, o.audit)}};
  j["seed"] = o.seed;
  j["tool"] = tool_info();
  write_json(o.audit, j);
  std::cout << "engine " << to_string(r.engine) << ": " << to_string(r.outcome)
            << ", " << r.stages_completed << "/" << o.rounds << " rounds, "
            << r.map.size() << " matched, " << r.verification_failures
            << " verification failures";
  if (!r.reason.empty()) std::cout << " (" << r.reason << ")";
  std::cout << "\n";
  switch (r.outcome) {
  case Outcome::Completed: return kExitPass;
  case Outcome::InvariantViolation: return kExitCheckFailure;
  default: return kExitBudget;
  }
}

int cmd_check_stepiso(const std::string &path) {
  const PairMap m = with_schema(path, [&] { return pair_map_from_json(read_json(path)); });
  validate_pair_map(m);
  const LemmaConditions c = check_lemma_step(m);
  const StepIsoResult s = c.step ? *c.step : is_step_isometry(m);
  std::cout << m.size() << " pairs: floors " << (c.floors ? "hold" : "fail")
            << ", orders " << (c.orders ? "hold" : "fail") << ", step-isometry "
            << (s.holds ? "holds" : "fails") << "\n";
  if (s.counterexample) {
    std::cout << "  entries " << s.counterexample->first << ", "
              << s.counterexample->second << ": floor "
              << s.counterexample->source_floor << " vs "
              << s.counterexample->target_floor << "\n";
  }
  if (!c.implication_holds()) return kExitCheckFailure;
  return s.holds ? kExitPass : kExitCheckFailure;
}

struct EpsOpts {
  std::string run;
  std::size_t samples = 2000;
  std::size_t targets = 2000;
  std::uint64_t seed = 1;
  std::string out = "eps_report.json";
};

int cmd_eps_iso(const EpsOpts &o) {
  const Json run = read_json(o.run);
  const fs::path base = fs::absolute(o.run).parent_path();
  const auto [ga, gb, map] = with_schema(o.run, [&] {
    return std::make_tuple(run.at("inputs").at("graph_a").get<std::string>(),
                           run.at("inputs").at("graph_b").get<std::string>(),
                           vertex_map_from_json(run));
  });
  const LargGraph g = load_graph((base / ga).string());
  const LargGraph h = load_graph((base / gb).string());
  const Json rep = eps_iso_report(g, h, map, o.samples, o.targets, o.seed,
                                  Json{{"run", o.run}});
  write_json(o.out, rep);
  const Json &m = rep.at("metrics");
  std::cout << "max defect " << m.at("max_defect").get<double>()
            << ", surjectivity radius " << m.at("surjectivity_radius").get<double>()
            << ", vertex defect " << m.at("vertex_defect").get<double>() << ", "
            << rep.at("counts").at("uncovered").get<std::size_t>()
            << " uncovered samples\n";
  return rep.at("pass").get<bool>() && rep.at("vertex_pass").get<bool>()
             ? kExitPass
             : kExitCheckFailure;
}

int cmd_pipeline(ExperimentConfig cfg, const std::string &config_path,
                 const CLI::App &sub) {
  if (!config_path.empty()) {
    ExperimentConfig file = with_schema(config_path, [&] {
      return read_json(config_path).get<ExperimentConfig>();
    });
    // Flags given explicitly on the command line win over the file.
    const auto take = [&](const char *flag, auto &dst, const auto &src) {
      if (sub.get_option(flag)->count() == 0) dst = src;
    };
    take("--space", cfg.space, file.space);
    take("--a", cfg.a, file.a);
    take("--dim", cfg.dim, file.dim);
    take("--n", cfg.n, file.n);
    take("--prefix-len", cfg.prefix_len, file.prefix_len);
    take("--seed", cfg.seed, file.seed);
    take("--delta", cfg.delta, file.delta);
    take("--p", cfg.p, file.p);
    take("--guard", cfg.guard, file.guard);
    take("--engine", cfg.engine, file.engine);
    take("--rounds", cfg.rounds, file.rounds);
    take("--gec-trials", cfg.gec_trials, file.gec_trials);
    take("--out-dir", cfg.out_dir, file.out_dir);
    if (sub.get_option("--window")->count() == 0) cfg.window = file.window;
    cfg.distance_pairs = file.distance_pairs;
    cfg.distance_sources = file.distance_sources;
    cfg.gec_max_ab = file.gec_max_ab;
    cfg.delta_prime = file.delta_prime;
    cfg.iop_budget = file.iop_budget;
    cfg.witness_scan = file.witness_scan;
    cfg.eps_samples = file.eps_samples;
    cfg.eps_targets = file.eps_targets;
  }
  const PipelineResult r = run_pipeline(cfg);
  for (const auto &c : r.checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
    std::cout << "\n";
  }
  std::cout << "artifacts in " << cfg.out_dir << "\n";
  return r.exit_code;
}

int cmd_report(const std::vector<std::string> &inputs, const std::string &out,
               const std::string &csv) {
  std::vector<Json> reports;
  for (const auto &p : inputs) reports.push_back(read_json(p));
  const Aggregate agg = aggregate_reports(reports);
  for (const auto &[name, metrics] : agg.summary.at("experiments").items()) {
    std::cout << name << "\n";
    for (const auto &[metric, s] : metrics.items()) {
      std::cout << "  " << metric << ": mean " << s.at("mean").get<double>()
                << " sd " << s.at("stddev").get<double>() << " (n="
                << s.at("count").get<std::size_t>() << ")\n";
    }
  }
  if (!out.empty()) write_json(out, agg.summary);
  if (!csv.empty()) {
    std::ofstream f(csv, std::ios::binary);
    if (!f) throw Error(ErrorCode::Io, "cannot write " + csv);
    f << agg.csv;
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"larg-lab: local area random graphs in sequence spaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  SampleOpts so;
  auto *sample = app.add_subcommand("sample", "Draw an i.d.f. dense set");
  sample->add_option("--space", so.space, "c0, c, ca or linf")
      ->check(CLI::IsMember({"c0", "c", "ca", "linf"}))
      ->capture_default_str();
  sample->add_option("--a", so.a, "Limit for --space ca")->capture_default_str();
  sample->add_option("--dim", so.dim, "Dimension for --space linf")->capture_default_str();
  sample->add_option("--n", so.n, "Number of points")->capture_default_str();
  sample->add_option("--prefix-len", so.prefix_len, "Realized coordinates")
      ->capture_default_str();
  sample->add_option("--seed", so.seed, "Sampler seed")->capture_default_str();
  sample->add_option("--guard", so.guard, "i.d.f. guard")->capture_default_str();
  sample->add_option("--window", so.window, "Box half-width K (0 = none)")
      ->capture_default_str();
  sample->add_option("--out", so.out, "Output file")->capture_default_str();

  BuildOpts bo;
  auto *build = app.add_subcommand("build", "Build LARG(V, delta, p)");
  build->add_option("--in", bo.in, "Dense set JSON")->required();
  build->add_option("--delta", bo.delta, "Threshold")->capture_default_str();
  build->add_option("--p", bo.p, "Edge probability")->capture_default_str();
  build->add_option("--seed", bo.seed, "Edge coin seed")->capture_default_str();
  build->add_option("--out", bo.out, "Output file")->capture_default_str();

  DistanceOpts dopt;
  auto *dist = app.add_subcommand("verify-distance", "Check the distance law");
  dist->add_option("--graph", dopt.graph, "Graph JSON")->required();
  dist->add_option("--pairs", dopt.pairs, "Sampled pairs")->capture_default_str();
  dist->add_option("--sources", dopt.sources, "Distinct BFS sources")
      ->capture_default_str();
  dist->add_option("--min-dist", dopt.min_dist, "Pair distance lower bound")
      ->capture_default_str();
  dist->add_option("--max-dist", dopt.max_dist, "Pair distance upper bound (0 = none)")
      ->capture_default_str();
  dist->add_option("--seed", dopt.seed, "Pair sampling seed")->capture_default_str();
  dist->add_option("--target", dopt.target, "Required agreement")->capture_default_str();
  dist->add_option("--out", dopt.out, "Report file");

  GecOpts go;
  auto *gec = app.add_subcommand("probe-gec", "Probe the g.e.c. property");
  gec->add_option("--graph", go.graph, "Graph JSON")->required();
  gec->add_option("--trials", go.trials, "Queries")->capture_default_str();
  gec->add_option("--max-ab", go.max_ab, "Largest |A| + |B|")->capture_default_str();
  gec->add_option("--delta-prime", go.delta_prime, "Witness radius")->capture_default_str();
  gec->add_option("--seed", go.seed, "Query seed")->capture_default_str();
  gec->add_option("--out", go.out, "Report file");

  IopOpts io;
  auto *iop = app.add_subcommand("check-iop", "Ordering frequencies of k points");
  iop->add_option("--in", io.in, "Dense set JSON")->required();
  iop->add_option("--k", io.k, "Points")->capture_default_str();
  iop->add_option("--first", io.first, "First coordinate")->capture_default_str();
  iop->add_option("--last", io.last, "Last coordinate (0 = prefix length)")
      ->capture_default_str();
  iop->add_option("--seed", io.seed, "Point choice seed")->capture_default_str();
  iop->add_option("--tolerance", io.tolerance, "Allowed |freq - 1/k!|")
      ->capture_default_str();
  iop->add_option("--out", io.out, "Report file");

  BackForthOpts bf;
  auto *back = app.add_subcommand("back-forth", "Run a back-and-forth engine");
  back->add_option("--graph-a", bf.graph_a, "Graph G")->required();
  back->add_option("--graph-b", bf.graph_b, "Graph H")->required();
  back->add_option("--engine", bf.engine, "c or ca")
      ->check(CLI::IsMember({"c", "ca"}))
      ->capture_default_str();
  back->add_option("--rounds", bf.rounds, "Forth/back rounds")->capture_default_str();
  back->add_option("--seed", bf.seed, "Recorded in the audit")->capture_default_str();
  back->add_option("--iop-budget", bf.iop_budget, "Ordering scan budget (0 = all)")
      ->capture_default_str();
  back->add_option("--witness-scan", bf.witness_scan, "Witness scan cap (0 = none)")
      ->capture_default_str();
  back->add_option("--audit", bf.audit, "Audit output")->capture_default_str();

  std::string map_path;
  auto *stepiso = app.add_subcommand("check-stepiso", "Check a point map");
  stepiso->add_option("--map", map_path, "PairMap JSON")->required();

  EpsOpts eo;
  auto *eps = app.add_subcommand("eps-iso", "Eps-isometry bounds of a run");
  eps->add_option("--run", eo.run, "Audit from back-forth or pipeline")->required();
  eps->add_option("--samples", eo.samples, "Domain samples")->capture_default_str();
  eps->add_option("--targets", eo.targets, "Target cloud size")->capture_default_str();
  eps->add_option("--seed", eo.seed, "Sample seed")->capture_default_str();
  eps->add_option("--out", eo.out, "Report file")->capture_default_str();

  ExperimentConfig cfg;
  std::string config_path;
  double window = *cfg.window;
  auto *pipe = app.add_subcommand("pipeline", "Full reproducible run");
  pipe->add_option("--config", config_path, "ExperimentConfig JSON");
  pipe->add_option("--space", cfg.space, "c0, c, ca or linf")
      ->check(CLI::IsMember({"c0", "c", "ca", "linf"}))
      ->capture_default_str();
  pipe->add_option("--a", cfg.a, "Limit for ca")->capture_default_str();
  pipe->add_option("--dim", cfg.dim, "Dimension for linf")->capture_default_str();
  pipe->add_option("--n", cfg.n, "Vertices per graph")->capture_default_str();
  pipe->add_option("--prefix-len", cfg.prefix_len, "Realized coordinates")
      ->capture_default_str();
  pipe->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  pipe->add_option("--delta", cfg.delta, "Threshold")->capture_default_str();
  pipe->add_option("--p", cfg.p, "Edge probability")->capture_default_str();
  pipe->add_option("--window", window, "Box half-width K (0 = none)")
      ->capture_default_str();
  pipe->add_option("--guard", cfg.guard, "i.d.f. guard")->capture_default_str();
  pipe->add_option("--engine", cfg.engine, "c or ca")
      ->check(CLI::IsMember({"c", "ca"}))
      ->capture_default_str();
  pipe->add_option("--rounds", cfg.rounds, "Back-and-forth rounds")->capture_default_str();
  pipe->add_option("--gec-trials", cfg.gec_trials, "g.e.c. probes (0 = skip)")
      ->capture_default_str();
  pipe->add_option("--out-dir", cfg.out_dir, "Artifact directory")->capture_default_str();

  std::vector<std::string> inputs;
  std::string report_out;
  std::string report_csv;
  auto *report = app.add_subcommand("report", "Aggregate reports over seeds");
  report->add_option("inputs", inputs, "Report or summary JSON files")->required();
  report->add_option("--out", report_out, "Summary JSON");
  report->add_option("--csv", report_csv, "Plot-data CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*sample) return cmd_sample(so);
    if (*build) return cmd_build(bo);
    if (*dist) return cmd_verify_distance(dopt);
    if (*gec) return cmd_probe_gec(go);
    if (*iop) return cmd_check_iop(io);
    if (*back) return cmd_back_forth(bf);
    if (*stepiso) return cmd_check_stepiso(map_path);
    if (*eps) return cmd_eps_iso(eo);
    if (*pipe) {
      cfg.window = window > 0.0 ? std::optional<double>(window) : std::nullopt;
      return cmd_pipeline(cfg, config_path, *pipe);
    }
    if (*report) return cmd_report(inputs, report_out, report_csv);
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::WrongTag:
      return kExitUsage;
    case ErrorCode::RejectionBudgetExceeded:
    case ErrorCode::BudgetExhausted:
    case ErrorCode::IopBudgetExhausted:
    case ErrorCode::DensityFailure:
    case ErrorCode::WitnessFailure:
      return kExitBudget;
    default:
      return kExitCheckFailure;
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitUsage;
}
