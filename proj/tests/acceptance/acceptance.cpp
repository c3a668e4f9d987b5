//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. `larg_acceptance --criterion N` runs one criterion and
// prints one line per check plus a final verdict line; exit status 0 means
// the criterion passed. Without --criterion every criterion runs.
//

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "larg/lab.hpp"

namespace {

using namespace larg;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

std::string fmt(const char *f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

class Criterion {
 public:
  Criterion(int id, std::string title, double limit_s)
      : id_(id), title_(std::move(title)), limit_s_(limit_s),
        start_(Clock::now()) {
    std::printf("criterion %d: %s\n", id_, title_.c_str());
  }

  void check(const std::string &name, bool ok, const std::string &detail) {
    std::printf("  [%s] %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    pass_ = pass_ && ok;
  }

  void note(const std::string &text) {
    std::printf("  [INFO] %s\n", text.c_str());
    std::fflush(stdout);
  }

  bool finish() {
    const double s =
        std::chrono::duration<double>(Clock::now() - start_).count();
    check("runtime", s < limit_s_, fmt("%.2f s (limit %.0f s)", s, limit_s_));
    std::printf("CRITERION %d %s: %s\n", id_, pass_ ? "PASS" : "FAIL",
                title_.c_str());
    std::fflush(stdout);
    return pass_;
  }

 private:
  int id_;
  std::string title_;
  double limit_s_;
  Clock::time_point start_;
  bool pass_ = true;
};

// Standard vertex law of the suite: c_{1/2}, one realized coordinate,
// window K = 3.
SamplerConfig law(std::uint64_t seed) {
  SamplerConfig c;
  c.seed = seed;
  c.prefix_len = 1;
  c.tag = SpaceTag::ca(0.5);
  c.window = 3.0;
  return c;
}

LargGraph standard_graph(std::size_t n, std::uint64_t seed) {
  return LargGraph::generate(sample_dense_set(law(split_seed(seed, 0)), n), 1.0,
                             0.5, split_seed(seed, 1));
}

// ------------------------------------------------------------------- 1

double brute_sup(const SeqPoint &x, const SeqPoint &y) {
  const std::size_t n = std::max(x.realized(), y.realized()) + 1;
  double best = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    best = std::max(best, std::abs(x.coord(j) - y.coord(j)));
  }
  return best;
}

bool criterion_1() {
  Criterion c(1, "exact arithmetic: floor_abs_diff grid and sup_dist", 10.0);

  // s = k / 10, t = m / 10; floor|s - t| = |k - m| div 10 in integers.
  std::size_t grid = 0;
  std::size_t grid_fail = 0;
  for (int k = -50; k <= 50; ++k) {
    for (int m = -50; m <= 50; ++m) {
      const int gap = std::abs(k - m);
      if (gap % 10 == 0) continue;  // equal fractional parts
      ++grid;
      try {
        if (floor_abs_diff(k / 10.0, m / 10.0) != gap / 10) ++grid_fail;
      } catch (const Error &) {
        ++grid_fail;
      }
    }
  }
  c.check("floor_abs_diff grid", grid_fail == 0 && grid == 9180,
          fmt("%zu failures over %zu grid pairs (step 0.1 on [-5, 5], ties "
              "excluded; required 0)",
              grid_fail, grid));

  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> len(0, 12);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  std::uniform_int_distribution<int> kind(0, 2);
  const auto draw = [&](int k) {
    std::vector<double> p(len(rng));
    for (auto &v : p) v = coord(rng);
    switch (k) {
    case 0: return SeqPoint(std::move(p), coord(rng), SpaceTag::c());
    case 1: return SeqPoint(std::move(p), 0.0, SpaceTag::c0());
    default: return SeqPoint(std::move(p), 0.5, SpaceTag::ca(0.5));
    }
  };
  std::size_t sup_fail = 0;
  const std::size_t pairs = 10000;
  for (std::size_t i = 0; i < pairs; ++i) {
    const SeqPoint x = draw(kind(rng));
    const SeqPoint y = draw(kind(rng));
    if (sup_dist(x, y) != brute_sup(x, y)) ++sup_fail;
  }
  c.check("sup_dist brute force", sup_fail == 0,
          fmt("%zu mismatches over %zu random pairs (required 0)", sup_fail,
              pairs));
  return c.finish();
}

// ------------------------------------------------------------------- 2

bool criterion_2() {
  Criterion c(2, "ordering frequencies 1/k! for k = 2, 3", 30.0);
  const std::size_t coords = 10000;
  for (std::size_t k : {2u, 3u}) {
    SamplerConfig cfg;
    cfg.seed = split_seed(2, k);
    cfg.prefix_len = coords;
    cfg.tag = SpaceTag::ca(0.5);
    const DenseSet s = sample_dense_set(cfg, k);
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    const auto h = ordering_frequency(s, idx, 1, coords);
    const double target = k == 2 ? 0.5 : 1.0 / 6.0;
    const double tol = k == 2 ? 0.02 : 0.015;
    Ordering o = idx;
    double worst = 0.0;
    std::size_t seen = 0;
    std::ostringstream freqs;
    do {
      const double f = h.frequency(o);
      worst = std::max(worst, std::abs(f - target));
      ++seen;
      freqs << (seen > 1 ? " " : "") << fmt("%.4f", f);
    } while (std::next_permutation(o.begin(), o.end()));
    c.check(fmt("k = %zu", k), worst <= tol && h.coords == coords,
            fmt("frequencies [%s] over %zu coordinates; max |f - %.4f| = "
                "%.4f (tolerance %.3f)",
                freqs.str().c_str(), h.coords, target, worst, tol));
  }
  return c.finish();
}

// ------------------------------------------------------------------- 3

bool criterion_3() {
  Criterion c(3, "distance law on LARG(V, 1, 0.5)", 300.0);
  const double inf = std::numeric_limits<double>::infinity();
  {
    const LargGraph g = standard_graph(2000, 3);
    const auto all = sample_pairs(g, 10000, 100, 0.0, inf, split_seed(3, 2));
    const auto lower = distance_law_report(g, all);
    c.check("lower bound d_G >= ceil(d)", lower.lower_bound_violations == 0 &&
                                              all.size() == 10000,
            fmt("%zu violations over %zu sampled pairs (required 0)",
                lower.lower_bound_violations, all.size()));
    const auto far = sample_pairs(g, 10000, 100, 1.0, inf, split_seed(3, 3));
    const auto rep = distance_law_report(g, far);
    c.check("agreement with floor(d) + 1 at n = 2000",
            rep.agreement() >= 0.99 && rep.pairs_tested == 10000,
            fmt("%.4f over %zu pairs with d >= 1 (required >= 0.99); %zu "
                "disconnected, %zu lower-bound violations",
                rep.agreement(), rep.pairs_tested, rep.disconnected,
                rep.lower_bound_violations));
  }

  std::vector<double> means;
  std::size_t violations = 0;
  std::ostringstream trend;
  for (std::size_t n : {250u, 500u, 1000u, 2000u}) {
    double sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const std::uint64_t s = split_seed(300 + n, seed);
      const LargGraph g = standard_graph(n, s);
      const auto pairs = sample_pairs(g, 2000, 40, 1.0, inf, split_seed(s, 2));
      const auto rep = distance_law_report(g, pairs);
      violations += rep.lower_bound_violations;
      sum += rep.agreement();
    }
    means.push_back(sum / 10.0);
    trend << (means.size() > 1 ? ", " : "") << fmt("n=%zu: %.4f", n, means.back());
  }
  bool monotone = true;
  for (std::size_t i = 1; i < means.size(); ++i) {
    monotone = monotone && means[i] >= means[i - 1];
  }
  c.check("agreement nondecreasing in n (10 seeds each)", monotone,
          trend.str());
  c.check("lower bound across the trend graphs", violations == 0,
          fmt("%zu violations (required 0)", violations));
  return c.finish();
}

// ------------------------------------------------------------------- 4

bool criterion_4() {
  Criterion c(4, "g.e.c. probe trend, |A| + |B| <= 3, delta' = 0.1", 300.0);
  const auto sizes = sizes_up_to(3);
  const std::size_t seeds = 5;
  const std::size_t trials = 1000;
  std::vector<double> rates;
  std::size_t successes = 0;
  std::size_t verified = 0;
  std::ostringstream trend;
  for (std::size_t n : {500u, 1000u, 2000u, 4000u}) {
    std::size_t posed = 0;
    std::size_t ok = 0;
    for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
      const std::uint64_t s = split_seed(400 + n, seed);
      const LargGraph g = standard_graph(n, s);
      const auto st = gec_statistics(g, trials, sizes, 0.1, split_seed(s, 2));
      posed += st.trials;
      ok += st.successes;
      successes += st.successes;
      verified += st.witnesses_verified;
    }
    rates.push_back(posed == 0 ? 0.0 : static_cast<double>(ok) / posed);
    trend << (rates.size() > 1 ? ", " : "")
          << fmt("n=%zu: %.4f (%zu queries)", n, rates.back(), posed);
  }
  bool increasing = true;
  for (std::size_t i = 1; i < rates.size(); ++i) {
    increasing = increasing && rates[i] > rates[i - 1];
  }
  c.check("success rate strictly increasing in n", increasing, trend.str());
  c.check("success rate at n = 4000", rates.back() > 0.95,
          fmt("%.4f (required > 0.95)", rates.back()));
  c.check("witness re-verification", verified == successes,
          fmt("%zu of %zu witnesses verified (required 100%%)", verified,
              successes));
  return c.finish();
}

// ------------------------------------------------------------------- 5

bool criterion_5() {
  Criterion c(5, "back-and-forth engines, n = 5000, 20 rounds, 20 seeds", 900.0);
  const std::size_t n = 5000;
  const std::size_t rounds = 20;
  const std::size_t seeds = 20;
  struct Tally {
    std::size_t completed = 0;
    std::size_t verifications = 0;
    std::size_t verification_failures = 0;
    std::size_t stages = 0;
    std::map<Outcome, std::size_t> outcomes;
    std::vector<std::size_t> failure_stages;
  };
  std::map<Engine, Tally> tally;
  for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
    const std::uint64_t s = split_seed(500, seed);
    const LargGraph g = standard_graph(n, split_seed(s, 0));
    const LargGraph h = standard_graph(n, split_seed(s, 1));
    for (Engine e : {Engine::C, Engine::Ca}) {
      const RunResult r = run_back_forth(g, h, e, rounds);
      auto &t = tally[e];
      t.verifications += r.verifications;
      t.verification_failures += r.verification_failures;
      t.stages += r.stages_completed;
      ++t.outcomes[r.outcome];
      if (r.outcome == Outcome::Completed) {
        ++t.completed;
      } else if (r.failure_stage) {
        t.failure_stages.push_back(*r.failure_stage);
      }
    }
  }
  for (Engine e : {Engine::C, Engine::Ca}) {
    const auto &t = tally[e];
    const std::string name = "engine " + to_string(e);
    std::ostringstream oc;
    for (const auto &[k, v] : t.outcomes) {
      oc << (oc.tellp() > 0 ? ", " : "") << to_string(k) << " " << v;
    }
    std::ostringstream fs;
    for (std::size_t st : t.failure_stages) fs << (fs.tellp() > 0 ? " " : "") << st;
    c.note(fmt("%s: outcomes {%s}; failure stages [%s]; mean rounds completed "
               "%.2f",
               name.c_str(), oc.str().c_str(), fs.str().c_str(),
               static_cast<double>(t.stages) / seeds));
    c.check(name + " verify_partial_iso after every completed stage",
            t.verification_failures == 0 && t.verifications == t.stages,
            fmt("%zu failures over %zu verifications (required 0)",
                t.verification_failures, t.verifications));
    std::size_t bad = 0;
    for (const auto &[k, v] : t.outcomes) {
      if (k != Outcome::Completed && k != Outcome::WitnessFailure &&
          k != Outcome::DensityFailure) {
        bad += v;
      }
    }
    c.check(name + " failures are witness or density failures", bad == 0,
            fmt("%zu runs ended otherwise (required 0)", bad));
    const double rate = static_cast<double>(t.completed) / seeds;
    c.check(name + " completion rate", rate >= 0.8,
            fmt("%.2f (%zu of %zu seeds; required >= 0.80)", rate, t.completed,
                seeds));
  }
  return c.finish();
}

// ------------------------------------------------------------------- 6

// All maps between a fixed 3-point configuration X and configurations Y with
// the same integer parts and fractional parts on the grid 0.05 + 0.1k. On
// each coordinate exactly C(10, 3) = 120 fractional patterns keep the order
// of X, so 120^2 maps satisfy both conditions.
bool criterion_6() {
  Criterion c(6, "step-isometry lemma by exhaustive enumeration", 10.0);
  const std::vector<std::vector<std::array<double, 2>>> configs{
      {{0.12, 1.47}, {1.36, 0.81}, {-0.58, 2.23}},
      {{2.91, -1.14}, {0.44, -0.62}, {1.07, 0.35}},
  };
  const SpaceTag tag = SpaceTag::ca(0.5);
  std::size_t total_counterexamples = 0;
  for (std::size_t ci = 0; ci < configs.size(); ++ci) {
    const auto &cfg = configs[ci];
    std::vector<SeqPoint> xs;
    for (const auto &p : cfg) xs.push_back(SeqPoint({p[0], p[1]}, 0.5, tag));
    if (!check_idf(xs).ok) {
      c.check(fmt("configuration %zu i.d.f.", ci + 1), false, "not i.d.f.");
      continue;
    }
    std::size_t maps = 0;
    std::size_t both = 0;
    std::size_t counterexamples = 0;
    std::size_t oracle_monotone = 0;
    std::size_t broken_without = 0;  // maps failing (2) that are not step-isometries
    std::array<int, 6> k{};
    for (int code = 0; code < 1000000; ++code) {
      int rest = code;
      for (auto &d : k) {
        d = rest % 10;
        rest /= 10;
      }
      // Distinct fractional parts per coordinate keep Y i.d.f.
      if (k[0] == k[2] || k[0] == k[4] || k[2] == k[4]) continue;
      if (k[1] == k[3] || k[1] == k[5] || k[3] == k[5]) continue;
      ++maps;
      PairMap m;
      bool monotone = true;
      for (std::size_t p = 0; p < 3; ++p) {
        std::vector<double> y(2);
        for (std::size_t i = 0; i < 2; ++i) {
          y[i] = std::floor(cfg[p][i]) + 0.05 + 0.1 * k[2 * p + i];
        }
        m.push_back({xs[p], SeqPoint(std::move(y), 0.5, tag)});
      }
      // Oracle for condition (2) on grid indices only.
      for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t p = 0; p < 3; ++p) {
          for (std::size_t q = 0; q < 3; ++q) {
            const bool src = frac(cfg[p][i]) < frac(cfg[q][i]);
            const bool dst = k[2 * p + i] < k[2 * q + i];
            if (src != dst) monotone = false;
          }
        }
      }
      if (monotone) ++oracle_monotone;
      const LemmaConditions lc = check_lemma_step(m);
      if (lc.orders != monotone || !lc.floors) ++counterexamples;
      if (lc.floors && lc.orders) {
        ++both;
        if (!lc.implication_holds()) ++counterexamples;
      } else if (!is_step_isometry(m).holds) {
        ++broken_without;
      }
    }
    total_counterexamples += counterexamples;
    c.note(fmt("configuration %zu: %zu of the %zu maps violating (2) are not "
               "step-isometries",
               ci + 1, broken_without, maps - both));
    c.check(fmt("configuration %zu", ci + 1),
            counterexamples == 0 && both == 14400 && oracle_monotone == 14400,
            fmt("%zu i.d.f. maps, %zu satisfy (1)+(2) (oracle 14400), %zu "
                "counterexamples (required 0)",
                maps, both, counterexamples));
  }
  c.check("total counterexamples", total_counterexamples == 0,
          fmt("%zu", total_counterexamples));
  return c.finish();
}

// ------------------------------------------------------------------- 7

bool criterion_7() {
  Criterion c(7, "eps-isometry bounds from a completed run", 120.0);
  const std::size_t n = 5000;
  const std::size_t rounds = 4;
  c.note(fmt("runs of %zu rounds at n = %zu; the first seed that completes is "
             "used",
             rounds, n));
  for (Engine e : {Engine::C, Engine::Ca}) {
    const std::string name = "engine " + to_string(e);
    std::optional<RunResult> done;
    std::optional<LargGraph> G;
    std::optional<LargGraph> H;
    std::uint64_t used = 0;
    for (std::uint64_t seed = 1; seed <= 20 && !done; ++seed) {
      const std::uint64_t s = split_seed(700, seed);
      LargGraph g = standard_graph(n, split_seed(s, 0));
      LargGraph h = standard_graph(n, split_seed(s, 1));
      RunResult r = run_back_forth(g, h, e, rounds);
      if (r.outcome == Outcome::Completed) {
        done = std::move(r);
        G.emplace(std::move(g));
        H.emplace(std::move(h));
        used = seed;
      }
    }
    if (!done) {
      c.check(name + " completed run", false, "no seed in 1..20 completed");
      continue;
    }
    // T is defined within distance 1 of a matched vertex; the 2000 domain
    // samples are the first law draws that land there.
    const auto draws = law_samples(G->vertices(), 20000, split_seed(used, 10));
    const auto ys = law_samples(H->vertices(), 2000, split_seed(used, 11));
    EpsIsometry t = build_eps_isometry(*G, *H, done->map, draws);
    const std::size_t mapped = t.map.size();
    if (t.map.size() > 2000) t.map.erase(t.map.begin() + 2000, t.map.end());
    const EpsIsoReport rep = check_eps_isometry(t.map, ys);
    const EpsIsoReport vert =
        check_eps_isometry(pair_map(*G, *H, done->map), std::span<const SeqPoint>{});
    c.note(fmt("%s: seed %llu, %zu matched pairs; %zu of %zu law draws fall in "
               "the domain of T (coverage %.3f)",
               name.c_str(), static_cast<unsigned long long>(used),
               done->map.size(), mapped, draws.size(),
               static_cast<double>(mapped) / static_cast<double>(draws.size())));
    c.check(name + " domain samples", t.map.size() == 2000,
            fmt("%zu samples in the domain of T (required 2000)", t.map.size()));
    c.check(name + " max defect", rep.max_defect < 4.0,
            fmt("%.4f over %zu pairs (required < 4)", rep.max_defect, rep.pairs));
    c.check(name + " surjectivity radius", rep.surjectivity_radius < 3.0,
            fmt("%.4f against %zu targets (required < 3)",
                rep.surjectivity_radius, rep.targets));
    c.check(name + " vertex defect", vert.max_defect < 2.0,
            fmt("%.4f over %zu matched pairs (required < 2)", vert.max_defect,
                vert.pairs));
  }
  return c.finish();
}

// ------------------------------------------------------------------- 8

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool criterion_8() {
  Criterion c(8, "pipeline determinism", 600.0);
  ExperimentConfig cfg;
  const fs::path base = fs::current_path() / "acceptance-determinism";
  fs::remove_all(base);
  std::vector<PipelineResult> runs;
  for (const char *sub : {"a", "b"}) {
    cfg.out_dir = (base / sub).string();
    runs.push_back(run_pipeline(cfg));
  }
  std::size_t same = 0;
  std::size_t total = 0;
  std::string differing;
  for (const auto &a : runs[0].summary.at("artifacts")) {
    const std::string f = a.get<std::string>();
    ++total;
    const std::string x = slurp(base / "a" / f);
    if (!x.empty() && x == slurp(base / "b" / f)) {
      ++same;
    } else {
      differing += " " + f;
    }
  }
  c.note(fmt("pipeline exit code %d (both runs: %d, %d)", runs[0].exit_code,
             runs[0].exit_code, runs[1].exit_code));
  c.check("byte-identical artifacts", same == total && total == 10,
          fmt("%zu of %zu identical%s", same, total,
              differing.empty() ? "" : (";" + differing).c_str()));
  return c.finish();
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"larg-lab acceptance suite"};
  int which = 0;
  app.add_option("--criterion", which, "Criterion 1-8 (0 = all)")
      ->check(CLI::Range(0, 8));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<bool()>> all{
      criterion_1, criterion_2, criterion_3, criterion_4,
      criterion_5, criterion_6, criterion_7, criterion_8};
  bool ok = true;
  try {
    if (which == 0) {
      for (const auto &f : all) ok = f() && ok;
    } else {
      ok = all[static_cast<std::size_t>(which - 1)]();
    }
  } catch (const std::exception &e) {
    std::printf("ERROR: %s\n", e.what());
    return 1;
  }
  return ok ? 0 : 1;
}
