//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#include "larg/json_io.hpp"

#include <fstream>
#include <sstream>

#include "larg/error.hpp"

namespace larg {

Json tool_info() { return Json{{"name", kToolName}, {"version", kToolVersion}}; }

void to_json(Json &j, const SpaceTag &t) {
  switch (t.kind()) {
  case SpaceKind::FiniteDim: j = Json{{"kind", "linf"}, {"d", t.dim()}}; break;
  case SpaceKind::C: j = Json{{"kind", "c"}}; break;
  case SpaceKind::Ca: j = Json{{"kind", "ca"}, {"a", t.a()}}; break;
  case SpaceKind::C0: j = Json{{"kind", "c0"}}; break;
  }
}

SpaceTag space_tag_from_json(const Json &j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "linf") return SpaceTag::finite_dim(j.at("d").get<std::size_t>());
  if (kind == "c") return SpaceTag::c();
  if (kind == "ca") return SpaceTag::ca(j.at("a").get<double>());
  if (kind == "c0") return SpaceTag::c0();
  throw Error(ErrorCode::SchemaMismatch, "unknown space kind '" + kind + "'");
}

void to_json(Json &j, const SeqPoint &x) {
  j = Json{{"prefix", x.prefix()}, {"limit", x.limit()}, {"tag", x.tag()}};
}

SeqPoint seq_point_from_json(const Json &j) {
  return SeqPoint(j.at("prefix").get<std::vector<double>>(),
                  j.at("limit").get<double>(), space_tag_from_json(j.at("tag")));
}

void to_json(Json &j, const SamplerConfig &c) {
  j = Json{{"seed", c.seed},
           {"prefix_len", c.prefix_len},
           {"idf_guard", c.idf_guard},
           {"tag", c.tag},
           {"window", c.window ? Json(*c.window) : Json(nullptr)},
           {"max_consecutive_rejections", c.max_consecutive_rejections}};
}

void from_json(const Json &j, SamplerConfig &c) {
  c.seed = j.at("seed").get<std::uint64_t>();
  c.prefix_len = j.at("prefix_len").get<std::size_t>();
  c.idf_guard = j.at("idf_guard").get<double>();
  c.tag = space_tag_from_json(j.at("tag"));
  const Json &w = j.at("window");
  c.window = w.is_null() ? std::nullopt : std::optional<double>(w.get<double>());
  c.max_consecutive_rejections =
      j.at("max_consecutive_rejections").get<std::size_t>();
}

void to_json(Json &j, const SamplingStats &s) {
  j = Json{{"draws", s.draws},
           {"idf_rejections", s.idf_rejections},
           {"window_rejections", s.window_rejections}};
}

void from_json(const Json &j, SamplingStats &s) {
  s.draws = j.at("draws").get<std::uint64_t>();
  s.idf_rejections = j.at("idf_rejections").get<std::uint64_t>();
  s.window_rejections = j.at("window_rejections").get<std::uint64_t>();
}

void to_json(Json &j, const IdfReport &r) {
  j = Json{{"ok", r.ok}, {"violations", r.violations.size()}};
}

void to_json(Json &j, const DenseSet &s) {
  j = Json{{"config", s.config},
           {"n", s.size()},
           {"idf", s.idf},
           {"stats", s.stats},
           {"points", s.points},
           {"tool", tool_info()}};
}

DenseSet dense_set_from_json(const Json &j) {
  DenseSet s;
  s.config = j.at("config").get<SamplerConfig>();
  s.config.validate();
  s.stats = j.at("stats").get<SamplingStats>();
  for (const Json &p : j.at("points")) {
    s.points.push_back(seq_point_from_json(p));
    if (!(s.points.back().tag() == s.config.tag)) {
      throw Error(ErrorCode::SchemaMismatch, "point tag differs from config");
    }
  }
  if (j.contains("n") && j.at("n").get<std::size_t>() != s.size()) {
    throw Error(ErrorCode::SchemaMismatch, "point count differs from n");
  }
  s.idf = check_idf(s.points, s.config.idf_guard);
  return s;
}

Json graph_to_json(const LargGraph &g) {
  Json edges = Json::array();
  for (auto [a, b] : g.edges()) edges.push_back(Json::array({a, b}));
  return Json{{"delta", g.delta()},     {"p", g.p()},
              {"seed", g.seed()},       {"n", g.size()},
              {"edge_count", g.edge_count()},
              {"edges", std::move(edges)},
              {"vertices", g.vertices()}, {"tool", tool_info()}};
}

LargGraph graph_from_json(const Json &j) {
  DenseSet v = dense_set_from_json(j.at("vertices"));
  if (v.size() != j.at("n").get<std::size_t>()) {
    throw Error(ErrorCode::SchemaMismatch, "vertex count differs from n");
  }
  std::vector<Edge> edges;
  for (const Json &e : j.at("edges")) {
    edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
  }
  return LargGraph::from_edges(std::move(v), j.at("delta").get<double>(),
                               j.at("p").get<double>(),
                               j.at("seed").get<std::uint64_t>(), edges);
}

void to_json(Json &j, const DistanceLawReport &r) {
  Json examples = Json::array();
  for (const auto &d : r.disagreement_examples) {
    examples.push_back(Json{{"u", d.u},
                            {"v", d.v},
                            {"distance", d.distance},
                            {"hops", d.hops ? Json(*d.hops) : Json(nullptr)}});
  }
  j = Json{{"pairs_tested", r.pairs_tested},
           {"agree", r.agree},
           {"agreement", r.agreement()},
           {"lower_bound_violations", r.lower_bound_violations},
           {"disconnected", r.disconnected},
           {"unsafe_floors", r.unsafe_floors},
           {"near_pairs", r.near_pairs},
           {"near_ok", r.near_ok},
           {"disagreement_examples", std::move(examples)}};
}

void to_json(Json &j, const GecStatistics &s) {
  Json sizes = Json::array();
  for (const auto &[k, v] : s.by_size) {
    sizes.push_back(Json{{"a", k.first},
                         {"b", k.second},
                         {"trials", v.trials},
                         {"successes", v.successes},
                         {"rate", v.rate()}});
  }
  j = Json{{"trials", s.trials},
           {"skipped", s.skipped},
           {"successes", s.successes},
           {"rate", s.rate()},
           {"witnesses_verified", s.witnesses_verified},
           {"mean_scanned", s.mean_scanned},
           {"delta_prime", s.delta_prime},
           {"by_size", std::move(sizes)}};
}

void to_json(Json &j, const OrderingHistogram &h) {
  Json counts = Json::array();
  for (const auto &[o, c] : h.counts) {
    counts.push_back(Json{{"ordering", o}, {"count", c}, {"frequency", h.frequency(o)}});
  }
  j = Json{{"k", h.k}, {"coords", h.coords}, {"counts", std::move(counts)}};
}

void to_json(Json &j, const EpsIsoReport &r) {
  j = Json{{"max_defect", r.max_defect},
           {"surjectivity_radius", r.surjectivity_radius},
           {"pairs", r.pairs},
           {"targets", r.targets},
           {"pass", r.pass}};
}

void to_json(Json &j, const StepIsoResult &r) {
  j = Json{{"holds", r.holds}, {"pairs_checked", r.pairs_checked}};
  if (r.counterexample) {
    const auto &c = *r.counterexample;
    j["counterexample"] = Json{{"first", c.first},
                               {"second", c.second},
                               {"source_floor", c.source_floor},
                               {"target_floor", c.target_floor}};
  }
}

void to_json(Json &j, const LemmaConditions &c) {
  j = Json{{"floors", c.floors},
           {"orders", c.orders},
           {"implication_holds", c.implication_holds()},
           {"first_failure", c.first_failure}};
  if (c.step) j["step_isometry"] = *c.step;
}

void to_json(Json &j, const VerifyReport &r) {
  j = Json::array();
  for (const auto &c : r.checks) {
    j.push_back(Json{{"name", c.name},
                     {"passed", c.passed},
                     {"checked", c.checked},
                     {"detail", c.detail}});
  }
}

namespace {

template <typename T>
Json opt(const std::optional<T> &v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

void to_json(Json &j, const StageAuditC &a) {
  j = Json{{"stage", a.stage},
           {"direction", to_string(a.direction)},
           {"source", a.source},
           {"already_matched", a.already_matched},
           {"image", opt(a.image)}};
  if (a.already_matched) return;
  j["upper"] = a.upper;
  j["lower"] = a.lower;
  j["upper_inf"] = a.upper_inf;
  j["lower_inf"] = a.lower_inf;
  j["target"] = a.target ? Json(*a.target) : Json(nullptr);
  j["alpha"] = a.alpha;
  j["M"] = a.stabilization_index;
  j["alpha_prime"] = a.alpha_prime;
  j["beta"] = a.beta;
  j["joined"] = a.joined;
  j["density_candidates"] = a.density_candidates;
  j["witness_scanned"] = a.witness_scanned;
  j["anchor"] = opt(a.anchor);
}

void to_json(Json &j, const StageAuditCa &a) {
  Json region = Json::array();
  for (const auto &iv : a.region) {
    region.push_back(Json{{"j", iv.source_position},
                          {"k", iv.target_position},
                          {"floor", iv.floor},
                          {"lower", iv.lower},
                          {"upper", iv.upper}});
  }
  Json fresh = Json::array();
  for (auto [s, t] : a.new_positions) fresh.push_back(Json::array({s, t}));
  j = Json{{"stage", a.stage},
           {"direction", to_string(a.direction)},
           {"source", a.source},
           {"already_matched", a.already_matched},
           {"new_positions", std::move(fresh)},
           {"region", std::move(region)},
           {"region_radius", a.region_radius},
           {"in_region", a.in_region},
           {"witness_scanned", a.witness_scanned},
           {"image", opt(a.image)}};
}

void to_json(Json &j, const RunResult &r) {
  Json map = Json::array();
  for (auto [a, b] : r.map) map.push_back(Json::array({a, b}));
  j = Json{{"engine", to_string(r.engine)},
           {"rounds_requested", r.rounds_requested},
           {"stages_completed", r.stages_completed},
           {"outcome", to_string(r.outcome)},
           {"failure_stage", opt(r.failure_stage)},
           {"failure_direction",
            r.failure_direction ? Json(to_string(*r.failure_direction))
                                : Json(nullptr)},
           {"reason", r.reason},
           {"verifications", r.verifications},
           {"verification_failures", r.verification_failures},
           {"theta_shifted", r.theta_shifted},
           {"map", std::move(map)}};
  if (const auto *c = std::get_if<PartialIsoC>(&r.state)) {
    j["audit"] = c->audit;
  } else {
    const auto &ca = std::get<PartialIsoCa>(r.state);
    j["audit"] = ca.audit;
    Json pos = Json::array();
    for (auto [s, t] : ca.g.forward()) pos.push_back(Json::array({s, t}));
    j["positions"] = std::move(pos);
  }
}

void to_json(Json &j, const PairMap &m) {
  j = Json::array();
  for (const auto &e : m) {
    j.push_back(Json{{"source", e.source}, {"target", e.target}});
  }
}

PairMap pair_map_from_json(const Json &j) {
  PairMap m;
  const Json &arr = j.is_object() ? j.at("pairs") : j;
  for (const Json &e : arr) {
    m.push_back({seq_point_from_json(e.at("source")),
                 seq_point_from_json(e.at("target"))});
  }
  return m;
}

std::vector<std::pair<Vertex, Vertex>> vertex_map_from_json(const Json &j) {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (const Json &e : j.at("map")) {
    out.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
  }
  return out;
}

Json read_json(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::SchemaMismatch, path.string() + ": " + e.what());
  }
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

void write_json(const std::filesystem::path &path, const Json &j) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << dump(j);
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace larg
