//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "larg/backforth.hpp"
#include "larg/error.hpp"
#include "larg/gec.hpp"
#include "larg/graph.hpp"
#include "larg/measure.hpp"
#include "larg/stepiso.hpp"

namespace larg {

using Json = nlohmann::json;

inline constexpr const char *kToolName = "larg-lab";
inline constexpr const char *kToolVersion = "0.1.0";

/// {"name": "larg-lab", "version": "0.1.0"}
Json tool_info();

void to_json(Json &j, const SpaceTag &t);
SpaceTag space_tag_from_json(const Json &j);
void to_json(Json &j, const SeqPoint &x);
SeqPoint seq_point_from_json(const Json &j);
void to_json(Json &j, const SamplerConfig &c);
void from_json(const Json &j, SamplerConfig &c);
void to_json(Json &j, const SamplingStats &s);
void from_json(const Json &j, SamplingStats &s);
void to_json(Json &j, const IdfReport &r);
void to_json(Json &j, const DenseSet &s);
/// Points are rebuilt through the checked constructor and the i.d.f. report
/// is recomputed rather than trusted.
DenseSet dense_set_from_json(const Json &j);

/// {"delta","p","seed","n","edges":[[i,j],...],"vertices":{...},"tool"}
Json graph_to_json(const LargGraph &g);
/// Regenerates from (vertices, delta, p, seed) and checks the stored edges.
LargGraph graph_from_json(const Json &j);

void to_json(Json &j, const DistanceLawReport &r);
void to_json(Json &j, const GecStatistics &s);
void to_json(Json &j, const OrderingHistogram &h);
void to_json(Json &j, const EpsIsoReport &r);
void to_json(Json &j, const StepIsoResult &r);
void to_json(Json &j, const LemmaConditions &c);
void to_json(Json &j, const VerifyReport &r);
void to_json(Json &j, const StageAuditC &a);
void to_json(Json &j, const StageAuditCa &a);
void to_json(Json &j, const RunResult &r);

void to_json(Json &j, const PairMap &m);
PairMap pair_map_from_json(const Json &j);

/// Matched (G, H) vertex pairs stored under "map" in a run artifact.
std::vector<std::pair<Vertex, Vertex>> vertex_map_from_json(const Json &j);

/// Throws Io on failure; malformed JSON raises SchemaMismatch.
Json read_json(const std::filesystem::path &path);
/// Two-space indented dump with a trailing newline.
void write_json(const std::filesystem::path &path, const Json &j);
std::string dump(const Json &j);

/// Runs `f`, turning nlohmann errors into SchemaMismatch.
template <typename F>
auto with_schema(const std::string &what, F &&f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::SchemaMismatch, what + ": " + e.what());
  }
}

}  // namespace larg
