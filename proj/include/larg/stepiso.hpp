//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "larg/graph.hpp"

namespace larg {

struct PointPair {
  SeqPoint source;
  SeqPoint target;
};

/// Finite map given by its graph. Sources and targets are each distinct.
using PairMap = std::vector<PointPair>;

/// Throws InvalidArgument on a repeated source or target.
void validate_pair_map(const PairMap &m);

/// The map induced by matched vertex pairs (u in g, v in h).
PairMap pair_map(const LargGraph &g, const LargGraph &h,
                 std::span<const std::pair<Vertex, Vertex>> pairs);

struct StepCounterexample {
  std::size_t first;
  std::size_t second;
  std::int64_t source_floor;
  std::int64_t target_floor;
};

struct StepIsoResult {
  bool holds = true;
  std::size_t pairs_checked = 0;
  std::optional<StepCounterexample> counterexample;
};

/// floor |f(u) - f(v)| == floor |u - v| over every pair of entries. Throws
/// UnsafeFloor when a distance sits within `guard` of an integer.
StepIsoResult is_step_isometry(const PairMap &m, double guard = kDefaultGuard);

struct LemmaConditions {
  bool floors = true;  // floor f(x)_i == floor x_i
  bool orders = true;  // {f(x)_i} < {f(y)_i} iff {x_i} < {y_i}
  std::string first_failure;
  /// Set when both conditions hold.
  std::optional<StepIsoResult> step;

  bool implication_holds() const {
    return !(floors && orders) || (step && step->holds);
  }
};

/// Evaluates both conditions on every realized coordinate and the limit;
/// when they hold, runs is_step_isometry as well. The domain is assumed
/// convex; this is not checked.
LemmaConditions check_lemma_step(const PairMap &m,
                                 double guard = kDefaultGuard);

struct EpsIsometry {
  PairMap map;                          // sample -> T(sample)
  std::vector<Vertex> anchors;          // n(x) for each mapped sample
  std::vector<std::size_t> uncovered;   // samples with no matched vertex near
};

/// T(x) = iso(x^(n(x))) with n(x) the least matched vertex of g within
/// distance 1 of x. Uncovered samples are skipped and listed; with
/// `strict` they raise NoVertexInRange instead.
EpsIsometry build_eps_isometry(const LargGraph &g, const LargGraph &h,
                               std::span<const std::pair<Vertex, Vertex>> iso,
                               std::span<const SeqPoint> samples,
                               bool strict = false);

struct EpsIsoReport {
  double max_defect = 0.0;
  double surjectivity_radius = 0.0;
  std::size_t pairs = 0;
  std::size_t targets = 0;
  bool pass = false;  // max_defect < 4 and surjectivity_radius < 3
};

/// Max of | |T(x) - T(x')| - |x - x'| | over all pairs of entries, and max
/// over targets of the distance to the nearest image point.
EpsIsoReport check_eps_isometry(const PairMap &m,
                                std::span<const SeqPoint> targets);

}  // namespace larg
