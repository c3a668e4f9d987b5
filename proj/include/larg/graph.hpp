//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "larg/measure.hpp"

namespace larg {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Coin for the unordered pair {i, j}: a hash of (seed, min, max) mapped to
/// [0, 1). The edge is present iff coin < p, so raising p only adds edges.
double pair_coin(std::uint64_t seed, Vertex i, Vertex j) noexcept;

/// LARG(V, delta, p): each pair closer than delta joined with probability p.
/// Immutable once built.
class LargGraph {
 public:
  static LargGraph generate(DenseSet vertices, double delta, double p,
                            std::uint64_t seed);

  /// Rebuild from a stored edge list. Checks symmetry, bounds, the threshold
  /// property and agreement with the coins.
  static LargGraph from_edges(DenseSet vertices, double delta, double p,
                              std::uint64_t seed, std::span<const Edge> edges);

  /// Same edges and parameters over `image`, the vertex set pushed through
  /// an isometry (the theta shift). Throws InvariantViolation if an edge
  /// stops being shorter than delta.
  LargGraph transport(DenseSet image) const;

  std::size_t size() const noexcept { return vertices_.size(); }
  const DenseSet &vertices() const noexcept { return vertices_; }
  const SeqPoint &point(Vertex v) const { return vertices_.points.at(v); }
  double delta() const noexcept { return delta_; }
  double p() const noexcept { return p_; }
  std::uint64_t seed() const noexcept { return seed_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }
  bool adjacent(Vertex u, Vertex v) const;
  std::size_t edge_count() const noexcept { return edge_count_; }
  /// Edges (i < j) in lexicographic order.
  std::vector<Edge> edges() const;

 private:
  LargGraph(DenseSet vertices, double delta, double p, std::uint64_t seed);

  DenseSet vertices_;
  double delta_;
  double p_;
  std::uint64_t seed_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// Graph distance in hops; nullopt stands for infinity (disconnected).
using Hops = std::optional<std::size_t>;

std::vector<Hops> bfs_distances(const LargGraph &g, Vertex source);
Hops graph_distance(const LargGraph &g, Vertex u, Vertex v);

/// Every edge shorter than delta and adjacency symmetric and loop-free.
bool check_threshold(const LargGraph &g);

struct LawDisagreement {
  Vertex u;
  Vertex v;
  double distance;
  Hops hops;
};

struct DistanceLawReport {
  std::size_t pairs_tested = 0;  // pairs with distance >= delta
  std::size_t agree = 0;
  std::size_t lower_bound_violations = 0;
  std::size_t disconnected = 0;
  std::size_t unsafe_floors = 0;
  std::size_t near_pairs = 0;  // distance < delta
  std::size_t near_ok = 0;
  std::vector<LawDisagreement> disagreement_examples;

  double agreement() const noexcept {
    return pairs_tested == 0 ? 0.0
                             : static_cast<double>(agree) /
                                   static_cast<double>(pairs_tested);
  }
};

/// Checks d_G = floor(|u - v| / delta) + 1 on far pairs and the hard bound
/// d_G >= ceil(|u - v| / delta) on every pair; near pairs must sit at hop
/// distance 0, 1 or 2 matching equality and adjacency.
DistanceLawReport distance_law_report(const LargGraph &g,
                                      std::span<const Edge> pairs,
                                      std::size_t max_examples = 20);

/// `count` pairs with source drawn from `sources` random vertices and a
/// target at distance in [min_dist, max_dist). Few sources keep the BFS
/// cost of a report low.
std::vector<Edge> sample_pairs(const LargGraph &g, std::size_t count,
                               std::size_t sources, double min_dist,
                               double max_dist, std::uint64_t seed);

}  // namespace larg
