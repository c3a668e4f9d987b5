//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#include "larg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "larg/error.hpp"

namespace larg {

namespace {

std::uint64_t mix(std::uint64_t x) noexcept {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

}  // namespace

double pair_coin(std::uint64_t seed, Vertex i, Vertex j) noexcept {
  const std::uint64_t lo = std::min(i, j);
  const std::uint64_t hi = std::max(i, j);
  const std::uint64_t h = mix(mix(seed ^ 0x9e3779b97f4a7c15ULL) ^ (lo << 32 | hi));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

LargGraph::LargGraph(DenseSet vertices, double delta, double p,
                     std::uint64_t seed)
    : vertices_(std::move(vertices)), delta_(delta), p_(p), seed_(seed),
      adjacency_(vertices_.size()) {
  if (!(delta_ > 0.0) || !std::isfinite(delta_)) {
    throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  }
  if (!(p_ > 0.0 && p_ <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "p must lie in (0, 1]");
  }
  if (vertices_.size() > std::numeric_limits<Vertex>::max()) {
    throw Error(ErrorCode::InvalidArgument, "too many vertices");
  }
}

LargGraph LargGraph::generate(DenseSet vertices, double delta, double p,
                              std::uint64_t seed) {
  LargGraph g(std::move(vertices), delta, p, seed);
  const auto &pts = g.vertices_.points;
  const std::size_t n = pts.size();
  // sup_dist >= |x_1 - y_1|, so a sweep over the first coordinate prunes.
  std::vector<double> key(n);
  for (std::size_t i = 0; i < n; ++i) key[i] = pts[i].coord(std::size_t{1});
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::sort(order.begin(), order.end(),
            [&](Vertex a, Vertex b) { return key[a] < key[b]; });
  for (std::size_t s = 0; s < n; ++s) {
    const Vertex u = order[s];
    for (std::size_t t = s + 1; t < n; ++t) {
      const Vertex v = order[t];
      if (key[v] - key[u] >= delta) break;
      if (sup_dist(pts[u], pts[v]) < delta && pair_coin(seed, u, v) < p) {
        g.adjacency_[u].push_back(v);
        g.adjacency_[v].push_back(u);
        ++g.edge_count_;
      }
    }
  }
  for (auto &nb : g.adjacency_) std::sort(nb.begin(), nb.end());
  return g;
}

LargGraph LargGraph::from_edges(DenseSet vertices, double delta, double p,
                                std::uint64_t seed,
                                std::span<const Edge> edges) {
  LargGraph g = generate(std::move(vertices), delta, p, seed);
  std::vector<Edge> given;
  given.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a >= g.size() || b >= g.size() || a == b) {
      throw Error(ErrorCode::SchemaMismatch, "edge endpoint out of range");
    }
    given.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(given.begin(), given.end());
  if (given != g.edges()) {
    throw Error(ErrorCode::SchemaMismatch,
                "edge list does not match regeneration from (vertices, "
                "delta, p, seed)");
  }
  return g;
}

LargGraph LargGraph::transport(DenseSet image) const {
  if (image.size() != size()) {
    throw Error(ErrorCode::InvalidArgument, "image has a different size");
  }
  LargGraph g(std::move(image), delta_, p_, seed_);
  g.adjacency_ = adjacency_;
  g.edge_count_ = edge_count_;
  if (!check_threshold(g)) {
    throw Error(ErrorCode::InvariantViolation,
                "transported edge no longer below the threshold");
  }
  return g;
}

bool LargGraph::adjacent(Vertex u, Vertex v) const {
  const auto &nb = adjacency_.at(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> LargGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < adjacency_.size(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<Hops> bfs_distances(const LargGraph &g, Vertex source) {
  std::vector<Hops> dist(g.size());
  std::deque<Vertex> queue;
  dist.at(source) = 0;
  queue.push_back(source);
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(u)) {
      if (!dist[w]) {
        dist[w] = *dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

Hops graph_distance(const LargGraph &g, Vertex u, Vertex v) {
  if (u >= g.size() || v >= g.size()) {
    throw Error(ErrorCode::InvalidArgument, "vertex out of range");
  }
  return bfs_distances(g, u)[v];
}

bool check_threshold(const LargGraph &g) {
  for (Vertex u = 0; u < g.size(); ++u) {
    for (Vertex v : g.neighbors(u)) {
      if (u == v || !g.adjacent(v, u)) return false;
      if (!(sup_dist(g.point(u), g.point(v)) < g.delta())) return false;
    }
  }
  return true;
}

DistanceLawReport distance_law_report(const LargGraph &g,
                                      std::span<const Edge> pairs,
                                      std::size_t max_examples) {
  DistanceLawReport r;
  std::unordered_map<Vertex, std::vector<Hops>> cache;
  const double guard = g.vertices().config.idf_guard;
  for (auto [u, v] : pairs) {
    auto it = cache.find(u);
    if (it == cache.end()) it = cache.emplace(u, bfs_distances(g, u)).first;
    const Hops hops = it->second.at(v);
    const double s = sup_dist(g.point(u), g.point(v)) / g.delta();
    if (u != v && integer_gap(s) < guard) {
      ++r.unsafe_floors;
      continue;
    }
    const auto lower = static_cast<std::size_t>(std::ceil(s));
    if (hops && *hops < lower) ++r.lower_bound_violations;
    if (s < 1.0) {
      ++r.near_pairs;
      const std::size_t expect = u == v ? 0 : (g.adjacent(u, v) ? 1 : 2);
      if (hops && *hops == expect) ++r.near_ok;
      continue;
    }
    ++r.pairs_tested;
    if (!hops) ++r.disconnected;
    const auto law = static_cast<std::size_t>(std::floor(s)) + 1;
    if (hops && *hops == law) {
      ++r.agree;
    } else if (r.disagreement_examples.size() < max_examples) {
      r.disagreement_examples.push_back({u, v, s * g.delta(), hops});
    }
  }
  return r;
}

std::vector<Edge> sample_pairs(const LargGraph &g, std::size_t count,
                               std::size_t sources, double min_dist,
                               double max_dist, std::uint64_t seed) {
  if (g.size() < 2 || count == 0) return {};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(g.size() - 1));
  sources = std::clamp<std::size_t>(sources, 1, g.size());
  std::vector<Vertex> all(g.size());
  std::iota(all.begin(), all.end(), Vertex{0});
  std::shuffle(all.begin(), all.end(), rng);
  std::vector<Vertex> pool(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(sources));
  std::uniform_int_distribution<std::size_t> pick_source(0, pool.size() - 1);

  std::vector<Edge> out;
  out.reserve(count);
  const std::size_t max_attempts = 1000 * count + 1000;
  for (std::size_t attempt = 0; out.size() < count && attempt < max_attempts;
       ++attempt) {
    const Vertex u = pool[pick_source(rng)];
    const Vertex v = pick(rng);
    if (u == v) continue;
    const double d = sup_dist(g.point(u), g.point(v));
    if (d >= min_dist && d < max_dist) out.emplace_back(u, v);
  }
  return out;
}

}  // namespace larg
