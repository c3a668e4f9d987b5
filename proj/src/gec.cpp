//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#include "larg/gec.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "larg/error.hpp"
#include "larg/measure.hpp"
#include "larg/parallel.hpp"

namespace larg {

void validate_query(const LargGraph &g, const GecQuery &q) {
  const auto fail = [](const std::string &why) {
    throw Error(ErrorCode::MalformedQuery, why);
  };
  if (q.center >= g.size()) fail("center out of range");
  if (!(q.delta_prime > 0.0 && q.delta_prime < g.delta())) {
    fail("delta' must lie in (0, delta)");
  }
  std::set<Vertex> seen;
  for (const auto *side : {&q.A, &q.B}) {
    for (Vertex v : *side) {
      if (v >= g.size()) fail("vertex out of range");
      if (!seen.insert(v).second) fail("A and B must be disjoint sets");
      if (!(sup_dist(g.point(v), g.point(q.center)) < g.delta())) {
        fail("A and B must lie within delta of the center");
      }
    }
  }
}

bool correctly_joined(const LargGraph &g, Vertex z, std::span<const Vertex> A,
                      std::span<const Vertex> B) {
  for (Vertex a : A) {
    if (!g.adjacent(z, a)) return false;
  }
  for (Vertex b : B) {
    if (g.adjacent(z, b)) return false;
  }
  return true;
}

GecOutcome probe(const LargGraph &g, const GecQuery &q) {
  validate_query(g, q);
  const SeqPoint &x = g.point(q.center);
  std::vector<std::pair<double, Vertex>> near;
  for (Vertex z = 0; z < g.size(); ++z) {
    const double d = sup_dist(x, g.point(z));
    if (d < q.delta_prime) near.emplace_back(d, z);
  }
  std::sort(near.begin(), near.end());

  std::set<Vertex> excluded(q.A.begin(), q.A.end());
  excluded.insert(q.B.begin(), q.B.end());
  excluded.insert(q.center);

  GecOutcome out;
  for (auto [d, z] : near) {
    if (excluded.contains(z)) continue;
    ++out.candidates_scanned;
    if (!correctly_joined(g, z, q.A, q.B)) continue;
    const SeqPoint &pz = g.point(z);
    const auto inside = [&](Vertex w) {
      return sup_dist(g.point(w), pz) < g.delta();
    };
    if (std::all_of(q.A.begin(), q.A.end(), inside) &&
        std::all_of(q.B.begin(), q.B.end(), inside)) {
      out.witness = z;
      break;
    }
  }
  return out;
}

bool verify_witness(const LargGraph &g, const GecQuery &q, Vertex z) {
  if (z >= g.size() || z == q.center) return false;
  for (Vertex a : q.A) {
    if (a == z || !g.adjacent(a, z)) return false;
    if (!(sup_dist(g.point(a), g.point(z)) < g.delta())) return false;
  }
  for (Vertex b : q.B) {
    if (b == z || g.adjacent(b, z)) return false;
    if (!(sup_dist(g.point(b), g.point(z)) < g.delta())) return false;
  }
  return sup_dist(g.point(q.center), g.point(z)) < q.delta_prime;
}

std::optional<GecQuery> sample_query(const LargGraph &g, std::size_t a_size,
                                     std::size_t b_size, double delta_prime,
                                     double margin, std::uint64_t seed) {
  if (g.size() == 0) return std::nullopt;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(g.size() - 1));
  const Vertex x = pick(rng);
  const double reach = g.delta() * (1.0 - margin);
  std::vector<Vertex> near;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (v != x && sup_dist(g.point(v), g.point(x)) < reach) near.push_back(v);
  }
  if (near.size() < a_size + b_size) return std::nullopt;
  std::shuffle(near.begin(), near.end(), rng);
  GecQuery q{x, {}, {}, delta_prime};
  q.A.assign(near.begin(), near.begin() + static_cast<std::ptrdiff_t>(a_size));
  q.B.assign(near.begin() + static_cast<std::ptrdiff_t>(a_size),
             near.begin() + static_cast<std::ptrdiff_t>(a_size + b_size));
  return q;
}

std::vector<std::pair<std::size_t, std::size_t>>
sizes_up_to(std::size_t max_total) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a <= max_total; ++a) {
    for (std::size_t b = 0; a + b <= max_total; ++b) out.emplace_back(a, b);
  }
  return out;
}

GecStatistics
gec_statistics(const LargGraph &g, std::size_t trials,
               std::span<const std::pair<std::size_t, std::size_t>> sizes,
               double delta_prime, std::uint64_t seed, double margin) {
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (sizes.empty()) throw Error(ErrorCode::InvalidArgument, "no query sizes");

  struct Trial {
    std::pair<std::size_t, std::size_t> size;
    bool posed = false;
    bool success = false;
    bool verified = false;
    std::size_t scanned = 0;
  };
  std::vector<Trial> results(trials);
  parallel_for(trials, [&](std::size_t i) {
    const std::uint64_t s = split_seed(seed, i);
    auto &r = results[i];
    r.size = sizes[s % sizes.size()];
    const auto q = sample_query(g, r.size.first, r.size.second, delta_prime,
                                margin, split_seed(s, 1));
    if (!q) return;
    r.posed = true;
    const GecOutcome out = probe(g, *q);
    r.scanned = out.candidates_scanned;
    r.success = out.witness.has_value();
    r.verified = r.success && verify_witness(g, *q, *out.witness);
  });

  GecStatistics st;
  st.delta_prime = delta_prime;
  double scanned = 0.0;
  for (const auto &r : results) {
    if (!r.posed) {
      ++st.skipped;
      continue;
    }
    ++st.trials;
    auto &bucket = st.by_size[r.size];
    ++bucket.trials;
    scanned += static_cast<double>(r.scanned);
    if (r.success) {
      ++st.successes;
      ++bucket.successes;
    }
    if (r.verified) ++st.witnesses_verified;
  }
  st.mean_scanned = st.trials == 0 ? 0.0 : scanned / static_cast<double>(st.trials);
  return st;
}

}  // namespace larg
