//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "larg/graph.hpp"

namespace larg {

struct GecQuery {
  Vertex center;
  std::vector<Vertex> A;
  std::vector<Vertex> B;
  double delta_prime;
};

struct GecOutcome {
  std::optional<Vertex> witness;
  std::size_t candidates_scanned = 0;
};

/// Throws MalformedQuery unless A and B are disjoint, in range, within delta
/// of the center, and 0 < delta' < delta.
void validate_query(const LargGraph &g, const GecQuery &q);

/// z adjacent to every vertex of A and to none of B.
bool correctly_joined(const LargGraph &g, Vertex z, std::span<const Vertex> A,
                      std::span<const Vertex> B);

/// Scans vertices by increasing distance from the center (ties by index) for
/// z outside A, B and the center with z correctly joined, A and B inside
/// B_delta(z), and |x - z| < delta'. First hit wins.
GecOutcome probe(const LargGraph &g, const GecQuery &q);

/// Re-checks conditions (i)-(iii) for `z` from the raw point and adjacency
/// data only.
bool verify_witness(const LargGraph &g, const GecQuery &q, Vertex z);

struct GecSizeStats {
  std::size_t trials = 0;
  std::size_t successes = 0;

  double rate() const noexcept {
    return trials == 0 ? 0.0
                       : static_cast<double>(successes) /
                             static_cast<double>(trials);
  }
};

struct GecStatistics {
  std::size_t trials = 0;      // queries actually posed
  std::size_t skipped = 0;     // too few vertices near the center for |A|+|B|
  std::size_t successes = 0;
  std::size_t witnesses_verified = 0;
  double mean_scanned = 0.0;
  double delta_prime = 0.0;
  std::map<std::pair<std::size_t, std::size_t>, GecSizeStats> by_size;

  double rate() const noexcept {
    return trials == 0 ? 0.0
                       : static_cast<double>(successes) /
                             static_cast<double>(trials);
  }
};

/// Random query: uniform center, sizes as given, A and B drawn from vertices
/// within delta * (1 - margin) of the center. nullopt when too few exist.
std::optional<GecQuery> sample_query(const LargGraph &g, std::size_t a_size,
                                     std::size_t b_size, double delta_prime,
                                     double margin, std::uint64_t seed);

/// All (|A|, |B|) with |A| + |B| <= max_total.
std::vector<std::pair<std::size_t, std::size_t>>
sizes_up_to(std::size_t max_total);

/// `trials` probes; trial i draws its size uniformly from `sizes` and its
/// query from split_seed(seed, i), so results do not depend on scheduling.
GecStatistics
gec_statistics(const LargGraph &g, std::size_t trials,
               std::span<const std::pair<std::size_t, std::size_t>> sizes,
               double delta_prime, std::uint64_t seed, double margin = 0.05);

}  // namespace larg
