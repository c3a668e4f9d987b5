//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "larg/space.hpp"

namespace larg {

/// Stream splitting: task `index` of an experiment seeded with `seed` draws
/// from `split_seed(seed, index)`. splitmix64 finalizer over both inputs.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Standard deviation of coordinate j before truncation: 1 / log(j + 1).
double coordinate_sigma(std::size_t j);

/// Truncation envelope: every sampled |x_j - limit| lies below 3 sigma_j.
double truncation_envelope(std::size_t j);

struct SamplerConfig {
  std::uint64_t seed = 0;
  std::size_t prefix_len = 64;
  double idf_guard = kDefaultGuard;
  SpaceTag tag = SpaceTag::c0();
  /// Box [-K, K] for every realized coordinate and the limit; draws outside
  /// it are redrawn. Unset means no window.
  std::optional<double> window;
  /// Cap on consecutive rejected draws before sampling gives up.
  std::size_t max_consecutive_rejections = 100000;

  void validate() const;

  friend bool operator==(const SamplerConfig &,
                         const SamplerConfig &) = default;
};

struct SamplingStats {
  std::uint64_t draws = 0;
  std::uint64_t idf_rejections = 0;
  std::uint64_t window_rejections = 0;

  friend bool operator==(const SamplingStats &,
                         const SamplingStats &) = default;
};

/// Ordered countable sample (its realized finite part) in one space.
struct DenseSet {
  std::vector<SeqPoint> points;
  SamplerConfig config;
  IdfReport idf;
  SamplingStats stats;

  std::size_t size() const noexcept { return points.size(); }
  const SeqPoint &operator[](std::size_t i) const { return points[i]; }
};

/// Seeded draws from the truncated Gaussian product measures. Owns its
/// generator, so one instance per stream.
class MeasureSampler {
 public:
  explicit MeasureSampler(const SamplerConfig &cfg);

  /// Coordinates a + sigma_j Z_j with |Z_j| <= 3, limit a.
  SeqPoint mu_a(double a);
  /// mu_0 draw shifted by an independent standard normal t; limit t.
  SeqPoint mu_c();
  /// Draw from the measure matching the configured tag.
  SeqPoint draw();

 private:
  std::vector<double> centered_prefix(std::size_t len);
  double truncated_standard_normal();

  SamplerConfig cfg_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

SeqPoint sample_mu_a(double a, const SamplerConfig &cfg);
SeqPoint sample_mu_c(const SamplerConfig &cfg);

enum class ShiftDirection { Forward, Backward };

/// x + (1/2, 1/2, ...) taking c0 to c_{1/2}; Backward inverts.
SeqPoint theta_shift(const SeqPoint &x, ShiftDirection dir);
DenseSet theta_shift(const DenseSet &set, ShiftDirection dir);

/// n i.i.d. draws, each redrawn until it is i.d.f. against the points
/// already accepted and inside the window.
DenseSet sample_dense_set(const SamplerConfig &cfg, std::size_t n);

/// True when `x` lies in the closed box [-K, K] on every realized coordinate
/// and the limit.
bool in_window(const SeqPoint &x, double k);

/// Orderings are lists of query-local positions in increasing order of
/// fractional part: ordering {2, 0, 1} means point 2 < point 0 < point 1.
using Ordering = std::vector<std::size_t>;

struct OrderingQuery {
  std::vector<std::size_t> point_indices;
  std::vector<Ordering> orderings;
};

/// Whether the fractional parts at coordinate j of the given points are
/// ordered as `ordering`. False on a tie.
bool ordering_matches(const DenseSet &set,
                      std::span<const std::size_t> point_indices,
                      const Ordering &ordering, std::size_t j,
                      double guard = kDefaultGuard);

/// Distinct coordinate positions j_1..j_L (L = number of orderings), j_l
/// realizing ordering l, found by scanning 1..budget in order and skipping
/// `excluded`. Throws BudgetExhausted when some ordering has no position.
std::vector<std::size_t>
find_iop_coords(const DenseSet &set, const OrderingQuery &query,
                std::size_t budget, const std::set<std::size_t> &excluded = {});

struct OrderingHistogram {
  std::size_t k = 0;
  std::size_t coords = 0;
  std::map<Ordering, std::size_t> counts;

  double frequency(const Ordering &o) const;
};

/// Empirical distribution of the fractional-part ordering of `indices`
/// across realized coordinates first..last (inclusive).
OrderingHistogram ordering_frequency(const DenseSet &set,
                                     std::span<const std::size_t> indices,
                                     std::size_t first, std::size_t last);

struct TailSample {
  std::size_t j;
  double deviation;
  double envelope;
};

/// (j, |x_j - limit|, 3 / log(j + 1)) for every realized coordinate.
std::vector<TailSample> tail_decay_report(const SeqPoint &x);

}  // namespace larg
