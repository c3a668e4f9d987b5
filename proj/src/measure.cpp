//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#include "larg/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "larg/error.hpp"

namespace larg {

namespace {

constexpr double kTruncation = 3.0;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

double coordinate_sigma(std::size_t j) {
  if (j == 0) throw Error(ErrorCode::InvalidArgument, "j is 1-based");
  return 1.0 / std::log(static_cast<double>(j) + 1.0);
}

double truncation_envelope(std::size_t j) {
  return kTruncation * coordinate_sigma(j);
}

void SamplerConfig::validate() const {
  if (prefix_len == 0) {
    throw Error(ErrorCode::InvalidArgument, "prefix_len must be >= 1");
  }
  if (!(idf_guard > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "idf_guard must be positive");
  }
  if (window && !(*window > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "window must be positive");
  }
  if (max_consecutive_rejections == 0) {
    throw Error(ErrorCode::InvalidArgument, "rejection cap must be >= 1");
  }
}

MeasureSampler::MeasureSampler(const SamplerConfig &cfg)
    : cfg_(cfg), rng_(cfg.seed) {
  cfg_.validate();
}

double MeasureSampler::truncated_standard_normal() {
  for (;;) {
    const double z = normal_(rng_);
    if (std::abs(z) <= kTruncation) return z;
  }
}

std::vector<double> MeasureSampler::centered_prefix(std::size_t len) {
  std::vector<double> out(len);
  for (std::size_t j = 1; j <= len; ++j) {
    out[j - 1] = coordinate_sigma(j) * truncated_standard_normal();
  }
  return out;
}

SeqPoint MeasureSampler::mu_a(double a) {
  auto prefix = centered_prefix(cfg_.prefix_len);
  for (auto &v : prefix) v += a;
  const SpaceTag tag = a == 0.0 ? SpaceTag::c0() : SpaceTag::ca(a);
  return SeqPoint(std::move(prefix), a, tag);
}

SeqPoint MeasureSampler::mu_c() {
  auto prefix = centered_prefix(cfg_.prefix_len);
  const double t = normal_(rng_);
  for (auto &v : prefix) v += t;
  return SeqPoint(std::move(prefix), t, SpaceTag::c());
}

SeqPoint MeasureSampler::draw() {
  switch (cfg_.tag.kind()) {
  case SpaceKind::C: return mu_c();
  case SpaceKind::C0: return mu_a(0.0);
  case SpaceKind::Ca: {
    auto prefix = centered_prefix(cfg_.prefix_len);
    for (auto &v : prefix) v += cfg_.tag.a();
    return SeqPoint(std::move(prefix), cfg_.tag.a(), cfg_.tag);
  }
  case SpaceKind::FiniteDim: return SeqPoint::finite(centered_prefix(cfg_.tag.dim()));
  }
  throw Error(ErrorCode::WrongTag, "unknown space");
}

SeqPoint sample_mu_a(double a, const SamplerConfig &cfg) {
  return MeasureSampler(cfg).mu_a(a);
}

SeqPoint sample_mu_c(const SamplerConfig &cfg) {
  return MeasureSampler(cfg).mu_c();
}

SeqPoint theta_shift(const SeqPoint &x, ShiftDirection dir) {
  const bool forward = dir == ShiftDirection::Forward;
  if (forward && x.tag().kind() != SpaceKind::C0) {
    throw Error(ErrorCode::WrongTag, "forward theta shift needs a c0 point");
  }
  if (!forward &&
      !(x.tag().kind() == SpaceKind::Ca && x.tag().a() == 0.5)) {
    throw Error(ErrorCode::WrongTag,
                "backward theta shift needs a c_{1/2} point");
  }
  const double shift = forward ? 0.5 : -0.5;
  std::vector<double> prefix = x.prefix();
  for (auto &v : prefix) v += shift;
  return SeqPoint(std::move(prefix), forward ? 0.5 : 0.0,
                  forward ? SpaceTag::ca(0.5) : SpaceTag::c0());
}

DenseSet theta_shift(const DenseSet &set, ShiftDirection dir) {
  DenseSet out;
  out.config = set.config;
  out.config.tag = dir == ShiftDirection::Forward ? SpaceTag::ca(0.5)
                                                  : SpaceTag::c0();
  out.stats = set.stats;
  out.points.reserve(set.size());
  for (const auto &x : set.points) out.points.push_back(theta_shift(x, dir));
  out.idf = check_idf(out.points, out.config.idf_guard);
  return out;
}

bool in_window(const SeqPoint &x, double k) {
  for (double v : x.prefix()) {
    if (std::abs(v) > k) return false;
  }
  return x.tag().kind() == SpaceKind::FiniteDim || std::abs(x.limit()) <= k;
}

DenseSet sample_dense_set(const SamplerConfig &cfg, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  cfg.validate();
  MeasureSampler sampler(cfg);
  DenseSet set;
  set.config = cfg;
  set.points.reserve(n);
  std::size_t streak = 0;
  while (set.points.size() < n) {
    SeqPoint x = sampler.draw();
    ++set.stats.draws;
    bool accept = true;
    if (cfg.window && !in_window(x, *cfg.window)) {
      ++set.stats.window_rejections;
      accept = false;
    } else if (!idf_compatible(x, set.points, cfg.idf_guard)) {
      ++set.stats.idf_rejections;
      accept = false;
    }
    if (!accept) {
      if (++streak >= cfg.max_consecutive_rejections) {
        throw Error(ErrorCode::RejectionBudgetExceeded,
                    "no acceptable draw after " + std::to_string(streak) +
                        " attempts with " +
                        std::to_string(set.points.size()) + " accepted");
      }
      continue;
    }
    streak = 0;
    set.points.push_back(std::move(x));
  }
  set.idf = check_idf(set.points, cfg.idf_guard);
  return set;
}

bool ordering_matches(const DenseSet &set,
                      std::span<const std::size_t> point_indices,
                      const Ordering &ordering, std::size_t j, double guard) {
  if (ordering.size() != point_indices.size()) {
    throw Error(ErrorCode::InvalidArgument, "ordering size mismatch");
  }
  for (std::size_t m = 1; m < ordering.size(); ++m) {
    const double lo = frac(set[point_indices[ordering[m - 1]]].coord(j));
    const double hi = frac(set[point_indices[ordering[m]]].coord(j));
    if (!(hi - lo >= guard)) return false;
  }
  return true;
}

std::vector<std::size_t> find_iop_coords(const DenseSet &set,
                                         const OrderingQuery &query,
                                         std::size_t budget,
                                         const std::set<std::size_t> &excluded) {
  if (budget == 0) throw Error(ErrorCode::InvalidArgument, "budget must be >= 1");
  for (const auto &o : query.orderings) {
    auto sorted = o;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t m = 0; m < sorted.size(); ++m) {
      if (sorted[m] != m || sorted.size() != query.point_indices.size()) {
        throw Error(ErrorCode::InvalidArgument, "ordering is not a permutation");
      }
    }
  }
  std::vector<std::size_t> chosen;
  std::set<std::size_t> used = excluded;
  for (const auto &o : query.orderings) {
    std::optional<std::size_t> hit;
    for (std::size_t j = 1; j <= budget; ++j) {
      if (used.contains(j)) continue;
      if (ordering_matches(set, query.point_indices, o, j,
                           set.config.idf_guard)) {
        hit = j;
        break;
      }
    }
    if (!hit) {
      throw Error(ErrorCode::BudgetExhausted,
                  "ordering " + std::to_string(chosen.size() + 1) +
                      " not realized within " + std::to_string(budget) +
                      " coordinates");
    }
    chosen.push_back(*hit);
    used.insert(*hit);
  }
  return chosen;
}

double OrderingHistogram::frequency(const Ordering &o) const {
  if (coords == 0) return 0.0;
  const auto it = counts.find(o);
  return it == counts.end() ? 0.0
                            : static_cast<double>(it->second) /
                                  static_cast<double>(coords);
}

OrderingHistogram ordering_frequency(const DenseSet &set,
                                     std::span<const std::size_t> indices,
                                     std::size_t first, std::size_t last) {
  if (!set.config.tag.has_fixed_limit()) {
    throw Error(ErrorCode::WrongTag, "ordering frequencies need a product-type space");
  }
  if (first == 0 || last < first || last > set.config.prefix_len) {
    throw Error(ErrorCode::InvalidArgument, "coordinate range outside prefix");
  }
  if (indices.empty()) throw Error(ErrorCode::InvalidArgument, "no points");
  OrderingHistogram h;
  h.k = indices.size();
  std::vector<double> values(indices.size());
  for (std::size_t j = first; j <= last; ++j) {
    for (std::size_t m = 0; m < indices.size(); ++m) {
      values[m] = set[indices[m]].coord(j);
    }
    ++h.counts[frac_order(values, set.config.idf_guard)];
    ++h.coords;
  }
  return h;
}

std::vector<TailSample> tail_decay_report(const SeqPoint &x) {
  if (!x.tag().has_fixed_limit()) {
    throw Error(ErrorCode::WrongTag, "tail report needs a c0 or c_a point");
  }
  std::vector<TailSample> out;
  out.reserve(x.realized());
  for (std::size_t j = 1; j <= x.realized(); ++j) {
    out.push_back({j, std::abs(x.coord(j) - x.limit()), truncation_envelope(j)});
  }
  return out;
}

}  // namespace larg
