//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "larg/error.hpp"
#include "larg/graph.hpp"
#include "larg/measure.hpp"

namespace larg::test {

/// Runs f and expects an Error carrying `code`.
inline void expect_code(ErrorCode code, const std::function<void()> &f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(code) << ", nothing thrown";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

inline SamplerConfig ca_config(std::uint64_t seed, std::size_t prefix_len = 1,
                               double a = 0.5) {
  SamplerConfig c;
  c.seed = seed;
  c.prefix_len = prefix_len;
  c.tag = SpaceTag::ca(a);
  c.window = 3.0;
  return c;
}

inline LargGraph ca_graph(std::size_t n, std::uint64_t seed,
                          std::size_t prefix_len = 1, double p = 0.5) {
  return LargGraph::generate(
      sample_dense_set(ca_config(split_seed(seed, 0), prefix_len), n), 1.0, p,
      split_seed(seed, 1));
}

/// Hand-built set; the i.d.f. report is computed, not assumed.
inline DenseSet manual_set(std::vector<SeqPoint> points, SpaceTag tag) {
  DenseSet s;
  s.config.tag = tag;
  s.config.prefix_len = points.empty() ? 1 : std::max<std::size_t>(1, points[0].realized());
  s.points = std::move(points);
  s.idf = check_idf(s.points);
  return s;
}

/// Random point of c with a random prefix length in [0, max_len].
inline SeqPoint random_c_point(std::mt19937_64 &rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  std::vector<double> prefix(len(rng));
  for (auto &v : prefix) v = coord(rng);
  return SeqPoint(std::move(prefix), coord(rng), SpaceTag::c());
}

}  // namespace larg::test
