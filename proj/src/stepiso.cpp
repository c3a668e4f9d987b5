//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#include "larg/stepiso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "larg/error.hpp"

namespace larg {

namespace {

bool same_order(double a, double b, double c, double d) {
  return (a < b) == (c < d) && (a > b) == (c > d);
}

}  // namespace

void validate_pair_map(const PairMap &m) {
  for (std::size_t s = 0; s < m.size(); ++s) {
    for (std::size_t t = s + 1; t < m.size(); ++t) {
      if (m[s].source == m[t].source || m[s].target == m[t].target) {
        throw Error(ErrorCode::InvalidArgument,
                    "map entries " + std::to_string(s) + " and " +
                        std::to_string(t) + " are not injective");
      }
    }
  }
}

PairMap pair_map(const LargGraph &g, const LargGraph &h,
                 std::span<const std::pair<Vertex, Vertex>> pairs) {
  PairMap m;
  m.reserve(pairs.size());
  for (auto [u, v] : pairs) m.push_back({g.point(u), h.point(v)});
  return m;
}

StepIsoResult is_step_isometry(const PairMap &m, double guard) {
  StepIsoResult r;
  for (std::size_t s = 0; s < m.size(); ++s) {
    for (std::size_t t = s + 1; t < m.size(); ++t) {
      ++r.pairs_checked;
      const auto a = floor_dist(m[s].source, m[t].source, guard);
      const auto b = floor_dist(m[s].target, m[t].target, guard);
      if (a != b && r.holds) {
        r.holds = false;
        r.counterexample = StepCounterexample{s, t, a, b};
      }
    }
  }
  return r;
}

LemmaConditions check_lemma_step(const PairMap &m, double guard) {
  LemmaConditions c;
  const auto note = [&](const std::string &why) {
    if (c.first_failure.empty()) c.first_failure = why;
  };
  std::size_t width = 0;
  for (const auto &e : m) {
    width = std::max({width, e.source.realized(), e.target.realized()});
  }
  for (std::size_t s = 0; s < m.size(); ++s) {
    const SeqPoint &x = m[s].source;
    const SeqPoint &fx = m[s].target;
    for (std::size_t i = 1; i <= width; ++i) {
      if (std::floor(x.coord(i)) != std::floor(fx.coord(i))) {
        c.floors = false;
        note("floor differs for entry " + std::to_string(s) + " at " +
             std::to_string(i));
      }
    }
    if (std::floor(x.limit()) != std::floor(fx.limit())) {
      c.floors = false;
      note("floor differs for entry " + std::to_string(s) + " at infinity");
    }
    for (std::size_t t = s + 1; t < m.size(); ++t) {
      const SeqPoint &y = m[t].source;
      const SeqPoint &fy = m[t].target;
      for (std::size_t i = 1; i <= width; ++i) {
        if (!same_order(frac(x.coord(i)), frac(y.coord(i)), frac(fx.coord(i)),
                        frac(fy.coord(i)))) {
          c.orders = false;
          note("order of entries " + std::to_string(s) + ", " +
               std::to_string(t) + " flips at " + std::to_string(i));
        }
      }
      if (!same_order(frac(x.limit()), frac(y.limit()), frac(fx.limit()),
                      frac(fy.limit()))) {
        c.orders = false;
        note("order of entries " + std::to_string(s) + ", " +
             std::to_string(t) + " flips at infinity");
      }
    }
  }
  if (c.floors && c.orders) c.step = is_step_isometry(m, guard);
  return c;
}

EpsIsometry build_eps_isometry(const LargGraph &g, const LargGraph &h,
                               std::span<const std::pair<Vertex, Vertex>> iso,
                               std::span<const SeqPoint> samples, bool strict) {
  std::vector<std::pair<Vertex, Vertex>> order(iso.begin(), iso.end());
  std::sort(order.begin(), order.end());
  EpsIsometry out;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const SeqPoint &x = samples[s];
    const auto hit = std::find_if(order.begin(), order.end(), [&](auto pr) {
      return sup_dist(g.point(pr.first), x) < 1.0;
    });
    if (hit == order.end()) {
      if (strict) {
        throw Error(ErrorCode::NoVertexInRange,
                    "sample " + std::to_string(s) +
                        " has no matched vertex within distance 1");
      }
      out.uncovered.push_back(s);
      continue;
    }
    out.map.push_back({x, h.point(hit->second)});
    out.anchors.push_back(hit->first);
  }
  return out;
}

EpsIsoReport check_eps_isometry(const PairMap &m,
                                std::span<const SeqPoint> targets) {
  EpsIsoReport r;
  for (std::size_t s = 0; s < m.size(); ++s) {
    for (std::size_t t = s + 1; t < m.size(); ++t) {
      ++r.pairs;
      const double defect =
          std::abs(sup_dist(m[s].target, m[t].target) -
                   sup_dist(m[s].source, m[t].source));
      r.max_defect = std::max(r.max_defect, defect);
    }
  }
  for (const auto &y : targets) {
    ++r.targets;
    double best = std::numeric_limits<double>::infinity();
    for (const auto &e : m) best = std::min(best, sup_dist(e.target, y));
    r.surjectivity_radius = std::max(r.surjectivity_radius, best);
  }
  r.pass = r.max_defect < 4.0 && r.surjectivity_radius < 3.0;
  return r;
}

}  // namespace larg
