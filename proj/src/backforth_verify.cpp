//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "larg/backforth.hpp"
#include "larg/error.hpp"

namespace larg {

namespace {

class Check {
 public:
  explicit Check(std::string name) { c_.name = std::move(name); }

  void expect(bool ok, const std::function<std::string()> &why) {
    ++c_.checked;
    if (!ok && c_.passed) {
      c_.passed = false;
      c_.detail = why();
    }
  }

  HypothesisCheck done() { return std::move(c_); }

 private:
  HypothesisCheck c_;
};

using Pairs = std::vector<std::pair<Vertex, Vertex>>;

Pairs pairs_of(const Bijection &b) {
  Pairs out;
  for (auto [s, t] : b.forward()) {
    out.emplace_back(static_cast<Vertex>(s), static_cast<Vertex>(t));
  }
  return out;
}

HypothesisCheck check_ranges(const Pairs &pairs, const LargGraph &g,
                             const LargGraph &h) {
  Check c("bijection");
  for (auto [x, y] : pairs) {
    c.expect(x < g.size() && y < h.size(), [&] {
      return "pair (" + std::to_string(x) + ", " + std::to_string(y) +
             ") out of range";
    });
  }
  return c.done();
}

HypothesisCheck check_adjacency(const std::string &name, const Pairs &pairs,
                                const LargGraph &g, const LargGraph &h) {
  Check c(name);
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    for (std::size_t t = s + 1; t < pairs.size(); ++t) {
      const auto [x, y] = pairs[s];
      const auto [z, w] = pairs[t];
      c.expect(g.adjacent(x, z) == h.adjacent(y, w), [&] {
        return "adjacency of " + std::to_string(x) + ", " + std::to_string(z) +
               " not preserved";
      });
    }
  }
  return c.done();
}

HypothesisCheck check_step(const Pairs &pairs, const LargGraph &g,
                           const LargGraph &h) {
  Check c("step_isometry");
  const double guard =
      std::min(g.vertices().config.idf_guard, h.vertices().config.idf_guard);
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    for (std::size_t t = s + 1; t < pairs.size(); ++t) {
      const auto [x, y] = pairs[s];
      const auto [z, w] = pairs[t];
      std::string why;
      bool ok = false;
      try {
        const auto lhs = floor_dist(g.point(x), g.point(z), guard);
        const auto rhs = floor_dist(h.point(y), h.point(w), guard);
        ok = lhs == rhs;
        if (!ok) {
          why = "floor distances " + std::to_string(lhs) + " vs " +
                std::to_string(rhs);
        }
      } catch (const Error &e) {
        why = e.what();
      }
      c.expect(ok, [&] {
        return "pair " + std::to_string(x) + ", " + std::to_string(z) + ": " +
               why;
      });
    }
  }
  return c.done();
}

bool same_order(double a, double b, double c, double d) {
  return (a < b) == (c < d) && (a > b) == (c > d);
}

}  // namespace

VerifyReport verify_partial_iso(const PartialIsoC &state, const LargGraph &g,
                                const LargGraph &h) {
  VerifyReport rep;
  const Pairs pairs = pairs_of(state.phi);
  rep.checks.push_back(check_ranges(pairs, g, h));
  if (!rep.checks.back().passed) return rep;

  Check enumeration("h1_enumeration");
  for (std::size_t t = 0; t < state.stage; ++t) {
    if (t < g.size()) {
      enumeration.expect(state.phi.contains_source(t), [&] {
        return "vertex " + std::to_string(t) + " of G unmatched";
      });
    }
    if (t < h.size()) {
      enumeration.expect(state.phi.contains_target(t), [&] {
        return "vertex " + std::to_string(t) + " of H unmatched";
      });
    }
  }
  rep.checks.push_back(enumeration.done());
  rep.checks.push_back(check_adjacency("h2_isomorphism", pairs, g, h));

  Check floors("h3a_floors");
  for (auto [x, y] : pairs) {
    const SeqPoint &px = g.point(x);
    const SeqPoint &py = h.point(y);
    const std::size_t n = std::max(px.realized(), py.realized());
    for (std::size_t i = 1; i <= n; ++i) {
      floors.expect(std::floor(px.coord(i)) == std::floor(py.coord(i)), [&] {
        return "vertex " + std::to_string(x) + " at coordinate " +
               std::to_string(i);
      });
    }
    floors.expect(std::floor(px.limit()) == std::floor(py.limit()), [&] {
      return "vertex " + std::to_string(x) + " at infinity";
    });
  }
  rep.checks.push_back(floors.done());

  Check orders("h3b_orders");
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    for (std::size_t t = s + 1; t < pairs.size(); ++t) {
      const SeqPoint &px = g.point(pairs[s].first);
      const SeqPoint &pz = g.point(pairs[t].first);
      const SeqPoint &py = h.point(pairs[s].second);
      const SeqPoint &pw = h.point(pairs[t].second);
      const std::size_t n = std::max(
          {px.realized(), pz.realized(), py.realized(), pw.realized()});
      for (std::size_t i = 1; i <= n; ++i) {
        orders.expect(same_order(frac(px.coord(i)), frac(pz.coord(i)),
                                 frac(py.coord(i)), frac(pw.coord(i))),
                      [&] {
                        return "vertices " + std::to_string(pairs[s].first) +
                               ", " + std::to_string(pairs[t].first) +
                               " at coordinate " + std::to_string(i);
                      });
      }
      orders.expect(same_order(frac(px.limit()), frac(pz.limit()),
                               frac(py.limit()), frac(pw.limit())),
                    [&] {
                      return "vertices " + std::to_string(pairs[s].first) +
                             ", " + std::to_string(pairs[t].first) +
                             " at infinity";
                    });
    }
  }
  rep.checks.push_back(orders.done());
  rep.checks.push_back(check_step(pairs, g, h));
  return rep;
}

VerifyReport verify_partial_iso(const PartialIsoCa &state, const LargGraph &g,
                                const LargGraph &h) {
  VerifyReport rep;
  const Pairs pairs = pairs_of(state.f);
  rep.checks.push_back(check_ranges(pairs, g, h));
  if (!rep.checks.back().passed) return rep;
  {
    Check c("positions");
    for (auto [j, k] : state.g.forward()) {
      c.expect(j >= 1 && k >= 1, [] { return std::string("position 0 used"); });
    }
    rep.checks.push_back(c.done());
  }

  Check h1("h1_source_domain");
  Check h2("h2_target_range");
  for (std::size_t t = 1; t <= state.stage; ++t) {
    if (t - 1 < g.size()) {
      h1.expect(state.f.contains_source(t - 1), [&] {
        return "point " + std::to_string(t - 1) + " of G unmatched";
      });
    }
    h1.expect(state.g.contains_source(t), [&] {
      return "position " + std::to_string(t) + " of G unmatched";
    });
    if (t - 1 < h.size()) {
      h2.expect(state.f.contains_target(t - 1), [&] {
        return "point " + std::to_string(t - 1) + " of H unmatched";
      });
    }
    h2.expect(state.g.contains_target(t), [&] {
      return "position " + std::to_string(t) + " of H unmatched";
    });
  }
  rep.checks.push_back(h1.done());
  rep.checks.push_back(h2.done());

  const auto inside = [](double v) { return v > 0.0 && v < 1.0; };
  Check h3("h3_source_support");
  Check h4("h4_target_support");
  for (auto [x, y] : pairs) {
    const SeqPoint &px = g.point(x);
    for (std::size_t j = 1; j <= px.realized(); ++j) {
      h3.expect(inside(px.coord(j)) || state.g.contains_source(j), [&] {
        return "point " + std::to_string(x) + " leaves (0, 1) at position " +
               std::to_string(j);
      });
    }
    h3.expect(inside(px.limit()), [&] {
      return "point " + std::to_string(x) + " has limit outside (0, 1)";
    });
    const SeqPoint &py = h.point(y);
    for (std::size_t k = 1; k <= py.realized(); ++k) {
      h4.expect(inside(py.coord(k)) || state.g.contains_target(k), [&] {
        return "point " + std::to_string(y) + " leaves (0, 1) at position " +
               std::to_string(k);
      });
    }
    h4.expect(inside(py.limit()), [&] {
      return "point " + std::to_string(y) + " has limit outside (0, 1)";
    });
  }
  rep.checks.push_back(h3.done());
  rep.checks.push_back(h4.done());

  Check h5("h5_orders");
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    for (std::size_t t = s + 1; t < pairs.size(); ++t) {
      const SeqPoint &px = g.point(pairs[s].first);
      const SeqPoint &pz = g.point(pairs[t].first);
      const SeqPoint &py = h.point(pairs[s].second);
      const SeqPoint &pw = h.point(pairs[t].second);
      for (auto [j, k] : state.g.forward()) {
        h5.expect(same_order(frac(px.coord(j)), frac(pz.coord(j)),
                             frac(py.coord(k)), frac(pw.coord(k))),
                  [&] {
                    return "points " + std::to_string(pairs[s].first) + ", " +
                           std::to_string(pairs[t].first) + " at position " +
                           std::to_string(j) + " -> " + std::to_string(k);
                  });
      }
    }
  }
  rep.checks.push_back(h5.done());

  Check h6("h6_floors");
  for (auto [x, y] : pairs) {
    for (auto [j, k] : state.g.forward()) {
      h6.expect(std::floor(g.point(x).coord(j)) == std::floor(h.point(y).coord(k)),
                [&] {
                  return "point " + std::to_string(x) + " at position " +
                         std::to_string(j) + " -> " + std::to_string(k);
                });
    }
  }
  rep.checks.push_back(h6.done());
  rep.checks.push_back(check_adjacency("h7_isomorphism", pairs, g, h));
  rep.checks.push_back(check_step(pairs, g, h));
  return rep;
}

}  // namespace larg
