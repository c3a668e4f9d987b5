//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "larg/backforth.hpp"
#include "larg/error.hpp"

namespace larg {

namespace {

std::size_t realized_width(const LargGraph &gr) {
  std::size_t w = std::numeric_limits<std::size_t>::max();
  for (const auto &p : gr.vertices().points) w = std::min(w, p.realized());
  return gr.size() == 0 ? 0 : w;
}

bool inside_unit(double t) { return t > 0.0 && t < 1.0; }

// Target position for source position j, given the points already matched.
std::size_t pick_position(std::size_t j, const LargGraph &src,
                          const LargGraph &dst, std::size_t src_width,
                          std::size_t dst_width,
                          const std::vector<std::size_t> &sources,
                          const std::vector<std::size_t> &images,
                          const std::set<std::size_t> &used,
                          const EngineBudgets &budgets) {
  if (j > src_width) {
    // Past the realized prefix every coordinate equals the limit, so one
    // unrealized target position is as good as another.
    if (j > dst_width && !used.contains(j)) return j;
    std::size_t r = dst_width + 1;
    while (used.contains(r)) ++r;
    return r;
  }
  const double guard = dst.vertices().config.idf_guard;
  std::vector<double> values;
  values.reserve(sources.size());
  for (std::size_t i : sources) {
    values.push_back(src.point(static_cast<Vertex>(i)).coord(j));
  }
  const Ordering order = frac_order(values, src.vertices().config.idf_guard);
  if (j <= dst_width && !used.contains(j) &&
      ordering_matches(dst.vertices(), images, order, j, guard)) {
    return j;
  }
  const std::size_t budget =
      budgets.iop_budget == 0 ? dst_width
                              : std::min(budgets.iop_budget, dst_width);
  if (budget == 0) {
    throw Error(ErrorCode::IopBudgetExhausted, "no realized target positions");
  }
  try {
    return find_iop_coords(dst.vertices(), OrderingQuery{images, {order}},
                           budget, used)
        .front();
  } catch (const Error &e) {
    if (e.code() != ErrorCode::BudgetExhausted) throw;
    throw Error(ErrorCode::IopBudgetExhausted,
                "ordering of " + std::to_string(sources.size()) +
                    " points at position " + std::to_string(j) +
                    " not realized within " + std::to_string(budget) +
                    " positions");
  }
}

// Stage n extension from src to dst; f maps points and g positions src ->
// dst.
StageAuditCa step(Bijection &f, Bijection &g, const LargGraph &src,
                  const LargGraph &dst, std::size_t n,
                  const EngineBudgets &budgets) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "stages start at 1");
  StageAuditCa a;
  a.source = static_cast<Vertex>(n - 1);
  const std::size_t src_width = realized_width(src);
  const std::size_t dst_width = realized_width(dst);
  const bool has_point = n - 1 < src.size();
  const Vertex x = a.source;

  std::vector<std::size_t> sources;
  std::vector<std::size_t> images;
  for (auto [i, t] : f.forward()) {
    sources.push_back(i);
    images.push_back(t);
  }

  std::set<std::size_t> fresh;
  if (!g.contains_source(n)) fresh.insert(n);
  if (has_point) {
    const SeqPoint &px = src.point(x);
    for (std::size_t j = 1; j <= px.realized(); ++j) {
      if (!inside_unit(px.coord(j)) && !g.contains_source(j)) fresh.insert(j);
    }
  }
  std::set<std::size_t> used;
  for (const auto &entry : g.backward()) used.insert(entry.first);
  for (std::size_t j : fresh) {
    const std::size_t r = pick_position(j, src, dst, src_width, dst_width,
                                        sources, images, used, budgets);
    used.insert(r);
    g.insert(j, r);
    a.new_positions.emplace_back(j, r);
  }

  if (!has_point) return a;
  if (const auto img = f.image(x)) {
    a.already_matched = true;
    a.image = static_cast<Vertex>(*img);
    return a;
  }

  // The region U: an open interval at every matched target position and
  // (0, 1) elsewhere.
  const SeqPoint &px = src.point(x);
  std::vector<double> lo(dst_width, 0.0);
  std::vector<double> hi(dst_width, 1.0);
  std::vector<std::pair<std::size_t, std::pair<double, double>>> tail_bounds;
  a.region_radius = 0.5;
  for (auto [j, k] : g.forward()) {
    const double xj = px.coord(j);
    const double fx = frac(xj);
    IntervalAudit iv{j, k, static_cast<std::int64_t>(std::floor(xj)), 0.0, 1.0};
    for (std::size_t m = 0; m < sources.size(); ++m) {
      const double fz = frac(src.point(static_cast<Vertex>(sources[m])).coord(j));
      const double fw = frac(dst.point(static_cast<Vertex>(images[m])).coord(k));
      if (fz < fx) {
        iv.lower = std::max(iv.lower, fw);
      } else if (fz > fx) {
        iv.upper = std::min(iv.upper, fw);
      }
    }
    if (!(iv.lower < iv.upper)) {
      throw Error(ErrorCode::InvariantViolation,
                  "empty interval at target position " + std::to_string(k));
    }
    const double base = static_cast<double>(iv.floor);
    if (k <= dst_width) {
      lo[k - 1] = base + iv.lower;
      hi[k - 1] = base + iv.upper;
    } else {
      tail_bounds.push_back({k, {base + iv.lower, base + iv.upper}});
    }
    a.region_radius = std::min(a.region_radius, (iv.upper - iv.lower) / 2.0);
    a.region.push_back(iv);
  }
  // Unrealized target positions hold the common limit; if it falls outside
  // its interval nothing is in U.
  bool tail_ok = true;
  const double limit = dst.vertices().config.tag.a();
  for (const auto &[k, b] : tail_bounds) {
    if (!(b.first < limit && limit < b.second)) tail_ok = false;
  }

  const auto in_region = [&](const SeqPoint &p) {
    for (std::size_t k = 0; k < dst_width; ++k) {
      const double v = p.prefix()[k];
      if (!(lo[k] < v && v < hi[k])) return false;
    }
    return true;
  };

  for (Vertex t = 0; tail_ok && t < dst.size(); ++t) {
    if (f.contains_target(t)) continue;
    const SeqPoint &pt = dst.point(t);
    if (!in_region(pt)) continue;
    ++a.in_region;
    ++a.witness_scanned;
    if (budgets.witness_scan != 0 && a.witness_scanned > budgets.witness_scan) {
      throw Error(ErrorCode::BudgetExhausted,
                  "witness scan budget of " +
                      std::to_string(budgets.witness_scan) + " exceeded");
    }
    bool joined = true;
    for (std::size_t m = 0; m < sources.size() && joined; ++m) {
      joined = dst.adjacent(t, static_cast<Vertex>(images[m])) ==
               src.adjacent(x, static_cast<Vertex>(sources[m]));
    }
    if (!joined) continue;

    const double guard = std::min(src.vertices().config.idf_guard,
                                  dst.vertices().config.idf_guard);
    for (std::size_t m = 0; m < sources.size(); ++m) {
      const auto lhs = floor_dist(pt, dst.point(static_cast<Vertex>(images[m])), guard);
      const auto rhs = floor_dist(px, src.point(static_cast<Vertex>(sources[m])), guard);
      if (lhs != rhs) {
        throw Error(ErrorCode::InvariantViolation,
                    "witness " + std::to_string(t) +
                        " breaks the floor of a matched distance");
      }
    }
    a.image = t;
    f.insert(x, t);
    return a;
  }

  if (a.in_region == 0) {
    std::ostringstream os;
    os << "region U is empty (radius " << a.region_radius << ", "
       << g.size() << " constrained positions)";
    throw Error(ErrorCode::DensityFailure, os.str());
  }
  std::ostringstream os;
  os << a.in_region << " vertices in U, none correctly joined to "
     << sources.size() << " matched vertices";
  throw Error(ErrorCode::WitnessFailure, os.str());
}

void require_sound(const PartialIsoCa &state, const LargGraph &g,
                   const LargGraph &h) {
  const VerifyReport rep = verify_partial_iso(state, g, h);
  for (const auto &c : rep.checks) {
    if (!c.passed) {
      throw Error(ErrorCode::InvariantViolation, c.name + ": " + c.detail);
    }
  }
}

void require_ca(const LargGraph &gr) {
  const SpaceTag &tag = gr.vertices().config.tag;
  if (tag.kind() != SpaceKind::Ca || !(tag.a() > 0.0 && tag.a() < 1.0)) {
    throw Error(ErrorCode::WrongTag,
                "engine ca needs c_a data with 0 < a < 1, got " +
                    tag.to_string());
  }
}

}  // namespace

PartialIsoCa extend_forth_ca(PartialIsoCa state, const LargGraph &g,
                             const LargGraph &h, std::size_t n,
                             const EngineBudgets &budgets) {
  require_ca(g);
  require_ca(h);
  StageAuditCa a = step(state.f, state.g, g, h, n, budgets);
  a.stage = n;
  a.direction = Direction::Forth;
  state.audit.push_back(std::move(a));
  require_sound(state, g, h);
  return state;
}

PartialIsoCa extend_back_ca(PartialIsoCa state, const LargGraph &g,
                            const LargGraph &h, std::size_t n,
                            const EngineBudgets &budgets) {
  require_ca(g);
  require_ca(h);
  state.f.swap_sides();
  state.g.swap_sides();
  StageAuditCa a = step(state.f, state.g, h, g, n, budgets);
  state.f.swap_sides();
  state.g.swap_sides();
  a.stage = n;
  a.direction = Direction::Back;
  state.audit.push_back(std::move(a));
  require_sound(state, g, h);
  return state;
}

}  // namespace larg
