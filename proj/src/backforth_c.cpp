//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <sstream>

#include "larg/backforth.hpp"
#include "larg/error.hpp"

namespace larg {

namespace {

void tighten(double fx, double fz, double fw, double &upper, double &lower) {
  if (fz > fx) {
    upper = std::min(upper, fw);
  } else if (fz < fx) {
    lower = std::max(lower, fw);
  }
}

// One forth extension from src to dst; phi maps src -> dst.
StageAuditC step(Bijection &phi, const LargGraph &src, const LargGraph &dst,
                 Vertex x, const EngineBudgets &budgets) {
  if (x >= src.size()) {
    throw Error(ErrorCode::InvalidArgument, "vertex out of range");
  }
  StageAuditC a;
  a.source = x;
  if (const auto img = phi.image(x)) {
    a.already_matched = true;
    a.image = static_cast<Vertex>(*img);
    return a;
  }

  const SeqPoint &px = src.point(x);
  std::size_t n = px.realized();
  for (auto [z, w] : phi.forward()) {
    n = std::max({n, src.point(static_cast<Vertex>(z)).realized(),
                  dst.point(static_cast<Vertex>(w)).realized()});
  }

  a.upper.assign(n, 1.0);
  a.lower.assign(n, 0.0);
  for (auto [z, w] : phi.forward()) {
    const SeqPoint &pz = src.point(static_cast<Vertex>(z));
    const SeqPoint &pw = dst.point(static_cast<Vertex>(w));
    for (std::size_t i = 1; i <= n; ++i) {
      tighten(frac(px.coord(i)), frac(pz.coord(i)), frac(pw.coord(i)),
              a.upper[i - 1], a.lower[i - 1]);
    }
    tighten(frac(px.limit()), frac(pz.limit()), frac(pw.limit()), a.upper_inf,
            a.lower_inf);
  }

  a.alpha = (a.upper_inf - a.lower_inf) / 6.0;
  if (!(a.alpha > 0.0)) {
    throw Error(ErrorCode::InvariantViolation, "empty bracket at infinity");
  }

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(a.lower[i] < a.upper[i])) {
      throw Error(ErrorCode::InvariantViolation,
                  "empty bracket at coordinate " + std::to_string(i + 1));
    }
    y[i] = std::floor(px.coord(i + 1)) + (a.lower[i] + a.upper[i]) / 2.0;
  }
  const double x_inf_floor = std::floor(px.limit());
  const double y_inf = x_inf_floor + (a.lower_inf + a.upper_inf) / 2.0;

  std::size_t last_bad = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool settled = std::abs(a.upper[i] - a.upper_inf) < a.alpha &&
                         std::abs(a.lower[i] - a.lower_inf) < a.alpha &&
                         std::floor(y[i]) == x_inf_floor;
    if (!settled) last_bad = i + 1;
  }
  a.stabilization_index = last_bad + 1;

  a.alpha_prime = a.alpha;
  for (std::size_t i = 0; i + 1 < a.stabilization_index; ++i) {
    a.alpha_prime = std::min(a.alpha_prime, (a.upper[i] - a.lower[i]) / 2.0);
  }
  a.alpha_prime *= 1.0 - 1e-6;

  a.target = SeqPoint(std::move(y), y_inf, SpaceTag::c());
  const SeqPoint &py = *a.target;

  double far = 0.0;
  for (auto [z, w] : phi.forward()) {
    if (src.adjacent(x, static_cast<Vertex>(z))) {
      a.joined.push_back(static_cast<Vertex>(w));
      far = std::max(far, sup_dist(dst.point(static_cast<Vertex>(w)), py));
    }
  }
  std::sort(a.joined.begin(), a.joined.end());
  if (!(far < 1.0)) {
    throw Error(ErrorCode::InvariantViolation,
                "image of a neighbour lies at distance >= 1 from the target");
  }
  a.beta = std::min(a.alpha_prime / 2.0, (1.0 - far) / 2.0);

  // Every v and w sits inside B_{2 beta}(y).
  std::vector<std::pair<double, Vertex>> pool;
  for (Vertex t = 0; t < dst.size(); ++t) {
    if (phi.contains_target(t)) continue;
    const double d = sup_dist(dst.point(t), py);
    if (d < 2.0 * a.beta) pool.emplace_back(d, t);
  }
  std::sort(pool.begin(), pool.end());
  std::vector<Vertex> anchors;
  for (auto [d, t] : pool) {
    if (d < a.beta) anchors.push_back(t);
  }
  a.density_candidates = anchors.size();
  if (anchors.empty()) {
    std::ostringstream os;
    os << "no unmatched vertex within beta = " << a.beta << " of the target";
    throw Error(ErrorCode::DensityFailure, os.str());
  }

  const auto joined_ok = [&](Vertex w) {
    for (const auto &entry : phi.backward()) {
      const auto z = static_cast<Vertex>(entry.first);
      const bool want = std::binary_search(a.joined.begin(), a.joined.end(), z);
      if (dst.adjacent(w, z) != want) return false;
    }
    return true;
  };

  for (Vertex v : anchors) {
    const SeqPoint &pv = dst.point(v);
    std::vector<std::pair<double, Vertex>> near;
    for (auto [d, w] : pool) {
      if (w == v) continue;
      const double dv = sup_dist(dst.point(w), pv);
      if (dv < a.beta) near.emplace_back(dv, w);
    }
    std::sort(near.begin(), near.end());
    for (auto [d, w] : near) {
      ++a.witness_scanned;
      if (budgets.witness_scan != 0 && a.witness_scanned > budgets.witness_scan) {
        throw Error(ErrorCode::BudgetExhausted,
                    "witness scan budget of " +
                        std::to_string(budgets.witness_scan) + " exceeded");
      }
      if (joined_ok(w)) {
        a.anchor = v;
        a.image = w;
        phi.insert(x, w);
        return a;
      }
    }
  }
  std::ostringstream os;
  os << a.density_candidates << " anchors within beta = " << a.beta << ", "
     << a.witness_scanned << " candidates scanned, none correctly joined to "
     << a.joined.size() << " of " << phi.size() << " matched vertices";
  throw Error(ErrorCode::WitnessFailure, os.str());
}

void require_sound(const PartialIsoC &state, const LargGraph &g,
                   const LargGraph &h) {
  const VerifyReport rep = verify_partial_iso(state, g, h);
  for (const auto &c : rep.checks) {
    if (!c.passed) {
      throw Error(ErrorCode::InvariantViolation, c.name + ": " + c.detail);
    }
  }
}

}  // namespace

PartialIsoC extend_forth_c(PartialIsoC state, const LargGraph &g,
                           const LargGraph &h, Vertex x,
                           const EngineBudgets &budgets) {
  StageAuditC a = step(state.phi, g, h, x, budgets);
  a.stage = state.stage + 1;
  a.direction = Direction::Forth;
  state.audit.push_back(std::move(a));
  require_sound(state, g, h);
  return state;
}

PartialIsoC extend_back_c(PartialIsoC state, const LargGraph &g,
                          const LargGraph &h, Vertex xi,
                          const EngineBudgets &budgets) {
  state.phi.swap_sides();
  StageAuditC a = step(state.phi, h, g, xi, budgets);
  state.phi.swap_sides();
  a.stage = state.stage + 1;
  a.direction = Direction::Back;
  state.audit.push_back(std::move(a));
  require_sound(state, g, h);
  return state;
}

}  // namespace larg
