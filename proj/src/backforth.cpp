//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#include "larg/backforth.hpp"

#include <algorithm>
#include <cmath>

#include "larg/error.hpp"

namespace larg {

std::string to_string(Engine e) { return e == Engine::C ? "c" : "ca"; }

std::string to_string(Direction d) {
  return d == Direction::Forth ? "forth" : "back";
}

std::string to_string(Outcome o) {
  switch (o) {
  case Outcome::Completed: return "completed";
  case Outcome::DensityFailure: return "density_failure";
  case Outcome::WitnessFailure: return "witness_failure";
  case Outcome::IopBudgetExhausted: return "iop_budget_exhausted";
  case Outcome::BudgetExhausted: return "budget_exhausted";
  case Outcome::InvariantViolation: return "invariant_violation";
  }
  return "unknown";
}

std::optional<std::size_t> Bijection::image(std::size_t s) const {
  const auto it = fwd_.find(s);
  if (it == fwd_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Bijection::preimage(std::size_t t) const {
  const auto it = bwd_.find(t);
  if (it == bwd_.end()) return std::nullopt;
  return it->second;
}

void Bijection::insert(std::size_t s, std::size_t t) {
  if (fwd_.contains(s) || bwd_.contains(t)) {
    throw Error(ErrorCode::InvariantViolation,
                "pair (" + std::to_string(s) + ", " + std::to_string(t) +
                    ") clashes with the existing map");
  }
  fwd_.emplace(s, t);
  bwd_.emplace(t, s);
}

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const HypothesisCheck &c) { return c.passed; });
}

const HypothesisCheck *VerifyReport::find(const std::string &name) const {
  for (const auto &c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

Outcome outcome_of(ErrorCode code) {
  switch (code) {
  case ErrorCode::DensityFailure: return Outcome::DensityFailure;
  case ErrorCode::WitnessFailure: return Outcome::WitnessFailure;
  case ErrorCode::IopBudgetExhausted: return Outcome::IopBudgetExhausted;
  case ErrorCode::BudgetExhausted: return Outcome::BudgetExhausted;
  default: return Outcome::InvariantViolation;
  }
}

void check_inputs(const LargGraph &g, const LargGraph &h, Engine engine) {
  for (const LargGraph *x : {&g, &h}) {
    if (x->size() == 0) {
      throw Error(ErrorCode::InvalidArgument, "empty vertex set");
    }
    if (x->delta() != 1.0) {
      throw Error(ErrorCode::InvalidArgument,
                  "back-and-forth runs on graphs with delta = 1");
    }
    const SpaceTag &tag = x->vertices().config.tag;
    if (!tag.is_sequence_space()) {
      throw Error(ErrorCode::WrongTag, "back-and-forth needs sequence spaces");
    }
    if (engine == Engine::Ca && tag.kind() != SpaceKind::Ca &&
        tag.kind() != SpaceKind::C0) {
      throw Error(ErrorCode::WrongTag, "engine ca needs c_a or c0 data");
    }
    if (!check_idf(x->vertices().points, x->vertices().config.idf_guard).ok) {
      throw Error(ErrorCode::InvalidArgument,
                  "vertex set is not integer distance free");
    }
  }
  if (engine == Engine::Ca) {
    const double a = g.vertices().config.tag.kind() == SpaceKind::C0
                         ? 0.5
                         : g.vertices().config.tag.a();
    const double b = h.vertices().config.tag.kind() == SpaceKind::C0
                         ? 0.5
                         : h.vertices().config.tag.a();
    if (a != b) {
      throw Error(ErrorCode::WrongTag, "both sides must share the limit a");
    }
  }
}

}  // namespace

RunResult run_back_forth(const LargGraph &g, const LargGraph &h, Engine engine,
                         std::size_t rounds, const EngineBudgets &budgets) {
  check_inputs(g, h, engine);
  RunResult r;
  r.engine = engine;
  r.rounds_requested = rounds;

  std::optional<LargGraph> gs;
  std::optional<LargGraph> hs;
  const LargGraph *G = &g;
  const LargGraph *H = &h;
  if (g.vertices().config.tag.kind() == SpaceKind::C0) {
    gs = g.transport(theta_shift(g.vertices(), ShiftDirection::Forward));
    G = &*gs;
    r.theta_shifted = true;
  }
  if (h.vertices().config.tag.kind() == SpaceKind::C0) {
    hs = h.transport(theta_shift(h.vertices(), ShiftDirection::Forward));
    H = &*hs;
    r.theta_shifted = true;
  }

  const auto run = [&](auto state, auto forth, auto back) {
    for (std::size_t t = 1; t <= rounds; ++t) {
      // Steps take copies so a failed step leaves the last good state.
      Direction dir = Direction::Forth;
      try {
        state = forth(state, t);
        dir = Direction::Back;
        state = back(state, t);
        state.stage = t;
      } catch (const Error &e) {
        r.outcome = outcome_of(e.code());
        r.failure_stage = t;
        r.failure_direction = dir;
        r.reason = e.what();
        break;
      }
      ++r.verifications;
      const VerifyReport rep = verify_partial_iso(state, *G, *H);
      if (!rep.all_passed()) {
        ++r.verification_failures;
        r.outcome = Outcome::InvariantViolation;
        r.failure_stage = t;
        for (const auto &c : rep.checks) {
          if (!c.passed) {
            r.reason = c.name + ": " + c.detail;
            break;
          }
        }
        break;
      }
      r.stages_completed = t;
    }
    return state;
  };

  if (engine == Engine::C) {
    auto state = run(
        PartialIsoC{},
        [&](PartialIsoC s, std::size_t t) {
          if (t - 1 >= G->size()) return s;
          return extend_forth_c(std::move(s), *G, *H,
                                static_cast<Vertex>(t - 1), budgets);
        },
        [&](PartialIsoC s, std::size_t t) {
          if (t - 1 >= H->size()) return s;
          return extend_back_c(std::move(s), *G, *H,
                               static_cast<Vertex>(t - 1), budgets);
        });
    for (auto [x, y] : state.phi.forward()) {
      r.map.emplace_back(static_cast<Vertex>(x), static_cast<Vertex>(y));
    }
    r.state = std::move(state);
  } else {
    auto state = run(
        PartialIsoCa{},
        [&](PartialIsoCa s, std::size_t t) {
          return extend_forth_ca(std::move(s), *G, *H, t, budgets);
        },
        [&](PartialIsoCa s, std::size_t t) {
          return extend_back_ca(std::move(s), *G, *H, t, budgets);
        });
    for (auto [x, y] : state.f.forward()) {
      r.map.emplace_back(static_cast<Vertex>(x), static_cast<Vertex>(y));
    }
    r.state = std::move(state);
  }
  return r;
}

}  // namespace larg
