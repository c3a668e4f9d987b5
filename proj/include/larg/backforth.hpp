//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "larg/graph.hpp"

namespace larg {

enum class Engine { C, Ca };
enum class Direction { Forth, Back };

std::string to_string(Engine e);
std::string to_string(Direction d);

/// Finite partial injection kept in both directions. Insert-only, so each
/// later map extends the earlier ones.
class Bijection {
 public:
  bool contains_source(std::size_t s) const { return fwd_.contains(s); }
  bool contains_target(std::size_t t) const { return bwd_.contains(t); }
  std::optional<std::size_t> image(std::size_t s) const;
  std::optional<std::size_t> preimage(std::size_t t) const;
  /// Throws InvariantViolation if either side is already taken.
  void insert(std::size_t s, std::size_t t);
  std::size_t size() const noexcept { return fwd_.size(); }
  const std::map<std::size_t, std::size_t> &forward() const { return fwd_; }
  const std::map<std::size_t, std::size_t> &backward() const { return bwd_; }
  /// Exchange source and target roles.
  void swap_sides() noexcept { fwd_.swap(bwd_); }

  friend bool operator==(const Bijection &, const Bijection &) = default;

 private:
  std::map<std::size_t, std::size_t> fwd_;
  std::map<std::size_t, std::size_t> bwd_;
};

struct EngineBudgets {
  /// Highest coordinate position scanned when realizing orderings; 0 means
  /// every realized position of the target set.
  std::size_t iop_budget = 0;
  /// Cap on witness candidates examined per extension; 0 means unlimited.
  std::size_t witness_scan = 0;
};

// ---------------------------------------------------------------- c engine

/// Quantities of one extension of the c engine. In a back step the roles of
/// G and H are exchanged: `source` is a vertex of H and `image` one of G.
struct StageAuditC {
  std::size_t stage = 0;  // round being built (1-based)
  Direction direction = Direction::Forth;
  Vertex source = 0;
  bool already_matched = false;
  std::vector<double> upper;  // u_i on realized positions
  std::vector<double> lower;  // l_i
  double upper_inf = 1.0;
  double lower_inf = 0.0;
  std::optional<SeqPoint> target;  // y
  double alpha = 0.0;
  std::size_t stabilization_index = 1;  // M
  double alpha_prime = 0.0;
  double beta = 0.0;
  std::vector<Vertex> joined;  // A: images of already-matched neighbours
  std::size_t density_candidates = 0;
  std::size_t witness_scanned = 0;
  std::optional<Vertex> anchor;  // v
  std::optional<Vertex> image;   // w
};

struct PartialIsoC {
  Bijection phi;          // G vertex -> H vertex
  std::size_t stage = 0;  // completed rounds
  std::vector<StageAuditC> audit;
};

/// Matches x (vertex of G) following the bracket construction; no-op audit
/// entry when x is already matched. Throws DensityFailure, WitnessFailure,
/// BudgetExhausted or InvariantViolation.
PartialIsoC extend_forth_c(PartialIsoC state, const LargGraph &g,
                           const LargGraph &h, Vertex x,
                           const EngineBudgets &budgets = {});

/// Mirror of extend_forth_c: finds a preimage in G for xi (vertex of H).
PartialIsoC extend_back_c(PartialIsoC state, const LargGraph &g,
                          const LargGraph &h, Vertex xi,
                          const EngineBudgets &budgets = {});

// --------------------------------------------------------------- c_a engine

struct IntervalAudit {
  std::size_t source_position;  // j
  std::size_t target_position;  // k = g(j)
  std::int64_t floor;           // a_k
  double lower;                 // b_k
  double upper;                 // c_k
};

struct StageAuditCa {
  std::size_t stage = 0;
  Direction direction = Direction::Forth;
  Vertex source = 0;
  bool already_matched = false;
  std::vector<std::pair<std::size_t, std::size_t>> new_positions;  // (j, r)
  std::vector<IntervalAudit> region;
  double region_radius = 0.0;
  std::size_t in_region = 0;
  std::size_t witness_scanned = 0;
  std::optional<Vertex> image;
};

struct PartialIsoCa {
  Bijection f;  // point indices, G -> H (0-based vertices)
  Bijection g;  // coordinate positions, G -> H (1-based)
  std::size_t stage = 0;
  std::vector<StageAuditCa> audit;
};

/// Stage n forth: extends the positions by n and the positions where
/// x^(n) leaves (0, 1), realizes the induced orders at fresh positions of H,
/// then matches x^(n) to a correctly joined vertex of the region U.
PartialIsoCa extend_forth_ca(PartialIsoCa state, const LargGraph &g,
                             const LargGraph &h, std::size_t n,
                             const EngineBudgets &budgets = {});

/// Stage n back: the same construction with G and H exchanged, matching
/// y^(n) and position n of H.
PartialIsoCa extend_back_ca(PartialIsoCa state, const LargGraph &g,
                            const LargGraph &h, std::size_t n,
                            const EngineBudgets &budgets = {});

// ------------------------------------------------------------ verification

struct HypothesisCheck {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::string detail;  // first failure
};

struct VerifyReport {
  std::vector<HypothesisCheck> checks;

  bool all_passed() const;
  const HypothesisCheck *find(const std::string &name) const;
};

/// Independent re-check of hypotheses (1)-(3) of the c construction and the
/// resulting step-isometry over all matched data.
VerifyReport verify_partial_iso(const PartialIsoC &state, const LargGraph &g,
                                const LargGraph &h);

/// Independent re-check of hypotheses (1)-(7) of the c_a construction and
/// the resulting step-isometry.
VerifyReport verify_partial_iso(const PartialIsoCa &state, const LargGraph &g,
                                const LargGraph &h);

// --------------------------------------------------------------------- runs

enum class Outcome {
  Completed,
  DensityFailure,
  WitnessFailure,
  IopBudgetExhausted,
  BudgetExhausted,
  InvariantViolation,
};

std::string to_string(Outcome o);

struct RunResult {
  Engine engine = Engine::Ca;
  std::size_t rounds_requested = 0;
  std::size_t stages_completed = 0;
  Outcome outcome = Outcome::Completed;
  std::optional<std::size_t> failure_stage;
  std::optional<Direction> failure_direction;
  std::string reason;
  std::size_t verifications = 0;        // verify_partial_iso calls made
  std::size_t verification_failures = 0;
  bool theta_shifted = false;
  std::vector<std::pair<Vertex, Vertex>> map;  // matched (G, H) pairs
  std::variant<PartialIsoC, PartialIsoCa> state;
};

/// Alternates forth and back for `rounds` rounds, verifying in full after
/// each completed round. c0 inputs are shifted to c_{1/2} first.
RunResult run_back_forth(const LargGraph &g, const LargGraph &h, Engine engine,
                         std::size_t rounds, const EngineBudgets &budgets = {});

}  // namespace larg
