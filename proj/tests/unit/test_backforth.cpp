//
// larg-lab
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "larg/backforth.hpp"
#include "larg/json_io.hpp"

namespace larg {
namespace {

using test::expect_code;

bool clean_failure(Outcome o) {
  return o == Outcome::Completed || o == Outcome::WitnessFailure ||
         o == Outcome::DensityFailure;
}

TEST(Bijection, InsertLookupAndClash) {
  Bijection b;
  b.insert(1, 10);
  b.insert(2, 20);
  EXPECT_EQ(b.image(1), std::optional<std::size_t>{10});
  EXPECT_EQ(b.preimage(20), std::optional<std::size_t>{2});
  EXPECT_FALSE(b.image(3));
  expect_code(ErrorCode::InvariantViolation, [&] { b.insert(1, 30); });
  expect_code(ErrorCode::InvariantViolation, [&] { b.insert(3, 10); });
  EXPECT_EQ(b.size(), 2u);
  b.swap_sides();
  EXPECT_EQ(b.image(10), std::optional<std::size_t>{1});
  EXPECT_TRUE(b.contains_target(2));
}

TEST(Inputs, Rejected) {
  const LargGraph g = test::ca_graph(50, 1);
  expect_code(ErrorCode::InvalidArgument, [&] {
    run_back_forth(LargGraph::generate(g.vertices(), 2.0, 0.5, 1), g,
                   Engine::Ca, 1);
  });
  SamplerConfig c;
  c.seed = 2;
  c.prefix_len = 1;
  c.tag = SpaceTag::c();
  const LargGraph gc = LargGraph::generate(sample_dense_set(c, 50), 1.0, 0.5, 1);
  expect_code(ErrorCode::WrongTag, [&] { run_back_forth(gc, gc, Engine::Ca, 1); });
  auto other = test::ca_config(3, 1, 0.25);
  const LargGraph gq = LargGraph::generate(sample_dense_set(other, 50), 1.0, 0.5, 1);
  expect_code(ErrorCode::WrongTag, [&] { run_back_forth(g, gq, Engine::Ca, 1); });
  SamplerConfig f;
  f.seed = 4;
  f.tag = SpaceTag::finite_dim(2);
  const LargGraph gf = LargGraph::generate(sample_dense_set(f, 20), 1.0, 0.5, 1);
  expect_code(ErrorCode::WrongTag, [&] { run_back_forth(gf, gf, Engine::C, 1); });
}

class EngineRun : public ::testing::TestWithParam<Engine> {};

TEST_P(EngineRun, StagesVerifyAndFailuresAreClean) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const LargGraph g = test::ca_graph(2000, 100 + seed);
    const LargGraph h = test::ca_graph(2000, 200 + seed);
    const RunResult r = run_back_forth(g, h, GetParam(), 8);
    EXPECT_TRUE(clean_failure(r.outcome)) << to_string(r.outcome) << " " << r.reason;
    EXPECT_EQ(r.verification_failures, 0u);
    EXPECT_EQ(r.verifications, r.stages_completed);
    EXPECT_GE(r.stages_completed, 1u);
    if (r.outcome == Outcome::Completed) {
      EXPECT_EQ(r.stages_completed, 8u);
      EXPECT_FALSE(r.failure_stage);
    } else {
      EXPECT_EQ(r.failure_stage, std::optional<std::size_t>{r.stages_completed + 1});
    }
    EXPECT_GE(r.map.size(), r.stages_completed);
    // The returned state is the last verified one.
    const VerifyReport rep = std::visit(
        [&](const auto &s) { return verify_partial_iso(s, g, h); }, r.state);
    EXPECT_TRUE(rep.all_passed());
  }
}

TEST_P(EngineRun, Deterministic) {
  const LargGraph g = test::ca_graph(1500, 7);
  const LargGraph h = test::ca_graph(1500, 8);
  const Json a = run_back_forth(g, h, GetParam(), 6);
  const Json b = run_back_forth(g, h, GetParam(), 6);
  EXPECT_EQ(dump(a), dump(b));
}

TEST_P(EngineRun, SameGraphOnBothSides) {
  const LargGraph g = test::ca_graph(1500, 9);
  const RunResult r = run_back_forth(g, g, GetParam(), 6);
  EXPECT_TRUE(clean_failure(r.outcome)) << r.reason;
  EXPECT_EQ(r.verification_failures, 0u);
  EXPECT_GE(r.stages_completed, 1u);
}

TEST_P(EngineRun, ThetaShiftForC0Inputs) {
  SamplerConfig c;
  c.prefix_len = 1;
  c.tag = SpaceTag::c0();
  c.window = 3.0;
  c.seed = 5;
  const LargGraph g = LargGraph::generate(sample_dense_set(c, 1500), 1.0, 0.5, 1);
  c.seed = 6;
  const LargGraph h = LargGraph::generate(sample_dense_set(c, 1500), 1.0, 0.5, 2);
  const RunResult r = run_back_forth(g, h, GetParam(), 3);
  EXPECT_TRUE(r.theta_shifted);
  EXPECT_TRUE(clean_failure(r.outcome)) << r.reason;
  EXPECT_EQ(r.verification_failures, 0u);
}

INSTANTIATE_TEST_SUITE_P(Engines, EngineRun,
                         ::testing::Values(Engine::C, Engine::Ca),
                         [](const auto &info) { return to_string(info.param); });

TEST(CEngine, AuditBracketsAreSound) {
  const LargGraph g = test::ca_graph(2000, 31);
  const LargGraph h = test::ca_graph(2000, 32);
  const RunResult r = run_back_forth(g, h, Engine::C, 6);
  const auto &state = std::get<PartialIsoC>(r.state);
  std::size_t checked = 0;
  for (const auto &a : state.audit) {
    if (a.already_matched || !a.image || !a.target) continue;
    ++checked;
    const SeqPoint &y = *a.target;
    for (std::size_t i = 0; i < a.upper.size(); ++i) {
      EXPECT_LT(a.lower[i], frac(y.coord(i + 1)));
      EXPECT_LT(frac(y.coord(i + 1)), a.upper[i]);
    }
    EXPECT_LT(a.lower_inf, frac(y.limit()));
    EXPECT_LT(frac(y.limit()), a.upper_inf);
    EXPECT_GT(a.alpha, 0.0);
    EXPECT_LE(a.alpha_prime, a.alpha);
    EXPECT_GT(a.beta, 0.0);
    EXPECT_LE(a.beta, a.alpha_prime / 2.0);
    const LargGraph &dst = a.direction == Direction::Forth ? h : g;
    ASSERT_TRUE(a.anchor);
    EXPECT_NE(*a.anchor, *a.image);
    EXPECT_LT(sup_dist(dst.point(*a.anchor), y), a.beta);
    EXPECT_LT(sup_dist(dst.point(*a.image), y), 2.0 * a.beta);
  }
  EXPECT_GT(checked, 0u);
}

TEST(CaEngine, AuditRegionAndPositions) {
  const LargGraph g = test::ca_graph(2000, 41);
  const LargGraph h = test::ca_graph(2000, 42);
  const RunResult r = run_back_forth(g, h, Engine::Ca, 6);
  const auto &state = std::get<PartialIsoCa>(r.state);
  std::set<std::size_t> forth_targets;
  std::set<std::size_t> back_targets;
  std::size_t checked = 0;
  for (const auto &a : state.audit) {
    auto &seen = a.direction == Direction::Forth ? forth_targets : back_targets;
    for (auto [j, k] : a.new_positions) {
      EXPECT_TRUE(seen.insert(k).second) << "position " << k << " reused";
    }
    if (!a.image) continue;
    ++checked;
    const LargGraph &dst = a.direction == Direction::Forth ? h : g;
    const SeqPoint &w = dst.point(*a.image);
    for (const auto &iv : a.region) {
      EXPECT_LE(0.0, iv.lower);
      EXPECT_LT(iv.lower, iv.upper);
      EXPECT_LE(iv.upper, 1.0);
      const double v = w.coord(iv.target_position);
      EXPECT_LT(static_cast<double>(iv.floor) + iv.lower, v);
      EXPECT_LT(v, static_cast<double>(iv.floor) + iv.upper);
    }
  }
  EXPECT_GT(checked, 0u);
  EXPECT_EQ(state.g.size(), forth_targets.size() + back_targets.size());
}

// Corrupting a verified state must be caught by some hypothesis check.
TEST(Verify, DetectsMutations) {
  const LargGraph g = test::ca_graph(2000, 51);
  const LargGraph h = test::ca_graph(2000, 52);

  const RunResult rc = run_back_forth(g, h, Engine::C, 4);
  const auto &c = std::get<PartialIsoC>(rc.state);
  ASSERT_GE(c.phi.size(), 3u);
  ASSERT_TRUE(verify_partial_iso(c, g, h).all_passed());
  {
    PartialIsoC bad = c;
    bad.stage = c.stage + 3;
    EXPECT_FALSE(verify_partial_iso(bad, g, h).find("h1_enumeration")->passed);
  }
  std::size_t caught = 0;
  std::size_t tried = 0;
  for (auto it = c.phi.forward().begin(); it != c.phi.forward().end(); ++it) {
    auto jt = std::next(it);
    if (jt == c.phi.forward().end()) break;
    PartialIsoC bad = c;
    bad.phi = Bijection{};
    for (auto [x, y] : c.phi.forward()) {
      std::size_t img = y;
      if (x == it->first) img = jt->second;
      if (x == jt->first) img = it->second;
      bad.phi.insert(x, img);
    }
    ++tried;
    if (!verify_partial_iso(bad, g, h).all_passed()) ++caught;
  }
  EXPECT_EQ(caught, tried);

  const RunResult ra = run_back_forth(g, h, Engine::Ca, 4);
  const auto &ca = std::get<PartialIsoCa>(ra.state);
  ASSERT_GE(ca.f.size(), 3u);
  ASSERT_TRUE(verify_partial_iso(ca, g, h).all_passed());
  {
    PartialIsoCa bad = ca;
    bad.f = Bijection{};
    auto first = ca.f.forward().begin();
    auto second = std::next(first);
    for (auto [x, y] : ca.f.forward()) {
      std::size_t img = y;
      if (x == first->first) img = second->second;
      if (x == second->first) img = first->second;
      bad.f.insert(x, img);
    }
    EXPECT_FALSE(verify_partial_iso(bad, g, h).all_passed());
  }
  {
    PartialIsoCa bad = ca;
    bad.stage = ca.stage + 2;
    const auto rep = verify_partial_iso(bad, g, h);
    EXPECT_FALSE(rep.find("h1_source_domain")->passed);
  }
  {
    // A vertex pair whose images are not adjacent in the right way.
    PartialIsoCa bad = ca;
    Vertex extra = 0;
    while (bad.f.contains_source(extra)) ++extra;
    Vertex target = 0;
    while (bad.f.contains_target(target)) ++target;
    bad.f.insert(extra, target);
    EXPECT_FALSE(verify_partial_iso(bad, g, h).all_passed());
  }
}

TEST(Budgets, WitnessScanCapSurfacesAsWitnessFailure) {
  const LargGraph g = test::ca_graph(1500, 61);
  const LargGraph h = test::ca_graph(1500, 62);
  EngineBudgets b;
  b.witness_scan = 1;
  for (Engine e : {Engine::C, Engine::Ca}) {
    const RunResult r = run_back_forth(g, h, e, 10, b);
    EXPECT_NE(r.outcome, Outcome::Completed) << to_string(e);
    EXPECT_NE(r.outcome, Outcome::InvariantViolation) << r.reason;
    EXPECT_EQ(r.verification_failures, 0u);
  }
}

}  // namespace
}  // namespace larg
