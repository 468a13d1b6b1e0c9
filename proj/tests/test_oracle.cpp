#include <dcg/engine.hpp>
#include <dcg/oracle.hpp>

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace {

dcg::Instance one_job_one_spot() {
  dcg::Instance inst;
  inst.area = {100.0, 100.0};
  inst.depot = {0.0, 0.0};
  inst.horizon = 18;
  inst.mission_fleet = 1;
  inst.emitter_fleet = 1;
  inst.mission_speed = 10.0;
  inst.emitter_speed = 10.0;
  inst.coverage_radius = 20.0;
  inst.jobs = {{0, {30.0, 40.0}, 6, 10, 3}};
  inst.spots = {{0, {30.0, 30.0}}};
  inst.finalize();
  return inst;
}

/// Job with workload 4 in a 5-period window, away from its only spot.
dcg::Instance fractional_y() {
  auto inst = one_job_one_spot();
  inst.jobs = {{0, {30.0, 40.0}, 6, 10, 4}};
  inst.finalize();
  return inst;
}

/// Two jobs mirrored about the vertical line through the depot.
dcg::Instance mirror(bool flipped) {
  dcg::Instance inst;
  inst.area = {100.0, 100.0};
  inst.depot = {50.0, 0.0};
  inst.horizon = 18;
  inst.mission_fleet = 2;
  inst.emitter_fleet = 2;
  inst.mission_speed = 12.0;
  inst.emitter_speed = 12.0;
  inst.coverage_radius = 25.0;
  const double s = flipped ? -1.0 : 1.0;
  inst.jobs = {{0, {50.0 - s * 30.0, 40.0}, 5, 11, 2}, {1, {50.0 + s * 30.0, 40.0}, 5, 11, 2}};
  inst.spots = {{0, {50.0 - s * 30.0, 55.0}}, {1, {50.0 + s * 30.0, 55.0}}, {2, {50.0, 50.0}}};
  inst.finalize();
  return inst;
}

}  // namespace

TEST(Oracle, SingleJobClosedForm) {
  const auto inst = one_job_one_spot();
  const auto r = dcg::oracle::exhaustive_joint(inst);
  ASSERT_TRUE(r.feasible);
  EXPECT_NEAR(r.optimum, 2.0 * 50.0 + 2.0 * std::hypot(30.0, 30.0), 1e-9);
  EXPECT_TRUE(dcg::validate(inst, r.missions, r.emitters).ok());
}

TEST(Oracle, MirrorInstanceSymmetric) {
  const auto a = dcg::oracle::exhaustive_joint(mirror(false));
  const auto b = dcg::oracle::exhaustive_joint(mirror(true));
  ASSERT_TRUE(a.feasible && b.feasible);
  EXPECT_NEAR(a.optimum, b.optimum, 1e-9);
  EXPECT_EQ(a.missions.size(), b.missions.size());
  EXPECT_EQ(a.emitters.size(), b.emitters.size());
}

TEST(Oracle, RefusesLargeInstances) {
  auto inst = fixtures::tiny(1, 3, 15);
  inst.horizon = 21;
  EXPECT_THROW(dcg::oracle::exhaustive_joint(inst), dcg::oracle::OracleRefused);
  EXPECT_THROW(dcg::oracle::explicit_lp_value(fixtures::tiny(1, 6, 15)), dcg::oracle::OracleRefused);
}

TEST(Oracle, EnumerationMatchesIntegerMaster) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto inst = fixtures::tiny(seed, 3);
    const auto r = dcg::oracle::exhaustive_joint(inst);
    ASSERT_TRUE(r.feasible) << "seed " << seed;
    EXPECT_NEAR(r.optimum, dcg::oracle::enumerated_integer_optimum(inst), 1e-6) << "seed " << seed;
    const auto rep = dcg::validate(inst, r.missions, r.emitters);
    EXPECT_TRUE(rep.ok()) << rep.summary();
    double cost = 0.0;
    for (const auto& q : r.missions) cost += q.cost;
    for (const auto& p : r.emitters) cost += p.cost;
    EXPECT_NEAR(cost, r.optimum, 1e-9);
  }
}

TEST(Oracle, EmitterEnumerationCoversPricingOptimum) {
  // Any single emitter path found by exact pricing has a counterpart in the
  // enumeration with the same coverage and no higher cost.
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto inst = fixtures::tiny(seed, 3);
    const auto duals = fixtures::random_duals(inst, seed + 100);
    const auto priced = dcg::price_emitting(inst, duals, dcg::unrestricted_windows(inst));
    double enum_best = 0.0;
    for (const auto& p : dcg::oracle::enumerate_emitters(inst))
      enum_best = std::min(enum_best, dcg::reduced_cost_emitter(inst, p, duals));
    EXPECT_NEAR(enum_best, std::min(0.0, priced.best_reduced_cost), 1e-9) << "seed " << seed;
  }
}

TEST(Oracle, RelaxationChain) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto inst = fixtures::tiny(seed, 2);
    const auto r = dcg::oracle::exhaustive_joint(inst);
    const double explicit_lp = dcg::oracle::explicit_lp_value(inst);
    EXPECT_LE(explicit_lp, r.sp_lp_value + 1e-6) << "seed " << seed;
    EXPECT_LE(r.sp_lp_value, r.optimum + 1e-6) << "seed " << seed;
  }
}

TEST(Oracle, FractionalStartIndicatorsWeakenExplicitLp) {
  const auto inst = fractional_y();
  const auto r = dcg::oracle::exhaustive_joint(inst);
  const double explicit_lp = dcg::oracle::explicit_lp_value(inst);
  const double emitter_round_trip = 2.0 * std::hypot(30.0, 30.0);
  EXPECT_NEAR(r.sp_lp_value, 100.0 + emitter_round_trip, 1e-6);
  EXPECT_NEAR(explicit_lp, 100.0 + 0.8 * emitter_round_trip, 1e-6);
  EXPECT_LT(explicit_lp, r.sp_lp_value - 1e-6);
}

TEST(Oracle, EngineMatchesOracleOnTinySeeds) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto inst = fixtures::tiny(seed, 3);
    const auto o = dcg::oracle::exhaustive_joint(inst);
    const auto r = dcg::run(inst);
    ASSERT_TRUE(r.feasible);
    EXPECT_NEAR(r.objective, o.optimum, 1e-6) << "seed " << seed;
  }
}
