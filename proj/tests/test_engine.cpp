#include <dcg/engine.hpp>

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace {

dcg::Instance single_job() {
  dcg::Instance inst;
  inst.area = {100.0, 100.0};
  inst.depot = {50.0, 50.0};
  inst.horizon = 20;
  inst.mission_fleet = 1;
  inst.emitter_fleet = 1;
  inst.mission_speed = 10.0;
  inst.emitter_speed = 10.0;
  inst.coverage_radius = 15.0;
  inst.jobs = {{0, {20.0, 50.0}, 4, 12, 3}};
  inst.spots = {{0, {10.0, 50.0}}, {1, {30.0, 60.0}}, {2, {90.0, 90.0}}};
  inst.finalize();
  return inst;
}

double plan_cost(const std::vector<dcg::MissionPath>& q, const std::vector<dcg::EmittingPath>& p) {
  double c = 0.0;
  for (const auto& x : q) c += x.cost;
  for (const auto& x : p) c += x.cost;
  return c;
}

}  // namespace

TEST(Engine, SingleJobIsRoundTripSum) {
  const auto inst = single_job();
  const auto r = dcg::run(inst);
  ASSERT_TRUE(r.feasible);
  EXPECT_TRUE(r.certified);
  const double nearest_spot = std::min(inst.depot_spot_distance(0), inst.depot_spot_distance(1));
  EXPECT_NEAR(r.objective, 2.0 * inst.depot_job_distance(0) + 2.0 * nearest_spot, 1e-9);
  EXPECT_TRUE(dcg::validate(inst, r.missions, r.emitters).ok());
}

TEST(Engine, NeverWorseThanGreedyAndCertified) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto inst = fixtures::tiny(seed, 4);
    const auto g = dcg::greedy_plan(inst);
    const auto r = dcg::run(inst);
    ASSERT_TRUE(r.feasible) << "seed " << seed;
    EXPECT_TRUE(r.certified) << "seed " << seed;
    EXPECT_GE(r.certificate_mission_rc, -1e-6);
    EXPECT_GE(r.certificate_emitter_rc, -1e-6);
    EXPECT_LE(r.lp_bound, r.objective + 1e-6);
    EXPECT_LE(r.objective, plan_cost(g.missions, g.emitters) + 1e-6) << "seed " << seed;
    const auto rep = dcg::validate(inst, r.missions, r.emitters);
    EXPECT_TRUE(rep.ok()) << rep.summary();
  }
}

TEST(Engine, WarmStartModesAgreeOnLpBound) {
  const auto inst = fixtures::tiny(11, 4);
  double bound = 0.0;
  for (auto ws : {dcg::WarmStart::kNone, dcg::WarmStart::kPartial, dcg::WarmStart::kFull}) {
    dcg::DcgConfig cfg;
    cfg.warm_start = ws;
    const auto r = dcg::run(inst, cfg);
    ASSERT_TRUE(r.certified) << dcg::to_string(ws);
    if (ws == dcg::WarmStart::kNone) bound = r.lp_bound;
    EXPECT_NEAR(r.lp_bound, bound, 1e-6) << dcg::to_string(ws);
  }
}

TEST(Engine, Deterministic) {
  const auto inst = fixtures::tiny(5, 5, 18);
  const auto a = dcg::run(inst);
  const auto b = dcg::run(inst);
  EXPECT_EQ(a.objective, b.objective);
  EXPECT_EQ(a.iterations, b.iterations);
  ASSERT_EQ(a.missions.size(), b.missions.size());
  for (std::size_t k = 0; k < a.missions.size(); ++k)
    EXPECT_EQ(dcg::location_sequence(a.missions[k]), dcg::location_sequence(b.missions[k]));
}

TEST(StemBlender, WorkedExampleGroups) {
  const std::vector<std::vector<int>> paths = {
      {1, 63, 64, 65, 4, 5, 6, 15},        {1, 63, 64, 65, 10, 11, 12, 13, 14, 15}, {1, 63, 3, 66, 67, 68, 69, 70, 71},
      {16, 73, 2, 3, 66, 67, 68},          {16, 73, 2, 3, 66, 67, 68, 69, 70, 71},  {16, 73, 2, 4, 5, 6},
      {21, 7, 8, 9, 65, 4, 5, 6, 69},      {21, 7, 8, 9, 65, 10, 11, 12, 13, 14, 70, 71},
      {21, 7, 8, 64, 9, 10, 11, 12, 13, 14, 15}};
  const auto groups = dcg::stems_and_blenders(paths);
  ASSERT_EQ(groups.size(), 3u);
  EXPECT_EQ(groups[0].stem, (std::vector<int>{1, 63}));
  EXPECT_EQ(groups[1].stem, (std::vector<int>{16, 73, 2}));
  EXPECT_EQ(groups[2].stem, (std::vector<int>{21, 7, 8}));
  EXPECT_EQ(groups[2].blender, (std::vector<int>{4, 5, 6, 9, 10, 11, 12, 13, 14, 15, 64, 65, 69, 70, 71}));
}

TEST(StemBlender, SinglePathGroupHasEmptyBlender) {
  const auto groups = dcg::stems_and_blenders({{3, 1, 2}});
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_EQ(groups[0].stem, (std::vector<int>{3, 1, 2}));
  EXPECT_TRUE(groups[0].blender.empty());
}

TEST(FleetMin, SingleJobNeedsOneEmitter) {
  auto inst = single_job();
  inst.emitter_fleet = 3;
  inst.finalize();
  const auto f = dcg::fleet_min(inst);
  EXPECT_EQ(f.min_emitters, 1);
}
