#include <dcg/rmp.hpp>

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace {

dcg::Instance two_jobs() {
  dcg::Instance inst;
  inst.area = {100.0, 100.0};
  inst.depot = {50.0, 50.0};
  inst.horizon = 20;
  inst.mission_fleet = 2;
  inst.emitter_fleet = 2;
  inst.mission_speed = 10.0;
  inst.emitter_speed = 10.0;
  inst.coverage_radius = 20.0;
  inst.jobs = {{0, {30.0, 50.0}, 2, 8, 3}, {1, {70.0, 50.0}, 4, 12, 2}};
  inst.spots = {{0, {30.0, 50.0}}, {1, {70.0, 50.0}}, {2, {50.0, 50.0}}};
  inst.finalize();
  return inst;
}

}  // namespace

TEST(Paths, CostsAndIndicators) {
  const auto inst = two_jobs();
  const auto q = dcg::make_mission_path(inst, {{0, 2, 4}, {1, 9, 10}});
  EXPECT_NEAR(q.cost, 20.0 + 40.0 + 20.0, 1e-12);
  EXPECT_TRUE(dcg::mission_path_errors(inst, q).empty());
  const auto delta = dcg::work_indicator(q);
  EXPECT_EQ(delta.size(), 5u);
  EXPECT_EQ(delta.front(), (dcg::JobTime{0, 2}));

  const auto p = dcg::make_emitting_path(inst, {{0, 2, 4}});
  EXPECT_NEAR(p.cost, 40.0, 1e-12);
  EXPECT_TRUE(dcg::emitting_path_errors(inst, p).empty());
  const auto g = dcg::coverage_indicator(inst, p);
  EXPECT_EQ(g, (std::vector<dcg::JobTime>{{0, 2}, {0, 3}, {0, 4}}));
}

TEST(Paths, InfeasibleSchedulesReported) {
  const auto inst = two_jobs();
  EXPECT_FALSE(dcg::mission_path_errors(inst, dcg::make_mission_path(inst, {{0, 1, 3}})).empty());
  EXPECT_FALSE(dcg::mission_path_errors(inst, dcg::make_mission_path(inst, {{0, 2, 4}, {1, 8, 9}})).empty());
  EXPECT_FALSE(dcg::mission_path_errors(inst, dcg::make_mission_path(inst, {{0, 2, 3}})).empty());
  EXPECT_FALSE(dcg::emitting_path_errors(inst, dcg::make_emitting_path(inst, {{0, 1, 4}})).empty());
  EXPECT_FALSE(dcg::emitting_path_errors(inst, dcg::make_emitting_path(inst, {{0, 2, 19}})).empty());
}

TEST(Rmp, OnePathPerJobAllWeightsOne) {
  const auto inst = two_jobs();
  std::vector<dcg::MissionPath> q = {dcg::make_mission_path(inst, {{0, 2, 4}}),
                                     dcg::make_mission_path(inst, {{1, 4, 5}})};
  std::vector<dcg::EmittingPath> p = {dcg::make_emitting_path(inst, {{2, 0, 19 - 0}})};
  p[0] = dcg::make_emitting_path(inst, {{2, 0, 19}});
  const auto s = dcg::build_and_solve(inst, q, p, false);
  ASSERT_EQ(s.status, dcg::lp::LpStatus::kOptimal);
  EXPECT_NEAR(s.mission_weights[0], 1.0, 1e-9);
  EXPECT_NEAR(s.mission_weights[1], 1.0, 1e-9);
  EXPECT_NEAR(s.emitter_weights[0], 1.0, 1e-9);
  EXPECT_NEAR(s.objective, 40.0 + 40.0 + 0.0, 1e-9);
  EXPECT_FALSE(s.fractional);
  EXPECT_NEAR(s.duals.rho, 0.0, 1e-12);
  EXPECT_NEAR(s.duals.beta, 0.0, 1e-12);
}

TEST(Rmp, NoEmitterFleetIsInfeasible) {
  auto inst = two_jobs();
  inst.emitter_fleet = 0;
  inst.finalize();
  std::vector<dcg::MissionPath> q = {dcg::make_mission_path(inst, {{0, 2, 4}}),
                                     dcg::make_mission_path(inst, {{1, 4, 5}})};
  std::vector<dcg::EmittingPath> p = {dcg::make_emitting_path(inst, {{2, 0, 19}})};
  const auto s = dcg::build_and_solve(inst, q, p, false);
  EXPECT_EQ(s.status, dcg::lp::LpStatus::kInfeasible);
  EXPECT_NE(std::find(s.violated.begin(), s.violated.end(), "emitter_fleet"), s.violated.end());
}

TEST(Rmp, DualsReproduceReducedCosts) {
  // Enumerate a rich pool on a tiny instance; every pooled column must price
  // at >= 0 and basic columns at 0, using the converted duals.
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto inst = fixtures::tiny(seed, 3);
    std::vector<dcg::MissionPath> q;
    for (const auto& jb : inst.jobs)
      for (int s = jb.window_start; s + jb.workload - 1 <= jb.window_end; ++s) {
        auto path = dcg::make_mission_path(inst, {{jb.id, s, s + jb.workload - 1}});
        if (dcg::mission_path_errors(inst, path).empty()) q.push_back(path);
      }
    for (int a = 0; a < inst.num_jobs(); ++a)
      for (int b = 0; b < inst.num_jobs(); ++b)
        if (a != b) {
          auto v = dcg::earliest_schedule(inst, {a, b});
          if (!v.empty()) q.push_back(dcg::make_mission_path(inst, v));
        }
    std::vector<dcg::EmittingPath> p;
    for (int j = 0; j < inst.num_spots(); ++j)
      for (int a = inst.depot_spot_travel(j); a < inst.horizon; ++a)
        for (int d = a; d + 1 + inst.depot_spot_travel(j) <= inst.horizon; ++d)
          p.push_back(dcg::make_emitting_path(inst, {{j, a, d}}));

    dcg::RestrictedMaster m(inst, dcg::MasterMode::kJoint);
    for (const auto& x : q) m.add_mission(x);
    for (const auto& x : p) m.add_emitter(x);
    const auto s = m.solve();
    ASSERT_EQ(s.status, dcg::lp::LpStatus::kOptimal) << "seed " << seed;
    for (std::size_t k = 0; k < m.missions().size(); ++k) {
      const double rc = dcg::reduced_cost_mission(inst, m.missions()[k], s.duals);
      EXPECT_GE(rc, -1e-6);
      if (s.mission_weights[k] > 1e-7) {
        EXPECT_NEAR(rc, 0.0, 1e-6);
      }
    }
    for (std::size_t k = 0; k < m.emitters().size(); ++k) {
      const double rc = dcg::reduced_cost_emitter(inst, m.emitters()[k], s.duals);
      EXPECT_GE(rc, -1e-6);
      if (s.emitter_weights[k] > 1e-7) {
        EXPECT_NEAR(rc, 0.0, 1e-6);
      }
    }
    // Linking rows hold for the returned weights.
    for (const auto& jb : inst.jobs)
      for (int t = jb.window_start; t <= jb.window_end; ++t) {
        double work = 0.0, cover = 0.0;
        for (std::size_t k = 0; k < m.missions().size(); ++k)
          for (auto [i, tt] : dcg::work_indicator(m.missions()[k]))
            if (i == jb.id && tt == t) work += s.mission_weights[k];
        for (std::size_t k = 0; k < m.emitters().size(); ++k)
          for (auto [i, tt] : dcg::coverage_indicator(inst, m.emitters()[k]))
            if (i == jb.id && tt == t) cover += s.emitter_weights[k];
        EXPECT_LE(work, cover + 1e-7);
      }
  }
}

TEST(ReducedCost, ZeroDualsGiveCost) {
  const auto inst = two_jobs();
  const auto d = dcg::DualPrices::zero(inst);
  const auto q = dcg::make_mission_path(inst, {{0, 2, 4}, {1, 9, 10}});
  const auto p = dcg::make_emitting_path(inst, {{0, 2, 4}, {1, 9, 10}});
  EXPECT_DOUBLE_EQ(dcg::reduced_cost_mission(inst, q, d), q.cost);
  EXPECT_DOUBLE_EQ(dcg::reduced_cost_emitter(inst, p, d), p.cost);
  auto d2 = d;
  d2.pi[0] = 1000.0;
  EXPECT_NEAR(dcg::reduced_cost_mission(inst, q, d2), q.cost - 1000.0, 1e-9);
}

TEST(ReducedCost, MatchesScratchSummation) {
  const auto inst = fixtures::tiny(4, 4);
  const auto d = fixtures::random_duals(inst, 17);
  const auto q = dcg::make_mission_path(inst, dcg::earliest_schedule(inst, {0}));
  double expect = q.cost + d.rho - d.pi[0];
  for (auto [i, t] : dcg::work_indicator(q)) expect += d.xi[i][t];
  EXPECT_NEAR(dcg::reduced_cost_mission(inst, q, d), expect, 1e-12);

  const auto p = dcg::make_emitting_path(inst, {{0, 3, 6}, {1, 8, 9}});
  double e2 = p.cost + d.beta;
  for (const auto& jb : inst.jobs)
    for (int t = 0; t < inst.horizon; ++t) {
      bool covered = false;
      for (const auto& st : p.stays)
        covered = covered || (inst.covers(st.spot, jb.id) && st.arrive <= t && t <= st.depart);
      if (covered) e2 -= d.xi[jb.id][t];
    }
  EXPECT_NEAR(dcg::reduced_cost_emitter(inst, p, d), e2, 1e-12);
}
