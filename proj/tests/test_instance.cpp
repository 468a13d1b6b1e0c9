#include <dcg/instance.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

namespace {

dcg::Instance line_instance(double radius) {
  dcg::Instance inst;
  inst.area = {200.0, 200.0};
  inst.depot = {0.0, 0.0};
  inst.horizon = 30;
  inst.mission_fleet = 1;
  inst.emitter_fleet = 1;
  inst.mission_speed = 10.0;
  inst.emitter_speed = 10.0;
  inst.coverage_radius = radius;
  inst.jobs = {{0, {0.0, 0.0}, 2, 6, 2}};
  inst.spots = {{0, {0.0, 0.0}}, {1, {50.0, 0.0}}, {2, {120.0, 0.0}}};
  inst.finalize();
  return inst;
}

}  // namespace

TEST(Coverage, BoundaryIsInclusive) {
  const auto inst = line_instance(50.0);
  EXPECT_EQ(dcg::coverage_set(inst, 0), (std::vector<dcg::SpotId>{0, 1}));
  EXPECT_EQ(inst.coverage(0), (std::vector<dcg::SpotId>{0, 1}));
}

TEST(Coverage, ZeroRadiusColocated) {
  const auto inst = line_instance(0.0);
  EXPECT_EQ(inst.coverage(0), (std::vector<dcg::SpotId>{0}));
}

TEST(Coverage, UnknownJobThrows) {
  const auto inst = line_instance(50.0);
  EXPECT_THROW(dcg::coverage_set(inst, 7), std::out_of_range);
}

TEST(Coverage, MatchesPairwiseScan) {
  dcg::GeneratorConfig cfg;
  cfg.num_jobs = 10;
  cfg.num_clusters = 3;
  cfg.seed = 11;
  const auto inst = dcg::generate(cfg);
  for (const auto& jb : inst.jobs) {
    std::vector<dcg::SpotId> scan;
    for (const auto& s : inst.spots) {
      const double dx = jb.location.x - s.location.x, dy = jb.location.y - s.location.y;
      if (dx * dx + dy * dy <= cfg.coverage_radius * cfg.coverage_radius + 1e-6) scan.push_back(s.id);
    }
    EXPECT_EQ(inst.coverage(jb.id), scan) << "job " << jb.id;
  }
}

TEST(Coverage, TranslationInvariant) {
  auto inst = line_instance(50.0);
  auto moved = inst;
  for (auto& j : moved.jobs) j.location = {j.location.x + 33.5, j.location.y - 7.25};
  for (auto& s : moved.spots) s.location = {s.location.x + 33.5, s.location.y - 7.25};
  moved.depot = {moved.depot.x + 33.5, moved.depot.y - 7.25};
  moved.finalize();
  EXPECT_EQ(inst.coverage(0), moved.coverage(0));
}

TEST(TravelTime, CeilingRule) {
  EXPECT_EQ(dcg::travel_time({0, 0}, {40, 0}, 19.0), 3);
  EXPECT_EQ(dcg::travel_time({0, 0}, {37.33, 0}, 19.0), 2);
  EXPECT_EQ(dcg::travel_time({5, 5}, {5, 5}, 19.0), 0);
  EXPECT_EQ(dcg::travel_time({0, 0}, {50, 0}, 50.0), 1);
  EXPECT_THROW(dcg::travel_time({0, 0}, {1, 0}, 0.0), std::domain_error);
  EXPECT_THROW(dcg::travel_time({0, 0}, {1, 0}, -2.0), std::domain_error);
}

TEST(TravelTime, TriangleOnExactMultiples) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> k(0, 6);
  for (int r = 0; r < 200; ++r) {
    const double speed = 10.0;
    const dcg::Point a{0, 0}, b{speed * k(rng), 0}, c{b.x + speed * k(rng), 0};
    EXPECT_LE(dcg::travel_time(a, c, speed), dcg::travel_time(a, b, speed) + dcg::travel_time(b, c, speed));
  }
}

TEST(Generator, OneJobPerCluster) {
  dcg::GeneratorConfig cfg;
  cfg.num_jobs = 5;
  cfg.num_clusters = 5;
  const auto g = dcg::generate_detailed(cfg);
  std::vector<int> count(5, 0);
  for (int c : g.cluster_of_job) ++count[static_cast<std::size_t>(c)];
  for (int c : count) EXPECT_EQ(c, 1);
}

TEST(Generator, Deterministic) {
  dcg::GeneratorConfig cfg;
  cfg.seed = 42;
  EXPECT_EQ(dcg::generate(cfg), dcg::generate(cfg));
  EXPECT_EQ(dcg::dump_instance(dcg::generate(cfg)), dcg::dump_instance(dcg::generate(cfg)));
  auto other = cfg;
  other.seed = 43;
  EXPECT_FALSE(dcg::generate(cfg) == dcg::generate(other));
}

TEST(Generator, ClusterContainment) {
  dcg::GeneratorConfig cfg;
  cfg.num_jobs = 50;
  cfg.num_clusters = 5;
  cfg.cluster_radius = 25.0;
  cfg.coverage_radius = 50.0;
  cfg.seed = 3;
  const auto g = dcg::generate_detailed(cfg);
  for (const auto& c : g.centroids) EXPECT_TRUE(cfg.area.contains(c));
  for (const auto& jb : g.instance.jobs) {
    double best = 1e18;
    for (const auto& c : g.centroids) best = std::min(best, dcg::euclidean(c, jb.location));
    EXPECT_LE(best, cfg.cluster_radius + 1e-9);
    EXPECT_FALSE(g.instance.coverage(jb.id).empty());
    EXPECT_LE(jb.window_start + jb.workload - 1, jb.window_end);
  }
  for (const auto& s : g.instance.spots) EXPECT_TRUE(cfg.area.contains(s.location));
}

TEST(Generator, RejectsImpossibleConfig) {
  dcg::GeneratorConfig cfg;
  cfg.num_jobs = 3;
  cfg.num_clusters = 4;
  EXPECT_THROW(dcg::generate(cfg), dcg::GenerationError);
  cfg.num_clusters = 1;
  cfg.cluster_radius = 400.0;
  EXPECT_THROW(dcg::generate(cfg), dcg::GenerationError);
}

TEST(InstanceFile, RoundTrip) {
  dcg::GeneratorConfig cfg;
  cfg.seed = 9;
  const auto inst = dcg::generate(cfg);
  const auto path = std::filesystem::temp_directory_path() / "dcg_roundtrip.json";
  dcg::save(inst, path.string());
  EXPECT_EQ(dcg::load(path.string()), inst);
  std::filesystem::remove(path);
}

TEST(InstanceFile, MissingFieldNamed) {
  auto text = dcg::dump_instance(line_instance(50.0));
  const auto pos = text.find("\"horizon\"");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 9, "\"horizont\"");
  try {
    dcg::parse_instance(text);
    FAIL() << "expected parse error";
  } catch (const dcg::ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("horizon"), std::string::npos) << e.what();
  }
}

TEST(InstanceFile, HorizonShorterThanWindowRejected) {
  auto inst = line_instance(50.0);
  inst.horizon = 5;
  EXPECT_THROW(inst.finalize(), dcg::InstanceError);
  EXPECT_THROW(dcg::parse_instance(dcg::dump_instance(inst)), dcg::InstanceError);
}

TEST(InstanceFile, UncoveredJobRejected) {
  auto inst = line_instance(10.0);
  inst.jobs[0].location = {100.0, 100.0};
  inst.horizon = 60;
  EXPECT_THROW(inst.finalize(), dcg::InstanceError);
}
