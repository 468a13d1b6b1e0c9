#include <dcg/experiment.hpp>

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace {

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n' ? 1 : 0;
  return n;
}

int count_fields(const std::string& line) {
  int n = 1;
  for (char c : line) n += c == ',' ? 1 : 0;
  return n;
}

}  // namespace

TEST(PlanDocument, RoundTripRevalidates) {
  const auto inst = fixtures::tiny(2, 4);
  const auto run = dcg::solve(inst, {});
  ASSERT_TRUE(run.plan.feasible);
  const auto doc = dcg::parse_plan(dcg::dump_plan(run));
  EXPECT_EQ(doc.strategy, "dcg");
  EXPECT_EQ(doc.missions, run.plan.missions);
  EXPECT_EQ(doc.emitters, run.plan.emitters);
  EXPECT_TRUE(dcg::validate(inst, doc.missions, doc.emitters).ok());
}

TEST(PlanDocument, MalformedInputIsReported) {
  EXPECT_THROW(dcg::parse_plan("{"), dcg::ParseError);
  EXPECT_THROW(dcg::parse_plan(R"({"strategy":"dcg","missions":[]})"), dcg::ParseError);
}

TEST(PlanDocument, InfiniteRatioWrittenAsNull) {
  dcg::RunRecord run;
  run.plan.strategy = "fixed";
  run.plan.metrics.distance_ratio = std::numeric_limits<double>::infinity();
  const auto j = dcg::plan_to_json(run);
  EXPECT_TRUE(j["metrics"]["distance_ratio"].is_null());
}

TEST(MetricsTable, RowMatchesHeader) {
  const auto inst = fixtures::tiny(3, 3);
  for (auto solver : {dcg::Solver::kDcg, dcg::Solver::kGreedy, dcg::Solver::kFixed}) {
    const auto run = dcg::solve(inst, {solver, {}, false}, "tiny");
    EXPECT_EQ(count_fields(dcg::metrics_row(run)), count_fields(dcg::metrics_header())) << dcg::to_string(solver);
  }
}

TEST(MetricsTable, FieldsWithCommasAreQuoted) {
  dcg::RunRecord run;
  run.instance = "a,b";
  run.plan.strategy = "greedy";
  EXPECT_EQ(dcg::metrics_row(run).rfind("\"a,b\",", 0), 0u);
}

TEST(IterationLog, OneJsonObjectPerLine) {
  std::vector<dcg::IterationLog> log;
  dcg::solve(fixtures::tiny(4, 4), {}, "tiny", &log);
  ASSERT_FALSE(log.empty());
  for (const auto& e : log) {
    const auto line = dcg::iteration_log_line(e);
    EXPECT_EQ(line.find('\n'), std::string::npos);
    EXPECT_TRUE(nlohmann::json::parse(line).is_object());
  }
  EXPECT_EQ(log.back().phase, "certify");
}

TEST(Experiment, GridCounts) {
  dcg::ExperimentSpec spec;
  spec.num_jobs = {3, 4};
  spec.num_clusters = {1, 2};
  spec.seeds = {1, 2, 3};
  spec.base.area = {200.0, 200.0};
  spec.base.horizon = 30;
  spec.workers = 1;
  const auto res = dcg::run_experiment(spec);
  EXPECT_EQ(res.aggregates.size(), 4u);
  EXPECT_EQ(res.runs.size(), 12u);
  for (const auto& a : res.aggregates) EXPECT_EQ(a.runs, 3);
}

TEST(Experiment, RepeatableAcrossWorkerCounts) {
  dcg::ExperimentSpec spec;
  spec.num_jobs = {4};
  spec.num_clusters = {2};
  spec.seeds = {5, 6};
  spec.solvers = {dcg::Solver::kDcg, dcg::Solver::kGreedy, dcg::Solver::kMissionEmitting};
  spec.base.area = {200.0, 200.0};
  spec.base.horizon = 30;
  spec.workers = 1;
  const auto a = dcg::run_experiment(spec);
  spec.workers = 3;
  const auto b = dcg::run_experiment(spec);
  ASSERT_EQ(a.aggregates.size(), b.aggregates.size());
  for (std::size_t k = 0; k < a.aggregates.size(); ++k)
    EXPECT_EQ(dcg::aggregate_row(a.aggregates[k]), dcg::aggregate_row(b.aggregates[k]));
  EXPECT_EQ(count_lines(dcg::aggregate_header() + "\n"), 1);
}

TEST(Experiment, FailuresAreRecordedPerRun) {
  dcg::ExperimentSpec spec;
  spec.num_jobs = {2};
  spec.num_clusters = {3};  // more clusters than jobs
  spec.seeds = {1};
  spec.workers = 1;
  const auto res = dcg::run_experiment(spec);
  ASSERT_EQ(res.runs.size(), 1u);
  EXPECT_FALSE(res.errors[0].empty());
  EXPECT_EQ(res.aggregates[0].failed, 1);
}

TEST(InstanceFormat, DocumentedSampleIsReproducedExactly) {
  dcg::GeneratorConfig g;
  g.num_jobs = 2;
  g.num_clusters = 1;
  g.mesh_spacing = 250.0;
  g.coverage_radius = 180.0;
  g.horizon = 30;
  g.seed = 7;
  const std::string expected = dcg::read_text(std::string(DCG_SOURCE_DIR) + "/example/sample_instance.json");
  EXPECT_EQ(dcg::dump_instance(dcg::generate(g)), expected);
  EXPECT_EQ(dcg::dump_instance(dcg::parse_instance(expected)), expected);
}

TEST(Engine, ColumnsGeneratedCountsOnlyPricedColumns) {
  const auto inst = fixtures::tiny(3, 3, 15);
  const auto r = dcg::run(inst);
  EXPECT_GE(r.columns_generated, 0);
}
