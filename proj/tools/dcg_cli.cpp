// Command-line entry point: generate instances, solve them, run experiment grids.

#include <dcg/dcg.hpp>

#include "CLI11.hpp"

#include <filesystem>
#include <iostream>

namespace {

namespace fs = std::filesystem;

/// Process exit codes.
enum Exit : int {
  kOk = 0,
  kUsage = 1,       ///< bad flags or generator configuration
  kInput = 2,       ///< unreadable or malformed input file
  kInfeasible = 3,  ///< no validated plan
  kInternal = 4,
};

struct GenerateArgs {
  dcg::GeneratorConfig gen;
  double width = 500.0;
  double height = 500.0;
  std::string out;
};

struct SolveArgs {
  std::string instance;
  std::string solver = "dcg";
  std::string warm_start = "full";
  std::vector<std::string> prune;
  bool fleet_min = false;
  std::uint64_t seed = 1;
  std::string out = ".";
  double integer_time_limit = 60.0;
  int max_iterations = 1000;
  bool no_stem_blender = false;
};

struct ExperimentArgs {
  std::vector<int> jobs{20};
  std::vector<int> clusters{5};
  std::vector<double> cluster_radius{25.0};
  std::vector<double> coverage_radius{50.0};
  std::vector<std::uint64_t> seeds;
  int num_seeds = 0;
  std::vector<std::string> solvers;
  int workers = 0;
};

void add_generator_flags(CLI::App& cmd, dcg::GeneratorConfig& g, double& width, double& height) {
  cmd.add_option("--jobs", g.num_jobs, "number of jobs")->capture_default_str();
  cmd.add_option("--clusters", g.num_clusters, "number of job clusters")->capture_default_str();
  cmd.add_option("--cluster-radius", g.cluster_radius, "cluster radius")->capture_default_str();
  cmd.add_option("--coverage-radius", g.coverage_radius, "emitter coverage radius")->capture_default_str();
  cmd.add_option("--mesh", g.mesh_spacing, "coverage spot grid spacing")->capture_default_str();
  cmd.add_option("--horizon", g.horizon, "number of time steps")->capture_default_str();
  cmd.add_option("--width", width, "area width")->capture_default_str();
  cmd.add_option("--height", height, "area height")->capture_default_str();
  cmd.add_option("--mission-speed", g.mission_speed, "mission vehicle speed")->capture_default_str();
  cmd.add_option("--emitter-speed", g.emitter_speed, "emitting vehicle speed")->capture_default_str();
  cmd.add_option("--mission-fleet", g.mission_fleet, "mission fleet size, 0 = one per job")->capture_default_str();
  cmd.add_option("--emitter-fleet", g.emitter_fleet, "emitter fleet size, 0 = one per job")->capture_default_str();
}

dcg::DcgConfig engine_config(const SolveArgs& a) {
  dcg::DcgConfig cfg;
  cfg.seed = a.seed;
  cfg.integer_time_limit = a.integer_time_limit;
  cfg.max_iterations = a.max_iterations;
  cfg.stem_and_blender = !a.no_stem_blender;
  if (a.warm_start == "none") cfg.warm_start = dcg::WarmStart::kNone;
  if (a.warm_start == "partial") cfg.warm_start = dcg::WarmStart::kPartial;
  if (!a.prune.empty()) {
    cfg.prune = {false, false, false};
    for (const auto& p : a.prune) {
      if (p == "input") cfg.prune.input = true;
      if (p == "primal") cfg.prune.primal = true;
      if (p == "dual") cfg.prune.dual = true;
    }
  }
  return cfg;
}

int cmd_generate(GenerateArgs a) {
  a.gen.area = {a.width, a.height};
  const auto g = dcg::generate_detailed(a.gen);
  const std::string text = dcg::dump_instance(g.instance);
  if (a.out.empty() || a.out == "-") {
    std::cout << text;
  } else {
    dcg::write_text(a.out, text);
  }
  std::cerr << "generated " << g.instance.num_jobs() << " jobs in " << g.centroids.size() << " clusters, "
            << g.instance.num_spots() << " coverage spots, horizon " << g.instance.horizon << " (seed "
            << a.gen.seed << ")\n";
  return kOk;
}

int cmd_solve(const SolveArgs& a) {
  dcg::Instance inst;
  try {
    inst = dcg::load(a.instance);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  dcg::SolveOptions opt{*dcg::parse_solver(a.solver), engine_config(a), a.fleet_min};
  std::vector<dcg::IterationLog> log;
  const auto run = dcg::solve(inst, opt, fs::path(a.instance).filename().string(), &log);

  fs::create_directories(a.out);
  dcg::write_text((fs::path(a.out) / "plan.json").string(), dcg::dump_plan(run));
  dcg::write_text((fs::path(a.out) / "metrics.csv").string(),
                  dcg::metrics_header() + "\n" + dcg::metrics_row(run) + "\n");
  std::string lines;
  for (const auto& e : log) lines += dcg::iteration_log_line(e) + "\n";
  dcg::write_text((fs::path(a.out) / "run_log.jsonl").string(), lines);

  const auto& m = run.plan.metrics;
  std::cout << run.plan.strategy << ": objective " << dcg::detail::format_number(m.objective) << ", "
            << m.mission_vehicles << " mission / " << m.emitter_vehicles << " emitting vehicles, "
            << m.coverage_locations << " coverage locations";
  if (run.engine) {
    std::cout << ", LP bound " << dcg::detail::format_number(run.engine->lp_bound)
              << (run.engine->certified ? " (certified)" : " (not certified)");
    if (run.engine->min_emitters > 0) std::cout << ", minimum emitter fleet " << run.engine->min_emitters;
  }
  std::cout << "\n";
  if (!run.plan.feasible) {
    std::cerr << "no feasible plan: " << run.plan.message << "\n";
    return kInfeasible;
  }
  return kOk;
}

int cmd_validate(const std::string& instance_path, const std::string& plan_path) {
  dcg::Instance inst;
  dcg::PlanDocument doc;
  try {
    inst = dcg::load(instance_path);
    doc = dcg::parse_plan(dcg::read_text(plan_path));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  const auto rep = dcg::validate(inst, doc.missions, doc.emitters);
  if (rep.ok()) {
    std::cout << "plan is feasible\n";
    return kOk;
  }
  std::cout << rep.summary();
  return kInfeasible;
}

int cmd_experiment(const ExperimentArgs& a, const SolveArgs& s, const dcg::GeneratorConfig& base,
                   const std::string& out) {
  dcg::ExperimentSpec spec;
  spec.num_jobs = a.jobs;
  spec.num_clusters = a.clusters;
  spec.cluster_radius = a.cluster_radius;
  spec.coverage_radius = a.coverage_radius;
  spec.seeds = a.seeds;
  for (int k = 1; k <= a.num_seeds; ++k) spec.seeds.push_back(static_cast<std::uint64_t>(k));
  if (spec.seeds.empty()) spec.seeds = {1};
  spec.solvers.clear();
  for (const auto& name : a.solvers) spec.solvers.push_back(*dcg::parse_solver(name));
  if (spec.solvers.empty()) spec.solvers = {dcg::Solver::kDcg};
  spec.base = base;
  spec.config = engine_config(s);
  spec.fleet_min = s.fleet_min;
  spec.workers = a.workers;

  const auto res = dcg::run_experiment(spec);
  fs::create_directories(out);
  std::string raw = dcg::metrics_header() + "\n";
  for (const auto& r : res.runs) raw += dcg::metrics_row(r) + "\n";
  dcg::write_text((fs::path(out) / "raw.csv").string(), raw);
  std::string agg = dcg::aggregate_header() + "\n";
  for (const auto& a2 : res.aggregates) agg += dcg::aggregate_row(a2) + "\n";
  dcg::write_text((fs::path(out) / "aggregate.csv").string(), agg);
  std::cout << agg;
  int failed = 0;
  for (const auto& e : res.errors) failed += e.empty() ? 0 : 1;
  if (failed > 0) std::cerr << failed << " runs failed; see the message column of raw.csv\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coordinated routing of mission vehicles and mobile network emitters"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "write a random clustered instance");
  add_generator_flags(*generate, gen.gen, gen.width, gen.height);
  generate->add_option("--seed", gen.gen.seed, "random seed")->capture_default_str();
  generate->add_option("--out", gen.out, "instance file (default: standard output)");

  const std::vector<std::string> solver_names{"dcg", "greedy", "emitting-follow", "mission-emitting", "fixed"};
  auto add_solver_flags = [&](CLI::App& cmd, SolveArgs& s) {
    cmd.add_option("--warm-start", s.warm_start, "warm start mode")
        ->check(CLI::IsMember({"none", "partial", "full"}))
        ->capture_default_str();
    cmd.add_option("--prune", s.prune, "enabled emitter pruning (repeatable; default: all)")
        ->check(CLI::IsMember({"input", "primal", "dual"}))
        ->take_all()
        ->allow_extra_args(false);
    cmd.add_flag("--fleet-min", s.fleet_min, "minimise the emitter fleet size");
    cmd.add_option("--integer-time-limit", s.integer_time_limit, "seconds for the final integer solve")
        ->capture_default_str();
    cmd.add_option("--max-iterations", s.max_iterations, "column generation iteration limit")->capture_default_str();
    cmd.add_flag("--no-stem-blender", s.no_stem_blender, "skip the stem-and-blender column augmentation");
  };

  SolveArgs sol;
  auto* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("--instance", sol.instance, "instance file")->required()->check(CLI::ExistingFile);
  solve->add_option("--solver", sol.solver, "solver")->check(CLI::IsMember(solver_names))->capture_default_str();
  solve->add_option("--seed", sol.seed, "seed recorded with the run")->capture_default_str();
  solve->add_option("--out", sol.out, "output directory")->capture_default_str();
  add_solver_flags(*solve, sol);

  std::string check_instance, check_plan;
  auto* check = app.add_subcommand("validate", "check a plan file against an instance");
  check->add_option("--instance", check_instance, "instance file")->required()->check(CLI::ExistingFile);
  check->add_option("--plan", check_plan, "plan file")->required()->check(CLI::ExistingFile);

  ExperimentArgs exp;
  SolveArgs exp_solve;
  dcg::GeneratorConfig exp_base;
  double exp_width = 500.0, exp_height = 500.0;
  std::string exp_out = "experiment";
  auto* experiment = app.add_subcommand("experiment", "run a generator grid and aggregate per cell");
  experiment->add_option("--jobs", exp.jobs, "job counts")->capture_default_str();
  experiment->add_option("--clusters", exp.clusters, "cluster counts")->capture_default_str();
  experiment->add_option("--cluster-radius", exp.cluster_radius, "cluster radii")->capture_default_str();
  experiment->add_option("--coverage-radius", exp.coverage_radius, "coverage radii")->capture_default_str();
  experiment->add_option("--seed", exp.seeds, "explicit seeds (repeatable)");
  experiment->add_option("--num-seeds", exp.num_seeds, "also run seeds 1..N");
  experiment->add_option("--solver", exp.solvers, "solvers (repeatable; default: dcg)")
      ->check(CLI::IsMember(solver_names));
  experiment->add_option("--horizon", exp_base.horizon, "number of time steps")->capture_default_str();
  experiment->add_option("--mesh", exp_base.mesh_spacing, "coverage spot grid spacing")->capture_default_str();
  experiment->add_option("--width", exp_width, "area width")->capture_default_str();
  experiment->add_option("--height", exp_height, "area height")->capture_default_str();
  experiment->add_option("--workers", exp.workers, "parallel runs, 0 = hardware threads")->capture_default_str();
  experiment->add_option("--out", exp_out, "output directory")->capture_default_str();
  add_solver_flags(*experiment, exp_solve);

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return cmd_generate(gen);
    if (solve->parsed()) return cmd_solve(sol);
    if (check->parsed()) return cmd_validate(check_instance, check_plan);
    if (experiment->parsed()) {
      exp_base.area = {exp_width, exp_height};
      return cmd_experiment(exp, exp_solve, exp_base, exp_out);
    }
  } catch (const dcg::GenerationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
