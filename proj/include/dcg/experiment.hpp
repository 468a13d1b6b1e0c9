#pragma once

// Solver dispatch and generator-grid experiments with per-cell aggregation.

#include "io.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace dcg {

enum class Solver { kDcg, kGreedy, kEmittingFollow, kMissionEmitting, kFixed };

inline const char* to_string(Solver s) {
  switch (s) {
    case Solver::kDcg: return "dcg";
    case Solver::kGreedy: return "greedy";
    case Solver::kEmittingFollow: return "emitting-follow";
    case Solver::kMissionEmitting: return "mission-emitting";
    case Solver::kFixed: return "fixed";
  }
  return "?";
}

inline std::optional<Solver> parse_solver(const std::string& name) {
  for (Solver s : {Solver::kDcg, Solver::kGreedy, Solver::kEmittingFollow, Solver::kMissionEmitting, Solver::kFixed})
    if (name == to_string(s)) return s;
  return std::nullopt;
}

struct SolveOptions {
  Solver solver = Solver::kDcg;
  DcgConfig config;
  /// Engine: smallest emitter fleet by binary search. Stationary emitters
  /// always use the fewest spots; the other baselines ignore the flag.
  bool fleet_min = false;
};

/// Runs one solver; the returned plan has been checked by the validator
/// (`plan.feasible` is false otherwise). `log` receives engine iterations.
inline RunRecord solve(const Instance& inst, const SolveOptions& opt, std::string label = {},
                       std::vector<IterationLog>* log = nullptr) {
  RunRecord rec;
  rec.instance = std::move(label);
  rec.seed = opt.config.seed;
  const detail::Stopwatch sw;
  switch (opt.solver) {
    case Solver::kDcg: {
      if (opt.fleet_min) {
        FleetMinResult f = fleet_min(inst, opt.config);
        Instance sized = inst;
        if (f.min_emitters > 0) {
          sized.emitter_fleet = f.min_emitters;
          sized.finalize();
        }
        BaselinePlan plan{"dcg", f.best.missions, f.best.emitters, f.min_emitters > 0,
                          f.min_emitters > 0 ? "" : "no feasible emitter fleet size", {}};
        rec.plan = detail::finish_plan(sized, std::move(plan));
        rec.engine = summarize(f.best);
        rec.engine->min_emitters = f.min_emitters;
        if (log) *log = f.best.log;
      } else {
        DcgResult r;
        rec.plan = joint(inst, opt.config, &r);
        rec.engine = summarize(r);
        if (log) *log = std::move(r.log);
      }
      break;
    }
    case Solver::kGreedy: rec.plan = greedy(inst); break;
    case Solver::kEmittingFollow: rec.plan = emitting_follow(inst, opt.config); break;
    case Solver::kMissionEmitting: rec.plan = mission_emitting(inst, opt.config); break;
    case Solver::kFixed: rec.plan = fixed_emitters(inst, opt.config); break;
  }
  rec.wall_seconds = sw.seconds();
  return rec;
}

// ---------------------------------------------------------------------------
// Experiment grids.

struct ExperimentSpec {
  std::vector<int> num_jobs{20};
  std::vector<int> num_clusters{5};
  std::vector<double> cluster_radius{25.0};
  std::vector<double> coverage_radius{50.0};
  std::vector<std::uint64_t> seeds{1};
  std::vector<Solver> solvers{Solver::kDcg};
  GeneratorConfig base;  ///< all other generator settings
  DcgConfig config;
  bool fleet_min = false;
  int workers = 0;  ///< 0: hardware concurrency
};

struct ExperimentCell {
  int num_jobs = 0;
  int num_clusters = 0;
  double cluster_radius = 0.0;
  double coverage_radius = 0.0;
  std::string label() const {
    return "n" + std::to_string(num_jobs) + "_k" + std::to_string(num_clusters) + "_cr" +
           detail::format_number(cluster_radius) + "_r" + detail::format_number(coverage_radius);
  }
};

/// Means over the feasible runs of one (cell, solver) pair. Wall times are
/// left out so that repeated experiments give identical aggregates.
struct CellAggregate {
  ExperimentCell cell;
  std::string strategy;
  int runs = 0;
  int feasible = 0;
  int failed = 0;  ///< runs that raised an error
  double objective = 0.0;
  /// Mean of objective / engine objective on the same seed, when both exist.
  double normalized_objective = 0.0;
  int normalized_runs = 0;
  double distance_ratio = 0.0;  ///< over runs with moving emitters
  double mission_vehicles = 0.0;
  double emitter_vehicles = 0.0;
  double coverage_locations = 0.0;
};

struct ExperimentResult {
  std::vector<ExperimentCell> cells;
  std::vector<RunRecord> runs;  ///< cell-major, then seed, then solver
  std::vector<std::string> errors;  ///< per-run error text, empty when fine
  std::vector<CellAggregate> aggregates;
};

inline std::vector<ExperimentCell> expand_grid(const ExperimentSpec& spec) {
  std::vector<ExperimentCell> cells;
  for (int n : spec.num_jobs)
    for (int k : spec.num_clusters)
      for (double cr : spec.cluster_radius)
        for (double r : spec.coverage_radius) cells.push_back({n, k, cr, r});
  return cells;
}

inline GeneratorConfig generator_for(const ExperimentSpec& spec, const ExperimentCell& cell, std::uint64_t seed) {
  GeneratorConfig g = spec.base;
  g.num_jobs = cell.num_jobs;
  g.num_clusters = cell.num_clusters;
  g.cluster_radius = cell.cluster_radius;
  g.coverage_radius = cell.coverage_radius;
  g.seed = seed;
  return g;
}

inline std::vector<CellAggregate> aggregate(const ExperimentSpec& spec, const ExperimentResult& res) {
  std::vector<CellAggregate> out;
  const std::size_t per_cell = spec.seeds.size() * spec.solvers.size();
  for (std::size_t c = 0; c < res.cells.size(); ++c) {
    for (std::size_t v = 0; v < spec.solvers.size(); ++v) {
      CellAggregate a;
      a.cell = res.cells[c];
      a.strategy = to_string(spec.solvers[v]);
      int ratio_runs = 0;
      for (std::size_t s = 0; s < spec.seeds.size(); ++s) {
        const std::size_t idx = c * per_cell + s * spec.solvers.size() + v;
        const RunRecord& run = res.runs[idx];
        ++a.runs;
        if (!res.errors[idx].empty()) ++a.failed;
        if (!run.plan.feasible) continue;
        ++a.feasible;
        const PlanMetrics& m = run.plan.metrics;
        a.objective += m.objective;
        a.mission_vehicles += m.mission_vehicles;
        a.emitter_vehicles += m.emitter_vehicles;
        a.coverage_locations += m.coverage_locations;
        if (std::isfinite(m.distance_ratio)) {
          a.distance_ratio += m.distance_ratio;
          ++ratio_runs;
        }
        for (std::size_t w = 0; w < spec.solvers.size(); ++w) {
          if (spec.solvers[w] != Solver::kDcg) continue;
          const RunRecord& ref = res.runs[c * per_cell + s * spec.solvers.size() + w];
          if (ref.plan.feasible && ref.plan.metrics.objective > 0.0) {
            a.normalized_objective += m.objective / ref.plan.metrics.objective;
            ++a.normalized_runs;
          }
        }
      }
      if (a.feasible > 0) {
        const double f = a.feasible;
        a.objective /= f;
        a.mission_vehicles /= f;
        a.emitter_vehicles /= f;
        a.coverage_locations /= f;
      }
      if (ratio_runs > 0) a.distance_ratio /= ratio_runs;
      if (a.normalized_runs > 0) a.normalized_objective /= a.normalized_runs;
      out.push_back(std::move(a));
    }
  }
  return out;
}

/// Runs every (cell, seed, solver) combination on a bounded worker pool.
/// Failures are recorded per run; the results do not depend on scheduling.
inline ExperimentResult run_experiment(const ExperimentSpec& spec) {
  if (spec.seeds.empty() || spec.solvers.empty()) throw std::invalid_argument("experiment needs seeds and solvers");
  ExperimentResult res;
  res.cells = expand_grid(spec);
  if (res.cells.empty()) throw std::invalid_argument("experiment grid is empty");
  const std::size_t per_cell = spec.seeds.size() * spec.solvers.size();
  const std::size_t total = res.cells.size() * per_cell;
  res.runs.resize(total);
  res.errors.resize(total);

  auto work = [&](std::size_t idx) {
    const ExperimentCell& cell = res.cells[idx / per_cell];
    const std::uint64_t seed = spec.seeds[(idx % per_cell) / spec.solvers.size()];
    const Solver solver = spec.solvers[idx % spec.solvers.size()];
    RunRecord& rec = res.runs[idx];
    rec.instance = cell.label();
    rec.seed = seed;
    rec.plan.strategy = to_string(solver);
    try {
      const Instance inst = generate(generator_for(spec, cell, seed));
      SolveOptions opt{solver, spec.config, spec.fleet_min};
      opt.config.seed = seed;
      rec = solve(inst, opt, cell.label());
    } catch (const std::exception& e) {
      res.errors[idx] = e.what();
      rec.plan.feasible = false;
      rec.plan.message = e.what();
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(spec.workers > 0 ? static_cast<std::size_t>(spec.workers) : hw, total);
  std::atomic<std::size_t> next{0};
  auto loop = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) work(idx);
  };
  if (workers <= 1) {
    loop();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(loop);
    for (auto& t : pool) t.join();
  }
  res.aggregates = aggregate(spec, res);
  return res;
}

inline std::string aggregate_header() {
  return "cell,num_jobs,num_clusters,cluster_radius,coverage_radius,strategy,runs,feasible,failed,objective,"
         "normalized_objective,distance_ratio,mission_vehicles,emitter_vehicles,coverage_locations";
}

inline std::string aggregate_row(const CellAggregate& a) {
  using detail::format_number;
  std::ostringstream os;
  os << a.cell.label() << ',' << a.cell.num_jobs << ',' << a.cell.num_clusters << ','
     << format_number(a.cell.cluster_radius) << ',' << format_number(a.cell.coverage_radius) << ',' << a.strategy
     << ',' << a.runs << ',' << a.feasible << ',' << a.failed << ',' << format_number(a.objective) << ','
     << (a.normalized_runs > 0 ? format_number(a.normalized_objective) : "") << ','
     << format_number(a.distance_ratio) << ',' << format_number(a.mission_vehicles) << ','
     << format_number(a.emitter_vehicles) << ',' << format_number(a.coverage_locations);
  return os.str();
}

}  // namespace dcg
