#pragma once

// Restricted master problem over mission and emitting path pools.

#include "lp.hpp"
#include "paths.hpp"

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcg {

/// Dual prices in the sign convention of the reduced-cost formulas:
/// pi free, fleet prices and linking prices non-negative.
struct DualPrices {
  std::vector<double> pi;                 ///< per job
  double rho = 0.0;                       ///< mission fleet row
  double beta = 0.0;                      ///< emitter fleet row
  std::vector<std::vector<double>> xi;    ///< [job][period], zero outside windows

  static DualPrices zero(const Instance& inst) {
    DualPrices d;
    d.pi.assign(static_cast<std::size_t>(inst.num_jobs()), 0.0);
    d.xi.assign(static_cast<std::size_t>(inst.num_jobs()),
                std::vector<double>(static_cast<std::size_t>(inst.horizon), 0.0));
    return d;
  }
  double link(JobId i, TimeStep t) const { return xi[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)]; }
};

inline double reduced_cost_mission(const Instance& inst, const MissionPath& p, const DualPrices& d) {
  double rc = p.cost + d.rho;
  for (const Visit& v : p.visits) {
    inst.job(v.job);
    rc -= d.pi[static_cast<std::size_t>(v.job)];
    for (TimeStep t = v.work_start; t <= v.work_end; ++t) rc += d.link(v.job, t);
  }
  return rc;
}

inline double reduced_cost_emitter(const Instance& inst, const EmittingPath& p, const DualPrices& d) {
  double rc = p.cost + d.beta;
  for (const Stay& s : p.stays) {
    inst.spot(s.spot);
    for (JobId i : inst.covered_jobs(s.spot))
      for (TimeStep t = std::max(s.arrive, 0); t <= std::min(s.depart, inst.horizon - 1); ++t) rc -= d.link(i, t);
  }
  return rc;
}

enum class MasterMode {
  kJoint,        ///< partition, both fleets, linking
  kMissionOnly,  ///< partition and mission fleet; coverage ignored
  kEmitterOnly,  ///< emitter fleet and coverage of a fixed work schedule
};

struct RmpSolution {
  lp::LpStatus status = lp::LpStatus::kInfeasible;
  std::vector<double> mission_weights;
  std::vector<double> emitter_weights;
  double objective = 0.0;
  DualPrices duals;
  bool fractional = false;
  /// Units of fleet capacity bought through the elastic columns.
  double mission_overflow = 0.0;
  double emitter_overflow = 0.0;
  /// Constraint classes involved in an infeasibility certificate.
  std::vector<std::string> violated;
  long lp_iterations = 0;
  bool proven_optimal = true;
  long nodes = 0;  ///< branch-and-bound nodes of an integer solve
};

/// Owns the LP and the column pools. Columns are deduplicated on their
/// work/coverage signature; a duplicate is kept only when strictly cheaper.
class RestrictedMaster {
 public:
  /// `elastic_penalty` > 0 adds fleet-overflow columns so the master stays
  /// feasible whenever the partition rows are; `fixed_work` lists the
  /// (job, period) pairs to cover in emitter-only mode.
  RestrictedMaster(const Instance& inst, MasterMode mode, double elastic_penalty = 0.0,
                   std::vector<JobTime> fixed_work = {})
      : inst_(&inst), mode_(mode), fixed_work_(std::move(fixed_work)) {
    lp::LpProblem p;
    const int n = inst.num_jobs();
    link_row_.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(inst.horizon), -1));
    if (mode != MasterMode::kEmitterOnly) {
      for (int i = 0; i < n; ++i) classes_.push_back("partition"), p.add_row({}, lp::Sense::kEqual, 1.0);
      mission_row_ = p.add_row({}, lp::Sense::kLessEqual, inst.mission_fleet);
      classes_.push_back("mission_fleet");
    }
    if (mode != MasterMode::kMissionOnly) {
      emitter_row_ = p.add_row({}, lp::Sense::kLessEqual, inst.emitter_fleet);
      classes_.push_back("emitter_fleet");
    }
    if (mode == MasterMode::kJoint) {
      for (const Job& jb : inst.jobs)
        for (TimeStep t = jb.window_start; t <= jb.window_end; ++t) {
          link_row_[static_cast<std::size_t>(jb.id)][static_cast<std::size_t>(t)] =
              p.add_row({}, lp::Sense::kLessEqual, 0.0);
          classes_.push_back("linking");
        }
    } else if (mode == MasterMode::kEmitterOnly) {
      for (auto [i, t] : fixed_work_) {
        auto& r = link_row_.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(t));
        if (r >= 0) continue;
        r = p.add_row({}, lp::Sense::kGreaterEqual, 1.0);
        classes_.push_back("coverage");
      }
    }
    solver_ = std::make_unique<lp::SimplexSolver>(p);
    if (elastic_penalty > 0.0) {
      if (mission_row_ >= 0) mission_overflow_col_ = solver_->add_column({{mission_row_, -1.0}}, elastic_penalty);
      if (emitter_row_ >= 0) emitter_overflow_col_ = solver_->add_column({{emitter_row_, -1.0}}, elastic_penalty);
    }
  }

  RestrictedMaster(const RestrictedMaster&) = delete;
  RestrictedMaster& operator=(const RestrictedMaster&) = delete;
  RestrictedMaster(RestrictedMaster&&) = default;
  RestrictedMaster& operator=(RestrictedMaster&&) = default;

  MasterMode mode() const { return mode_; }
  const Instance& instance() const { return *inst_; }
  const std::vector<MissionPath>& missions() const { return missions_; }
  const std::vector<EmittingPath>& emitters() const { return emitters_; }

  /// Returns false when an equal-signature column that is no more expensive
  /// is already pooled.
  bool add_mission(const MissionPath& path) {
    if (mode_ == MasterMode::kEmitterOnly) throw std::logic_error("mission column in emitter-only master");
    auto key = work_indicator(path);
    auto it = mission_seen_.find(key);
    if (it != mission_seen_.end() && it->second <= path.cost + 1e-9) return false;
    mission_seen_[std::move(key)] = path.cost;
    std::vector<lp::Entry> col;
    for (const Visit& v : path.visits) {
      col.push_back({v.job, 1.0});
      if (mode_ == MasterMode::kJoint)
        for (TimeStep t = v.work_start; t <= v.work_end; ++t)
          col.push_back({link_row_[static_cast<std::size_t>(v.job)][static_cast<std::size_t>(t)], 1.0});
    }
    col.push_back({mission_row_, 1.0});
    mission_cols_.push_back(solver_->add_column(std::move(col), path.cost, 0.0, lp::kInf));
    missions_.push_back(path);
    return true;
  }

  bool add_emitter(const EmittingPath& path) {
    if (mode_ == MasterMode::kMissionOnly) throw std::logic_error("emitter column in mission-only master");
    auto key = coverage_indicator(*inst_, path);
    auto it = emitter_seen_.find(key);
    if (it != emitter_seen_.end() && it->second <= path.cost + 1e-9) return false;
    std::vector<lp::Entry> col;
    for (auto [i, t] : key) {
      const int r = link_row_[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
      if (r >= 0) col.push_back({r, mode_ == MasterMode::kJoint ? -1.0 : 1.0});
    }
    emitter_seen_[std::move(key)] = path.cost;
    col.push_back({emitter_row_, 1.0});
    emitter_cols_.push_back(solver_->add_column(std::move(col), path.cost, 0.0, lp::kInf));
    emitters_.push_back(path);
    return true;
  }

  RmpSolution solve() { return extract(solver_->optimize(), false); }

  /// Integer master: every path column binary.
  RmpSolution solve_integer(lp::BinaryOptions opt = {}) {
    std::vector<int> binary = mission_cols_;
    binary.insert(binary.end(), emitter_cols_.begin(), emitter_cols_.end());
    lp::BranchStats stats;
    auto sol = lp::solve_binary(*solver_, binary, opt, &stats);
    RmpSolution out = extract(sol, true);
    out.proven_optimal = stats.proven_optimal;
    out.nodes = stats.nodes;
    out.lp_iterations = stats.lp_iterations;
    return out;
  }

  /// Disables (or re-enables) an emitter column; used to exclude columns
  /// from a solve without rebuilding the master.
  void set_emitter_enabled(std::size_t k, bool on) { solver_->set_bounds(emitter_cols_.at(k), 0.0, on ? lp::kInf : 0.0); }
  void set_mission_enabled(std::size_t k, bool on) { solver_->set_bounds(mission_cols_.at(k), 0.0, on ? lp::kInf : 0.0); }

 private:
  RmpSolution extract(const lp::LpSolution& sol, bool integral) {
    RmpSolution out;
    out.status = sol.status;
    out.lp_iterations = sol.iterations;
    out.duals = DualPrices::zero(*inst_);
    if (sol.status == lp::LpStatus::kInfeasible) {
      std::set<std::string> names;
      for (int r : sol.infeasible_rows) names.insert(classes_[static_cast<std::size_t>(r)]);
      out.violated.assign(names.begin(), names.end());
      return out;
    }
    if (sol.primal.empty()) return out;
    out.objective = sol.objective;
    for (int c : mission_cols_) out.mission_weights.push_back(sol.primal[static_cast<std::size_t>(c)]);
    for (int c : emitter_cols_) out.emitter_weights.push_back(sol.primal[static_cast<std::size_t>(c)]);
    if (mission_overflow_col_ >= 0) out.mission_overflow = sol.primal[static_cast<std::size_t>(mission_overflow_col_)];
    if (emitter_overflow_col_ >= 0) out.emitter_overflow = sol.primal[static_cast<std::size_t>(emitter_overflow_col_)];
    for (double w : out.mission_weights) out.fractional = out.fractional || (w > 1e-6 && w < 1.0 - 1e-6);
    for (double w : out.emitter_weights) out.fractional = out.fractional || (w > 1e-6 && w < 1.0 - 1e-6);
    if (integral || sol.status != lp::LpStatus::kOptimal) return out;
    const auto& y = sol.duals;
    if (mode_ != MasterMode::kEmitterOnly)
      for (int i = 0; i < inst_->num_jobs(); ++i) out.duals.pi[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)];
    if (mission_row_ >= 0) out.duals.rho = std::max(0.0, -y[static_cast<std::size_t>(mission_row_)]);
    if (emitter_row_ >= 0) out.duals.beta = std::max(0.0, -y[static_cast<std::size_t>(emitter_row_)]);
    const double sign = mode_ == MasterMode::kJoint ? -1.0 : 1.0;
    for (int i = 0; i < inst_->num_jobs(); ++i)
      for (TimeStep t = 0; t < inst_->horizon; ++t) {
        const int r = link_row_[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
        if (r >= 0)
          out.duals.xi[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] =
              std::max(0.0, sign * y[static_cast<std::size_t>(r)]);
      }
    return out;
  }

  const Instance* inst_;
  MasterMode mode_;
  std::vector<JobTime> fixed_work_;
  std::unique_ptr<lp::SimplexSolver> solver_;
  std::vector<std::string> classes_;
  std::vector<std::vector<int>> link_row_;
  int mission_row_ = -1;
  int emitter_row_ = -1;
  int mission_overflow_col_ = -1;
  int emitter_overflow_col_ = -1;
  std::vector<int> mission_cols_, emitter_cols_;
  std::vector<MissionPath> missions_;
  std::vector<EmittingPath> emitters_;
  std::map<std::vector<JobTime>, double> mission_seen_, emitter_seen_;
};

/// One-shot build and solve over the given pools. Weights follow the input
/// order; a column dropped as a duplicate gets weight 0.
inline RmpSolution build_and_solve(const Instance& inst, const std::vector<MissionPath>& missions,
                                   const std::vector<EmittingPath>& emitters, bool integral) {
  if (missions.empty()) throw std::invalid_argument("build_and_solve: empty mission pool");
  RestrictedMaster m(inst, MasterMode::kJoint);
  std::vector<int> mission_at, emitter_at;
  int k = 0;
  for (const auto& q : missions) mission_at.push_back(m.add_mission(q) ? k++ : -1);
  k = 0;
  for (const auto& p : emitters) emitter_at.push_back(m.add_emitter(p) ? k++ : -1);
  RmpSolution s = integral ? m.solve_integer() : m.solve();
  auto remap = [](const std::vector<double>& w, const std::vector<int>& at) {
    std::vector<double> out;
    for (int a : at) out.push_back(a >= 0 && !w.empty() ? w[static_cast<std::size_t>(a)] : 0.0);
    return out;
  };
  s.mission_weights = remap(s.mission_weights, mission_at);
  s.emitter_weights = remap(s.emitter_weights, emitter_at);
  return s;
}

}  // namespace dcg
