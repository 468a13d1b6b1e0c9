#pragma once

// Double column generation: warm start, pricing loop, stem-and-blender and
// the final integer master.

#include "greedy.hpp"
#include "pricing_emitting.hpp"
#include "pricing_mission.hpp"
#include "validate.hpp"

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dcg {

enum class WarmStart { kNone, kPartial, kFull };

inline const char* to_string(WarmStart w) {
  switch (w) {
    case WarmStart::kNone: return "none";
    case WarmStart::kPartial: return "partial";
    case WarmStart::kFull: return "full";
  }
  return "?";
}

struct PruneSet {
  bool input = true;
  bool primal = true;
  bool dual = true;
};

struct DcgConfig {
  double epsilon = 1e-6;
  int mission_cap = 0;  ///< columns per mission pricing call, 0 = all negative
  int emitter_cap = 0;
  int max_iterations = 1000;
  int heuristic_iterations = -1;  ///< primal-window phase length; -1 = 60% of max_iterations
  WarmStart warm_start = WarmStart::kFull;
  PruneSet prune;
  bool early_completion = true;
  bool stem_and_blender = true;
  int blend_cap = 100;       ///< columns kept per stem group
  long integer_node_limit = 500000;
  double integer_time_limit = 300.0;  ///< seconds for the final integer solve, 0 = unlimited
  std::uint64_t seed = 1;    ///< recorded; the algorithm itself is deterministic
};

struct IterationLog {
  int iteration = 0;
  std::string phase;
  double lp_objective = 0.0;
  int missions_added = 0;
  int emitters_added = 0;
  double min_mission_rc = 0.0;
  double min_emitter_rc = 0.0;
  double xi_sum = 0.0;
  int xi_positive = 0;
};

struct PhaseTimes {
  double warm_start = 0.0;
  double column_generation = 0.0;
  double stem_and_blender = 0.0;
  double integer_solve = 0.0;
};

struct DcgResult {
  std::vector<MissionPath> missions;
  std::vector<EmittingPath> emitters;
  double objective = 0.0;
  double lp_bound = 0.0;
  bool certified = false;         ///< terminal exact pricing pass found nothing
  double certificate_mission_rc = 0.0;
  double certificate_emitter_rc = 0.0;
  bool feasible = false;          ///< integer plan within fleet limits
  bool integer_optimal = false;   ///< branch and bound finished
  bool used_fallback = false;     ///< plan is the pre-branching incumbent (greedy or mission-first)
  long integer_nodes = 0;
  long integer_lp_iterations = 0;
  int iterations = 0;
  int columns_generated = 0;
  int mission_pool = 0;
  int emitter_pool = 0;
  int fractional_before = 0;      ///< fractional routes in the certified LP
  int fractional_after = 0;       ///< fractional routes in the final plan
  double elastic_penalty = 0.0;
  std::vector<MissionPath> mission_columns;   ///< final pool
  std::vector<EmittingPath> emitter_columns;
  DualPrices certificate_duals;               ///< duals of the certified LP
  PhaseTimes times;
  std::vector<IterationLog> log;
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

inline int count_fractional(const std::vector<double>& w) {
  int n = 0;
  for (double x : w) n += (x > 1e-6 && x < 1.0 - 1e-6) ? 1 : 0;
  return n;
}

}  // namespace detail

/// Column pools produced by a warm start, plus the integer plan they contain.
struct WarmStartPools {
  std::vector<MissionPath> missions;
  std::vector<EmittingPath> emitters;
  GreedyPlan greedy;
  /// Mission-only integer plan (partial/full) and its emitter cover (full).
  std::vector<MissionPath> mission_only_plan;
  std::vector<EmittingPath> mission_only_cover;
  bool cover_feasible = false;
};

/// Mission-only column generation (coverage ignored). Returns the pool; the
/// integer plan over the pool is written to `plan` when given.
inline std::vector<MissionPath> mission_only_generation(const Instance& inst, const std::vector<MissionPath>& seed,
                                                        const DcgConfig& cfg, std::vector<MissionPath>* plan = nullptr,
                                                        const std::vector<std::vector<char>>& allowed_work = {}) {
  double penalty = 1000.0;
  for (const auto& q : seed) penalty += 10.0 * q.cost;
  RestrictedMaster master(inst, MasterMode::kMissionOnly, penalty);
  for (const auto& q : seed) master.add_mission(q);
  MissionPricingOptions mopt;
  mopt.cap = cfg.mission_cap;
  mopt.epsilon = cfg.epsilon;
  mopt.early_completion = cfg.early_completion;
  mopt.allowed_work = allowed_work;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    const auto sol = master.solve();
    if (sol.status != lp::LpStatus::kOptimal) break;
    const auto priced = price_mission(inst, sol.duals, mopt);
    int added = 0;
    for (const auto& c : priced.columns) added += master.add_mission(c.path) ? 1 : 0;
    if (added == 0) break;
  }
  if (plan) {
    plan->clear();
    lp::BinaryOptions bopt;
    bopt.max_nodes = cfg.integer_node_limit;
    const auto isol = master.solve_integer(bopt);
    if (!isol.mission_weights.empty())
      for (std::size_t k = 0; k < master.missions().size(); ++k)
        if (isol.mission_weights[k] > 0.5) plan->push_back(master.missions()[k]);
  }
  return master.missions();
}

/// Single-stay emitter at the covering spot nearest to the depot that can
/// reach the interval, or nothing.
inline std::optional<EmittingPath> single_stay_cover(const Instance& inst, JobId job, TimeStep a, TimeStep d) {
  std::optional<EmittingPath> best;
  for (SpotId s : inst.coverage(job)) {
    if (inst.depot_spot_travel(s) > a || d + 1 + inst.depot_spot_travel(s) > inst.horizon) continue;
    auto p = make_emitting_path(inst, {{s, a, d}});
    if (!best || p.cost < best->cost) best = std::move(p);
  }
  return best;
}

/// Emitter-only column generation covering the work of a fixed mission
/// plan. Returns the pool; `cover` receives the integer emitter plan.
inline std::vector<EmittingPath> emitter_only_generation(const Instance& inst, const std::vector<MissionPath>& plan,
                                                         const std::vector<EmittingPath>& seed, const DcgConfig& cfg,
                                                         std::vector<EmittingPath>* cover, bool* feasible) {
  std::vector<JobTime> work;
  for (const auto& q : plan)
    for (auto jt : work_indicator(q)) work.push_back(jt);
  RestrictedMaster master(inst, MasterMode::kEmitterOnly, 0.0, work);
  for (const auto& p : seed) master.add_emitter(p);
  for (const auto& q : plan)
    for (const Visit& v : q.visits)
      if (auto p = single_stay_cover(inst, v.job, v.work_start, v.work_end)) master.add_emitter(*p);
  EmitterPricingOptions eopt;
  eopt.cap = cfg.emitter_cap;
  eopt.epsilon = cfg.epsilon;
  bool lp_ok = false;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    const auto sol = master.solve();
    lp_ok = sol.status == lp::LpStatus::kOptimal;
    if (!lp_ok) break;
    const auto priced = price_emitting(inst, sol.duals, dual_windows(inst, sol.duals), eopt);
    int added = 0;
    for (const auto& c : priced.columns) added += master.add_emitter(c.path) ? 1 : 0;
    if (added == 0) break;
  }
  if (feasible) *feasible = false;
  if (cover) cover->clear();
  if (lp_ok && (cover || feasible)) {
    lp::BinaryOptions bopt;
    bopt.max_nodes = cfg.integer_node_limit;
    const auto isol = master.solve_integer(bopt);
    if (isol.status == lp::LpStatus::kOptimal || (isol.status == lp::LpStatus::kIterationLimit && !isol.emitter_weights.empty())) {
      if (feasible) *feasible = true;
      if (cover)
        for (std::size_t k = 0; k < master.emitters().size(); ++k)
          if (isol.emitter_weights[k] > 0.5) cover->push_back(master.emitters()[k]);
    }
  }
  return master.emitters();
}

inline WarmStartPools warm_start(const Instance& inst, WarmStart mode, const DcgConfig& cfg = {}) {
  WarmStartPools w;
  w.greedy = greedy_plan(inst);
  w.missions = w.greedy.missions;
  w.emitters = w.greedy.emitters;
  if (mode == WarmStart::kNone) return w;
  w.missions = mission_only_generation(inst, w.greedy.missions, cfg, &w.mission_only_plan);
  if (mode == WarmStart::kPartial) return w;
  auto extra = emitter_only_generation(inst, w.mission_only_plan, {}, cfg, &w.mission_only_cover, &w.cover_feasible);
  w.emitters.insert(w.emitters.end(), extra.begin(), extra.end());
  return w;
}

namespace detail {

struct StemGroup {
  std::vector<int> stem;
  std::vector<int> blender;
};

/// Groups sequences by first location; stem is the longest common prefix of
/// a group, blender every later location of any member (ascending).
inline std::vector<StemGroup> stem_groups(const std::vector<std::vector<int>>& sequences) {
  std::map<int, std::vector<const std::vector<int>*>> by_first;
  for (const auto& s : sequences)
    if (!s.empty()) by_first[s.front()].push_back(&s);
  std::vector<StemGroup> out;
  for (const auto& [first, members] : by_first) {
    std::vector<int> stem = *members.front();
    for (const auto* m : members) {
      std::size_t k = 0;
      while (k < stem.size() && k < m->size() && stem[k] == (*m)[k]) ++k;
      stem.resize(k);
    }
    std::vector<int> blender;
    for (const auto* m : members)
      for (std::size_t k = stem.size(); k < m->size(); ++k)
        if (std::find(stem.begin(), stem.end(), (*m)[k]) == stem.end()) blender.push_back((*m)[k]);
    std::sort(blender.begin(), blender.end());
    blender.erase(std::unique(blender.begin(), blender.end()), blender.end());
    out.push_back({std::move(stem), std::move(blender)});
  }
  return out;
}

}  // namespace detail

struct StemBlend {
  std::vector<int> stem;
  std::vector<int> blender;
};

/// Public form of the grouping used by stem-and-blender.
inline std::vector<StemBlend> stems_and_blenders(const std::vector<std::vector<int>>& sequences) {
  std::vector<StemBlend> out;
  for (auto& g : detail::stem_groups(sequences)) out.push_back({std::move(g.stem), std::move(g.blender)});
  return out;
}

/// Perturbations of the fractional LP support: for every stem group, the
/// cheapest-reduced-cost paths that start with the stem and continue only
/// through blender locations.
inline std::pair<std::vector<MissionPath>, std::vector<EmittingPath>> stem_and_blender(
    const Instance& inst, const std::vector<MissionPath>& missions, const std::vector<double>& mission_weights,
    const std::vector<EmittingPath>& emitters, const std::vector<double>& emitter_weights, const DualPrices& duals,
    const DcgConfig& cfg) {
  std::vector<MissionPath> new_missions;
  std::vector<EmittingPath> new_emitters;
  std::vector<std::vector<int>> mseq, eseq;
  std::vector<MissionPath> frac_missions;
  for (std::size_t k = 0; k < missions.size(); ++k)
    if (mission_weights[k] > 1e-6 && mission_weights[k] < 1.0 - 1e-6) {
      mseq.push_back(location_sequence(missions[k]));
      frac_missions.push_back(missions[k]);
    }
  for (std::size_t k = 0; k < emitters.size(); ++k)
    if (emitter_weights[k] > 1e-6 && emitter_weights[k] < 1.0 - 1e-6) eseq.push_back(location_sequence(emitters[k]));

  for (const auto& g : detail::stem_groups(mseq)) {
    MissionPricingOptions o;
    o.cap = cfg.blend_cap;
    o.epsilon = -1e300;  // keep non-negative paths too
    o.early_completion = cfg.early_completion;
    o.prefix = g.stem;
    o.continuation = g.blender;
    for (auto& c : price_mission(inst, duals, o).columns) new_missions.push_back(std::move(c.path));
  }
  // Emitter perturbations follow both the fractional emitter support and the
  // work intervals of fractional missions.
  const auto windows = trim_to_duals(primal_windows(inst, missions, mission_weights), inst, duals);
  const auto base = primal_windows(inst, missions, mission_weights);
  for (const auto& g : detail::stem_groups(eseq)) {
    EmitterPricingOptions o;
    o.cap = cfg.blend_cap;
    o.epsilon = -1e300;
    o.prefix = g.stem;
    o.continuation = g.blender;
    for (auto& c : price_emitting(inst, duals, base, o).columns) new_emitters.push_back(std::move(c.path));
    for (auto& c : price_emitting(inst, duals, windows, o).columns) new_emitters.push_back(std::move(c.path));
  }
  // Followers: one emitter tracking each fractional mission stay by stay.
  for (const auto& q : frac_missions) {
    std::vector<Stay> stays;
    bool ok = true;
    for (const Visit& v : q.visits) {
      const int prev = stays.empty() ? -1 : stays.back().spot;
      const TimeStep ready = stays.empty() ? 0 : stays.back().depart + 1;
      int pick = -1;
      double best = 0.0;
      for (SpotId s : inst.coverage(v.job)) {
        if (s == prev) {
          pick = s;
          break;
        }
        const TimeStep tt = prev < 0 ? inst.depot_spot_travel(s) : inst.spot_travel(prev, s);
        if (ready + tt > v.work_start || v.work_end + 1 + inst.depot_spot_travel(s) > inst.horizon) continue;
        const double d = prev < 0 ? inst.depot_spot_distance(s) : inst.spot_distance(prev, s);
        if (pick < 0 || d < best) {
          pick = s;
          best = d;
        }
      }
      if (pick < 0) {
        ok = false;
        break;
      }
      if (pick == prev) {
        stays.back().depart = v.work_end;
      } else {
        stays.push_back({pick, v.work_start, v.work_end});
      }
    }
    if (ok && !stays.empty()) {
      auto p = make_emitting_path(inst, std::move(stays));
      if (emitting_path_errors(inst, p).empty()) new_emitters.push_back(std::move(p));
    }
  }
  return {std::move(new_missions), std::move(new_emitters)};
}

/// Full double column generation on `inst`.
inline DcgResult run(const Instance& inst, const DcgConfig& cfg = {}) {
  DcgResult res;
  detail::Stopwatch sw;
  const WarmStartPools pools = warm_start(inst, cfg.warm_start, cfg);
  res.times.warm_start = sw.seconds();
  if (!pools.greedy.feasible && !pools.greedy.unserved.empty())
    throw std::runtime_error("no single-route schedule exists for some job; instance infeasible");

  double greedy_cost = 0.0;
  for (const auto& q : pools.greedy.missions) greedy_cost += q.cost;
  for (const auto& p : pools.greedy.emitters) greedy_cost += p.cost;
  res.elastic_penalty = 10.0 * greedy_cost + 1000.0;
  RestrictedMaster master(inst, MasterMode::kJoint, res.elastic_penalty);
  for (const auto& q : pools.missions) master.add_mission(q);
  for (const auto& p : pools.emitters) master.add_emitter(p);
  const int seeded = static_cast<int>(master.missions().size() + master.emitters().size());

  MissionPricingOptions mopt;
  mopt.cap = cfg.mission_cap;
  mopt.epsilon = cfg.epsilon;
  mopt.early_completion = cfg.early_completion;
  EmitterPricingOptions eopt;
  eopt.cap = cfg.emitter_cap;
  eopt.epsilon = cfg.epsilon;

  const int heuristic_limit =
      cfg.heuristic_iterations >= 0 ? cfg.heuristic_iterations : (cfg.max_iterations * 6) / 10;
  bool heuristic = cfg.prune.primal && heuristic_limit > 0;
  const TimeWindows input = cfg.prune.input ? input_based_windows(inst) : unrestricted_windows(inst);

  sw = {};
  RmpSolution sol;
  int it = 0;
  for (;; ++it) {
    sol = master.solve();
    if (sol.status != lp::LpStatus::kOptimal)
      throw std::runtime_error(std::string("restricted master not optimal: ") + lp::to_string(sol.status));
    IterationLog entry;
    entry.iteration = it;
    entry.lp_objective = sol.objective;
    for (const auto& row : sol.duals.xi)
      for (double v : row) {
        entry.xi_sum += v;
        entry.xi_positive += v > 0.0 ? 1 : 0;
      }
    if (it >= cfg.max_iterations) {
      entry.phase = "iteration_limit";
      res.log.push_back(entry);
      break;
    }
    if (heuristic && it >= heuristic_limit) heuristic = false;

    const auto mp = price_mission(inst, sol.duals, mopt);
    TimeWindows windows = heuristic ? primal_windows(inst, master.missions(), sol.mission_weights) : input;
    if (cfg.prune.dual) windows = trim_to_duals(windows, inst, sol.duals);
    auto ep = price_emitting(inst, sol.duals, windows, eopt);
    entry.phase = heuristic ? "primal" : "exact";
    entry.min_mission_rc = mp.best_reduced_cost;
    entry.min_emitter_rc = ep.best_reduced_cost;
    for (const auto& c : mp.columns) entry.missions_added += master.add_mission(c.path) ? 1 : 0;
    for (const auto& c : ep.columns) entry.emitters_added += master.add_emitter(c.path) ? 1 : 0;

    if (entry.missions_added + entry.emitters_added == 0) {
      if (heuristic) {
        heuristic = false;
        res.log.push_back(entry);
        continue;
      }
      // Certification: mission pricing is already exact; emitter pricing
      // is repeated with dual-based windows only.
      const auto cert = price_emitting(inst, sol.duals, dual_windows(inst, sol.duals), eopt);
      entry.phase = "certify";
      entry.min_emitter_rc = std::min(entry.min_emitter_rc, cert.best_reduced_cost);
      for (const auto& c : cert.columns) entry.emitters_added += master.add_emitter(c.path) ? 1 : 0;
      res.log.push_back(entry);
      if (entry.emitters_added == 0) {
        res.certified = true;
        res.certificate_mission_rc = mp.best_reduced_cost;
        res.certificate_emitter_rc = cert.best_reduced_cost;
        res.certificate_duals = sol.duals;
        break;
      }
      continue;
    }
    res.log.push_back(entry);
  }
  res.iterations = it;
  res.lp_bound = sol.objective;
  res.times.column_generation = sw.seconds();
  res.fractional_before = detail::count_fractional(sol.mission_weights) + detail::count_fractional(sol.emitter_weights);

  sw = {};
  if (cfg.stem_and_blender && sol.fractional) {
    auto [nm, ne] = stem_and_blender(inst, master.missions(), sol.mission_weights, master.emitters(),
                                     sol.emitter_weights, sol.duals, cfg);
    for (const auto& q : nm)
      if (mission_path_errors(inst, q).empty()) master.add_mission(q);
    for (const auto& p : ne)
      if (emitting_path_errors(inst, p).empty()) master.add_emitter(p);
  }
  res.times.stem_and_blender = sw.seconds();

  // Cheapest complete plan known before branching; it bounds the search
  // and is kept if branching finds nothing better in time.
  std::vector<MissionPath> fallback_missions;
  std::vector<EmittingPath> fallback_emitters;
  double fallback_cost = lp::kInf;
  auto consider = [&](const std::vector<MissionPath>& q, const std::vector<EmittingPath>& p) {
    if (!validate(inst, q, p).ok()) return;
    double c = 0.0;
    for (const auto& x : q) c += x.cost;
    for (const auto& x : p) c += x.cost;
    if (c < fallback_cost) {
      fallback_cost = c;
      fallback_missions = q;
      fallback_emitters = p;
    }
  };
  consider(pools.greedy.missions, pools.greedy.emitters);
  if (pools.cover_feasible) consider(pools.mission_only_plan, pools.mission_only_cover);

  sw = {};
  lp::BinaryOptions bopt;
  bopt.max_nodes = cfg.integer_node_limit;
  bopt.time_limit = cfg.integer_time_limit;
  bopt.cutoff = fallback_cost < lp::kInf ? fallback_cost + 1e-6 : lp::kInf;
  const auto isol = master.solve_integer(bopt);
  res.times.integer_solve = sw.seconds();
  res.mission_columns = master.missions();
  res.emitter_columns = master.emitters();
  res.mission_pool = static_cast<int>(master.missions().size());
  res.emitter_pool = static_cast<int>(master.emitters().size());
  res.columns_generated = res.mission_pool + res.emitter_pool - seeded;
  res.integer_optimal = isol.status == lp::LpStatus::kOptimal && isol.proven_optimal;
  res.integer_nodes = isol.nodes;
  res.integer_lp_iterations = isol.lp_iterations;
  const bool improved = !isol.mission_weights.empty() && isol.mission_overflow < 0.5 && isol.emitter_overflow < 0.5;
  if (!improved) {
    res.integer_optimal = isol.proven_optimal && fallback_cost < lp::kInf;
    if (fallback_cost == lp::kInf) return res;
    res.missions = std::move(fallback_missions);
    res.emitters = std::move(fallback_emitters);
    res.objective = fallback_cost;
    res.feasible = true;
    res.used_fallback = true;
    return res;
  }
  for (std::size_t k = 0; k < master.missions().size(); ++k)
    if (isol.mission_weights[k] > 0.5) res.missions.push_back(master.missions()[k]);
  for (std::size_t k = 0; k < master.emitters().size(); ++k)
    if (isol.emitter_weights[k] > 0.5) res.emitters.push_back(master.emitters()[k]);
  res.fractional_after = detail::count_fractional(isol.mission_weights) + detail::count_fractional(isol.emitter_weights);
  res.objective = 0.0;
  for (const auto& q : res.missions) res.objective += q.cost;
  for (const auto& p : res.emitters) res.objective += p.cost;
  res.feasible = true;
  return res;
}

struct FleetMinResult {
  int min_emitters = -1;
  DcgResult best;
  std::vector<std::pair<int, bool>> probes;  ///< (V, feasible)
};

/// Smallest emitter fleet for which the engine finds a feasible plan,
/// by binary search on V.
inline FleetMinResult fleet_min(const Instance& inst, const DcgConfig& cfg = {}) {
  FleetMinResult out;
  Instance probe = inst;
  int lo = 1, hi = std::max(1, inst.emitter_fleet);
  auto attempt = [&](int v) {
    probe.emitter_fleet = v;
    probe.finalize();
    DcgResult r = run(probe, cfg);
    const bool ok = r.feasible && !r.missions.empty();
    out.probes.emplace_back(v, ok);
    return std::make_pair(ok, std::move(r));
  };
  auto top = attempt(hi);
  if (!top.first) return out;
  out.min_emitters = hi;
  out.best = std::move(top.second);
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    auto r = attempt(mid);
    if (r.first) {
      hi = mid;
      out.min_emitters = mid;
      out.best = std::move(r.second);
    } else {
      lo = mid + 1;
    }
  }
  return out;
}

}  // namespace dcg
