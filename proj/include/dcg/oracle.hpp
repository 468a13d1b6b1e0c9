#pragma once

// Brute-force reference solvers for tiny instances: exhaustive joint
// optimum, the fully enumerated set-partitioning LP, and the LP relaxation
// of the explicit time-space formulation.

#include "rmp.hpp"
#include "validate.hpp"

#include <bitset>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace dcg::oracle {

struct Limits {
  int max_jobs = 5;
  int max_spots = 5;
  TimeStep max_horizon = 20;
  int max_stays = 3;  ///< emitter stay-sequence depth
};

class OracleRefused : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void check_limits(const Instance& inst, const Limits& lim) {
  if (inst.num_jobs() > lim.max_jobs || inst.num_spots() > lim.max_spots || inst.horizon > lim.max_horizon)
    throw OracleRefused("oracle: instance exceeds limits (jobs " + std::to_string(inst.num_jobs()) + ", spots " +
                        std::to_string(inst.num_spots()) + ", horizon " + std::to_string(inst.horizon) + ")");
}

/// Bit per (job, period) pair inside the job's window.
using CellSet = std::bitset<128>;

class CellIndex {
 public:
  explicit CellIndex(const Instance& inst) : inst_(&inst) {
    int next = 0;
    for (const Job& jb : inst.jobs) {
      offset_.push_back(next);
      next += jb.window_end - jb.window_start + 1;
    }
    if (next > 128) throw OracleRefused("oracle: more than 128 job-period cells");
    size_ = next;
  }
  int size() const { return size_; }
  int cell(JobId i, TimeStep t) const {
    return offset_[static_cast<std::size_t>(i)] + (t - inst_->job(i).window_start);
  }
  CellSet of(const std::vector<JobTime>& pairs) const {
    CellSet s;
    for (auto [i, t] : pairs) s.set(static_cast<std::size_t>(cell(i, t)));
    return s;
  }

 private:
  const Instance* inst_;
  std::vector<int> offset_;
  int size_ = 0;
};

/// Every elementary mission path with every feasible start time per job.
inline std::vector<MissionPath> enumerate_missions(const Instance& inst) {
  std::vector<MissionPath> out;
  std::vector<Visit> cur;
  std::vector<char> used(static_cast<std::size_t>(inst.num_jobs()), 0);
  auto rec = [&](auto&& self, int at, TimeStep ready) -> void {
    for (JobId j = 0; j < inst.num_jobs(); ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const Job& jb = inst.job(j);
      const TimeStep arrive = ready + (at < 0 ? inst.depot_job_travel(j) : inst.job_travel(at, j));
      const TimeStep last = std::min(jb.window_end - jb.workload + 1, inst.horizon - inst.depot_job_travel(j) - jb.workload);
      for (TimeStep s = std::max(arrive, jb.window_start); s <= last; ++s) {
        cur.push_back({j, s, s + jb.workload - 1});
        used[static_cast<std::size_t>(j)] = 1;
        out.push_back(make_mission_path(inst, cur));
        self(self, j, s + jb.workload);
        used[static_cast<std::size_t>(j)] = 0;
        cur.pop_back();
      }
    }
  };
  rec(rec, -1, 0);
  return out;
}

/// Emitter paths with up to `max_stays` stays at spots covering some job.
/// Each stay starts on arrival (waiting elsewhere never adds coverage), so a
/// path is fixed by its spot sequence and departure periods. Paths are
/// reduced to the cheapest one per coverage signature; paths covering
/// nothing are dropped.
inline std::vector<EmittingPath> enumerate_emitters(const Instance& inst, int max_stays = 3) {
  const CellIndex cells(inst);
  std::unordered_map<CellSet, EmittingPath> best;
  std::vector<SpotId> useful = inst.useful_spots();
  std::vector<Stay> cur;
  auto rec = [&](auto&& self, int at, TimeStep ready) -> void {
    if (static_cast<int>(cur.size()) >= max_stays) return;
    for (SpotId j : useful) {
      if (j == at) continue;
      const TimeStep arrive = ready + (at < 0 ? inst.depot_spot_travel(j) : inst.spot_travel(at, j));
      for (TimeStep d = arrive; d + 1 + inst.depot_spot_travel(j) <= inst.horizon; ++d) {
        cur.push_back({j, arrive, d});
        auto p = make_emitting_path(inst, cur);
        const CellSet sig = cells.of(coverage_indicator(inst, p));
        if (sig.any()) {
          auto it = best.find(sig);
          if (it == best.end()) {
            best.emplace(sig, std::move(p));
          } else if (p.cost < it->second.cost - 1e-12) {
            it->second = std::move(p);
          }
        }
        self(self, j, d + 1);
        cur.pop_back();
      }
    }
  };
  rec(rec, -1, 0);
  std::vector<EmittingPath> out;
  out.reserve(best.size());
  for (auto& [sig, p] : best) out.push_back(std::move(p));
  // Deterministic order independent of hashing.
  std::sort(out.begin(), out.end(), [](const EmittingPath& a, const EmittingPath& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    auto key = [](const EmittingPath& p) {
      std::vector<std::tuple<int, int, int>> k;
      for (const Stay& s : p.stays) k.emplace_back(s.spot, s.arrive, s.depart);
      return k;
    };
    return key(a) < key(b);
  });
  return out;
}

struct OracleResult {
  double optimum = std::numeric_limits<double>::infinity();
  bool feasible = false;
  std::vector<MissionPath> missions;
  std::vector<EmittingPath> emitters;
  long mission_paths = 0;      ///< enumerated mission paths
  long emitter_paths = 0;      ///< distinct emitter coverage signatures
  long mission_plans = 0;      ///< mission partitions examined
  double sp_lp_value = 0.0;    ///< LP over all enumerated columns
};

namespace detail {

/// Exact minimum-cost cover of `need` by at most `k` signature sets,
/// branching on the sets containing the lowest uncovered cell.
class CoverSolver {
 public:
  CoverSolver(std::vector<CellSet> sets, std::vector<double> costs) : sets_(std::move(sets)), costs_(std::move(costs)) {
    // Drop sets dominated by a cheaper-or-equal superset.
    std::vector<char> keep(sets_.size(), 1);
    for (std::size_t a = 0; a < sets_.size(); ++a)
      for (std::size_t b = 0; b < sets_.size() && keep[a]; ++b) {
        if (a == b || !keep[b]) continue;
        const bool superset = (sets_[a] & ~sets_[b]).none();
        if (superset && (costs_[b] < costs_[a] || (costs_[b] == costs_[a] && (sets_[b] != sets_[a] || b < a))))
          keep[a] = 0;
      }
    for (std::size_t a = 0; a < sets_.size(); ++a)
      if (keep[a]) alive_.push_back(static_cast<int>(a));
    for (int c = 0; c < 128; ++c)
      for (int a : alive_)
        if (sets_[static_cast<std::size_t>(a)].test(static_cast<std::size_t>(c))) by_cell_[c].push_back(a);
  }

  /// Minimum cost and chosen set indices; infinity when impossible.
  std::pair<double, std::vector<int>> solve(const CellSet& need, int k) {
    if (need.none()) return {0.0, {}};
    if (k <= 0) return {kInfCost, {}};
    const Key key{need, k};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    int first = 0;
    while (!need.test(static_cast<std::size_t>(first))) ++first;
    std::pair<double, std::vector<int>> best{kInfCost, {}};
    for (int a : by_cell_[first]) {
      auto sub = solve(need & ~sets_[static_cast<std::size_t>(a)], k - 1);
      const double c = sub.first + costs_[static_cast<std::size_t>(a)];
      if (c < best.first - 1e-12) {
        sub.second.push_back(a);
        best = {c, std::move(sub.second)};
      }
    }
    memo_.emplace(key, best);
    return best;
  }

 private:
  static constexpr double kInfCost = std::numeric_limits<double>::infinity();
  struct Key {
    CellSet need;
    int k;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& key) const { return std::hash<CellSet>{}(key.need) * 31u + static_cast<std::size_t>(key.k); }
  };
  std::vector<CellSet> sets_;
  std::vector<double> costs_;
  std::vector<int> alive_;
  std::map<int, std::vector<int>> by_cell_;
  std::unordered_map<Key, std::pair<double, std::vector<int>>, KeyHash> memo_;
};

}  // namespace detail

/// Exhaustive joint optimum: every partition of the jobs into enumerated
/// mission paths (all start times), each priced with the exact cheapest
/// emitter cover of its work cells.
inline OracleResult exhaustive_joint(const Instance& inst, const Limits& lim = {}) {
  check_limits(inst, lim);
  const CellIndex cells(inst);
  OracleResult res;
  const auto all_missions = enumerate_missions(inst);
  const auto emitters = enumerate_emitters(inst, lim.max_stays);
  res.mission_paths = static_cast<long>(all_missions.size());
  res.emitter_paths = static_cast<long>(emitters.size());

  // Cheapest path per (job set, work cells); only those can be optimal.
  struct Candidate {
    std::uint32_t jobs = 0;
    CellSet work;
    const MissionPath* path = nullptr;
  };
  std::map<std::pair<std::uint32_t, std::string>, Candidate> uniq;
  for (const auto& q : all_missions) {
    Candidate c;
    for (const Visit& v : q.visits) c.jobs |= 1u << v.job;
    c.work = cells.of(work_indicator(q));
    const auto key = std::make_pair(c.jobs, c.work.to_string());
    c.path = &q;
    auto it = uniq.find(key);
    if (it == uniq.end() || q.cost < it->second.path->cost - 1e-12) uniq[key] = c;
  }
  std::vector<std::vector<Candidate>> by_first(static_cast<std::size_t>(inst.num_jobs()));
  for (const auto& [key, c] : uniq) {
    int first = 0;
    while (!(c.jobs & (1u << first))) ++first;
    by_first[static_cast<std::size_t>(first)].push_back(c);
  }

  std::vector<CellSet> sigs;
  std::vector<double> costs;
  for (const auto& p : emitters) {
    sigs.push_back(cells.of(coverage_indicator(inst, p)));
    costs.push_back(p.cost);
  }
  detail::CoverSolver cover(sigs, costs);

  const std::uint32_t all = inst.num_jobs() >= 32 ? 0xffffffffu : (1u << inst.num_jobs()) - 1u;
  std::vector<const Candidate*> chosen;
  auto rec = [&](auto&& self, std::uint32_t done, double mission_cost_so_far, CellSet work) -> void {
    if (mission_cost_so_far >= res.optimum - 1e-9) return;
    if (done == all) {
      ++res.mission_plans;
      auto [ecost, picks] = cover.solve(work, inst.emitter_fleet);
      const double total = mission_cost_so_far + ecost;
      if (total < res.optimum - 1e-9) {
        res.optimum = total;
        res.feasible = true;
        res.missions.clear();
        for (const Candidate* c : chosen) res.missions.push_back(*c->path);
        res.emitters.clear();
        for (int a : picks) res.emitters.push_back(emitters[static_cast<std::size_t>(a)]);
      }
      return;
    }
    if (static_cast<int>(chosen.size()) >= inst.mission_fleet) return;
    int first = 0;
    while (done & (1u << first)) ++first;
    for (const Candidate& c : by_first[static_cast<std::size_t>(first)]) {
      if (c.jobs & done) continue;
      chosen.push_back(&c);
      self(self, done | c.jobs, mission_cost_so_far + c.path->cost, work | c.work);
      chosen.pop_back();
    }
  };
  rec(rec, 0u, 0.0, CellSet{});

  RestrictedMaster lp(inst, MasterMode::kJoint);
  for (const auto& q : all_missions) lp.add_mission(q);
  for (const auto& p : emitters) lp.add_emitter(p);
  const auto sol = lp.solve();
  res.sp_lp_value = sol.status == lp::LpStatus::kOptimal ? sol.objective : std::numeric_limits<double>::infinity();
  return res;
}

/// Integer optimum over the same enumerated columns, solved as the joint
/// master with branch and bound. Used to cross-check `exhaustive_joint`.
inline double enumerated_integer_optimum(const Instance& inst, const Limits& lim = {}) {
  check_limits(inst, lim);
  RestrictedMaster m(inst, MasterMode::kJoint);
  for (const auto& q : enumerate_missions(inst)) m.add_mission(q);
  for (const auto& p : enumerate_emitters(inst, lim.max_stays)) m.add_emitter(p);
  const auto s = m.solve_integer();
  return s.status == lp::LpStatus::kOptimal ? s.objective : std::numeric_limits<double>::infinity();
}

/// LP relaxation of the explicit time-space formulation. Node (loc, t)
/// means a vehicle is at loc during period t; presence is the inflow of a
/// node. Work spanning [a, d] leaves at d + 1, matching path semantics.
/// Vehicle flows are aggregated over identical vehicles, with a zero-cost
/// depot-to-depot arc for unused ones.
inline double explicit_lp_value(const Instance& inst, const Limits& lim = {}) {
  check_limits(inst, lim);
  const int n = inst.num_jobs();
  const int m = inst.num_spots();
  const int h = inst.horizon;
  lp::LpProblem p;

  // Flow rows per node; presence gathered per node as (var) lists.
  struct Network {
    std::vector<std::vector<lp::Entry>> in, out;   // per node
    std::vector<lp::Entry> leave, arrive_home;     // depot arcs
    std::vector<std::vector<lp::Entry>> entries;   // per location: non-idle inflow
  };
  auto build = [&](int locs, auto travel, auto dist, auto home_travel, auto home_dist) {
    Network net;
    const auto nodes = static_cast<std::size_t>(locs * h);
    net.in.resize(nodes);
    net.out.resize(nodes);
    net.entries.resize(static_cast<std::size_t>(locs));
    auto node = [&](int l, int t) { return static_cast<std::size_t>(l * h + t); };
    for (int l = 0; l < locs; ++l) {
      for (TimeStep t = home_travel(l); t < h; ++t) {
        const int v = p.add_var(home_dist(l), 0.0, lp::kInf);
        net.leave.push_back({v, 1.0});
        net.in[node(l, t)].push_back({v, 1.0});
        net.entries[static_cast<std::size_t>(l)].push_back({v, 1.0});
      }
      for (TimeStep t = 0; t < h; ++t) {
        if (t + 1 < h) {
          const int v = p.add_var(0.0, 0.0, lp::kInf);
          net.out[node(l, t)].push_back({v, 1.0});
          net.in[node(l, t + 1)].push_back({v, 1.0});
        }
        if (t + 1 + home_travel(l) <= h) {
          const int v = p.add_var(home_dist(l), 0.0, lp::kInf);
          net.out[node(l, t)].push_back({v, 1.0});
          net.arrive_home.push_back({v, 1.0});
        }
        for (int k = 0; k < locs; ++k) {
          if (k == l) continue;
          const TimeStep arrive = t + 1 + travel(l, k);
          if (arrive >= h) continue;
          const int v = p.add_var(dist(l, k), 0.0, lp::kInf);
          net.out[node(l, t)].push_back({v, 1.0});
          net.in[node(k, arrive)].push_back({v, 1.0});
          net.entries[static_cast<std::size_t>(k)].push_back({v, 1.0});
        }
      }
    }
    return net;
  };
  auto add_fleet = [&](Network& net, int fleet) {
    const int idle = p.add_var(0.0, 0.0, lp::kInf);
    auto leave = net.leave;
    leave.push_back({idle, 1.0});
    p.add_row(leave, lp::Sense::kEqual, fleet);
    auto home = net.arrive_home;
    home.push_back({idle, 1.0});
    p.add_row(home, lp::Sense::kEqual, fleet);
    for (std::size_t k = 0; k < net.in.size(); ++k) {
      std::vector<lp::Entry> row = net.in[k];
      for (const lp::Entry& e : net.out[k]) row.push_back({e.index, -1.0});
      if (!row.empty()) p.add_row(row, lp::Sense::kEqual, 0.0);
    }
  };

  Network mission = build(
      n, [&](int a, int b) { return inst.job_travel(a, b); }, [&](int a, int b) { return inst.job_distance(a, b); },
      [&](int a) { return inst.depot_job_travel(a); }, [&](int a) { return inst.depot_job_distance(a); });
  add_fleet(mission, inst.mission_fleet);
  for (int i = 0; i < n; ++i) p.add_row(mission.entries[static_cast<std::size_t>(i)], lp::Sense::kEqual, 1.0);

  Network emitter = build(
      m, [&](int a, int b) { return inst.spot_travel(a, b); }, [&](int a, int b) { return inst.spot_distance(a, b); },
      [&](int a) { return inst.depot_spot_travel(a); }, [&](int a) { return inst.depot_spot_distance(a); });
  add_fleet(emitter, inst.emitter_fleet);

  // Started-by and ended-by indicators.
  for (const Job& jb : inst.jobs) {
    std::vector<int> ys(static_cast<std::size_t>(h)), ye(static_cast<std::size_t>(h));
    for (TimeStep t = 0; t < h; ++t) {
      ys[static_cast<std::size_t>(t)] = p.add_var(0.0, 0.0, t < jb.window_start ? 0.0 : 1.0);
      ye[static_cast<std::size_t>(t)] = p.add_var(0.0, t > jb.window_end ? 1.0 : 0.0, 1.0);
    }
    std::vector<lp::Entry> total;
    for (TimeStep t = 0; t < h; ++t) {
      const int s = ys[static_cast<std::size_t>(t)], e = ye[static_cast<std::size_t>(t)];
      if (t + 1 < h) {
        p.add_row({{s, 1.0}, {ys[static_cast<std::size_t>(t) + 1], -1.0}}, lp::Sense::kLessEqual, 0.0);
        p.add_row({{e, 1.0}, {ye[static_cast<std::size_t>(t) + 1], -1.0}}, lp::Sense::kLessEqual, 0.0);
      }
      total.push_back({s, 1.0});
      total.push_back({e, -1.0});
      std::vector<lp::Entry> at_job{{s, 1.0}, {e, -1.0}};
      for (const lp::Entry& x : mission.in[static_cast<std::size_t>(jb.id * h + t)]) at_job.push_back({x.index, -1.0});
      p.add_row(at_job, lp::Sense::kLessEqual, 0.0);
      std::vector<lp::Entry> covered{{s, 1.0}, {e, -1.0}};
      for (SpotId j : inst.coverage(jb.id))
        for (const lp::Entry& x : emitter.in[static_cast<std::size_t>(j * h + t)]) covered.push_back({x.index, -1.0});
      p.add_row(covered, lp::Sense::kLessEqual, 0.0);
    }
    p.add_row(total, lp::Sense::kGreaterEqual, jb.workload);
  }
  const auto sol = lp::solve_lp(p);
  return sol.status == lp::LpStatus::kOptimal ? sol.objective : std::numeric_limits<double>::infinity();
}

}  // namespace dcg::oracle
