#pragma once

// Problem data for coordinated mission / emitter routing: jobs with time
// windows and workloads, a mesh of coverage spots, a shared depot and
// homogeneous fleets.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace dcg {

using JobId = int;
using SpotId = int;
using TimeStep = int;

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

inline double euclidean(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

struct Rect {
  double width = 0.0;
  double height = 0.0;
  bool contains(const Point& p) const {
    return p.x >= 0.0 && p.y >= 0.0 && p.x <= width && p.y <= height;
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

struct Job {
  JobId id = 0;
  Point location;
  TimeStep window_start = 0;
  TimeStep window_end = 0;
  int workload = 1;
  friend bool operator==(const Job&, const Job&) = default;
};

struct CoverageSpot {
  SpotId id = 0;
  Point location;
  friend bool operator==(const CoverageSpot&, const CoverageSpot&) = default;
};

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of whole time steps needed to cover the straight-line distance at
/// the given speed. Exact multiples do not round up.
inline TimeStep travel_time(const Point& from, const Point& to, double speed) {
  if (!(speed > 0.0)) throw std::domain_error("travel_time: speed must be positive");
  const double d = euclidean(from, to);
  if (d == 0.0) return 0;
  return static_cast<TimeStep>(std::ceil(d / speed - 1e-9));
}

/// Immutable problem instance. Distances, travel times and coverage sets are
/// precomputed by `finalize()`; all accessors are const afterwards.
///
/// Time model: periods are numbered 0..horizon-1 and time points 0..horizon.
/// A vehicle occupying a location during periods [a, d] leaves at point d+1
/// and reaches the next location no earlier than d+1+travel_time. Every
/// vehicle leaves the depot at point 0 and must be back by point `horizon`.
struct Instance {
  std::vector<Job> jobs;
  std::vector<CoverageSpot> spots;
  Point depot;
  TimeStep horizon = 0;
  int mission_fleet = 0;
  int emitter_fleet = 0;
  double mission_speed = 1.0;
  double emitter_speed = 1.0;
  double coverage_radius = 0.0;
  Rect area;

  int num_jobs() const { return static_cast<int>(jobs.size()); }
  int num_spots() const { return static_cast<int>(spots.size()); }

  const Job& job(JobId i) const {
    if (i < 0 || i >= num_jobs()) throw std::out_of_range("unknown job id " + std::to_string(i));
    return jobs[static_cast<std::size_t>(i)];
  }
  const CoverageSpot& spot(SpotId j) const {
    if (j < 0 || j >= num_spots()) throw std::out_of_range("unknown spot id " + std::to_string(j));
    return spots[static_cast<std::size_t>(j)];
  }

  // Mission network: index 0..n-1 are jobs.
  double job_distance(JobId a, JobId b) const { return job_dist_[idx(a, b, num_jobs())]; }
  TimeStep job_travel(JobId a, JobId b) const { return job_tt_[idx(a, b, num_jobs())]; }
  double depot_job_distance(JobId i) const { return depot_job_dist_[static_cast<std::size_t>(i)]; }
  TimeStep depot_job_travel(JobId i) const { return depot_job_tt_[static_cast<std::size_t>(i)]; }

  // Emitter network.
  double spot_distance(SpotId a, SpotId b) const { return spot_dist_[idx(a, b, num_spots())]; }
  TimeStep spot_travel(SpotId a, SpotId b) const { return spot_tt_[idx(a, b, num_spots())]; }
  double depot_spot_distance(SpotId j) const { return depot_spot_dist_[static_cast<std::size_t>(j)]; }
  TimeStep depot_spot_travel(SpotId j) const { return depot_spot_tt_[static_cast<std::size_t>(j)]; }

  /// C_i: spots within the coverage radius of job i (inclusive), ascending.
  const std::vector<SpotId>& coverage(JobId i) const {
    return coverage_.at(static_cast<std::size_t>(i));
  }
  /// Jobs covered by spot j, ascending.
  const std::vector<JobId>& covered_jobs(SpotId j) const {
    return covered_by_.at(static_cast<std::size_t>(j));
  }
  bool covers(SpotId j, JobId i) const {
    const auto& c = coverage(i);
    return std::binary_search(c.begin(), c.end(), j);
  }

  /// Spots that cover at least one job, ascending.
  const std::vector<SpotId>& useful_spots() const { return useful_spots_; }

  /// Recomputes every derived table and checks the invariants. Throws
  /// InstanceError on violation.
  void finalize();

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.jobs == b.jobs && a.spots == b.spots && a.depot == b.depot && a.horizon == b.horizon &&
           a.mission_fleet == b.mission_fleet && a.emitter_fleet == b.emitter_fleet &&
           a.mission_speed == b.mission_speed && a.emitter_speed == b.emitter_speed &&
           a.coverage_radius == b.coverage_radius && a.area == b.area;
  }

 private:
  static std::size_t idx(int a, int b, int n) {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(n) + static_cast<std::size_t>(b);
  }

  std::vector<double> job_dist_, spot_dist_, depot_job_dist_, depot_spot_dist_;
  std::vector<TimeStep> job_tt_, spot_tt_, depot_job_tt_, depot_spot_tt_;
  std::vector<std::vector<SpotId>> coverage_;
  std::vector<std::vector<JobId>> covered_by_;
  std::vector<SpotId> useful_spots_;
};

/// Spots whose distance to the job is at most the coverage radius.
inline std::vector<SpotId> coverage_set(const Instance& inst, JobId job) {
  const Job& jb = inst.job(job);
  std::vector<SpotId> out;
  for (const auto& s : inst.spots)
    if (euclidean(jb.location, s.location) <= inst.coverage_radius + 1e-9) out.push_back(s.id);
  return out;
}

inline void Instance::finalize() {
  const int n = num_jobs();
  const int m = num_spots();
  for (int i = 0; i < n; ++i) {
    if (jobs[static_cast<std::size_t>(i)].id != i)
      throw InstanceError("job ids must be 0..n-1 in order (job " + std::to_string(i) + ")");
    const Job& jb = jobs[static_cast<std::size_t>(i)];
    if (jb.workload < 1) throw InstanceError("job " + std::to_string(i) + ": workload must be >= 1");
    if (jb.window_start < 0)
      throw InstanceError("job " + std::to_string(i) + ": window start must be >= 0");
    if (jb.window_start + jb.workload - 1 > jb.window_end)
      throw InstanceError("job " + std::to_string(i) + ": workload does not fit in its window");
  }
  for (int j = 0; j < m; ++j)
    if (spots[static_cast<std::size_t>(j)].id != j)
      throw InstanceError("spot ids must be 0..m-1 in order (spot " + std::to_string(j) + ")");
  if (horizon <= 0) throw InstanceError("horizon must be positive");
  if (mission_fleet < 0 || emitter_fleet < 0) throw InstanceError("fleet sizes must be >= 0");
  if (!(mission_speed > 0.0) || !(emitter_speed > 0.0)) throw InstanceError("speeds must be positive");
  if (coverage_radius < 0.0) throw InstanceError("coverage radius must be >= 0");

  job_dist_.assign(static_cast<std::size_t>(n * n), 0.0);
  job_tt_.assign(static_cast<std::size_t>(n * n), 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      job_dist_[idx(a, b, n)] = euclidean(jobs[a].location, jobs[b].location);
      job_tt_[idx(a, b, n)] = travel_time(jobs[a].location, jobs[b].location, mission_speed);
    }
  spot_dist_.assign(static_cast<std::size_t>(m * m), 0.0);
  spot_tt_.assign(static_cast<std::size_t>(m * m), 0);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      spot_dist_[idx(a, b, m)] = euclidean(spots[a].location, spots[b].location);
      spot_tt_[idx(a, b, m)] = travel_time(spots[a].location, spots[b].location, emitter_speed);
    }
  depot_job_dist_.resize(static_cast<std::size_t>(n));
  depot_job_tt_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    depot_job_dist_[i] = euclidean(depot, jobs[i].location);
    depot_job_tt_[i] = travel_time(depot, jobs[i].location, mission_speed);
  }
  depot_spot_dist_.resize(static_cast<std::size_t>(m));
  depot_spot_tt_.resize(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    depot_spot_dist_[j] = euclidean(depot, spots[j].location);
    depot_spot_tt_[j] = travel_time(depot, spots[j].location, emitter_speed);
  }

  coverage_.assign(static_cast<std::size_t>(n), {});
  covered_by_.assign(static_cast<std::size_t>(m), {});
  for (int i = 0; i < n; ++i) {
    coverage_[i] = coverage_set(*this, i);
    if (coverage_[i].empty())
      throw InstanceError("job " + std::to_string(i) + " is not covered by any spot");
    for (SpotId j : coverage_[i]) covered_by_[j].push_back(i);
  }
  useful_spots_.clear();
  for (int j = 0; j < m; ++j)
    if (!covered_by_[j].empty()) useful_spots_.push_back(j);

  for (const Job& jb : jobs) {
    if (jb.window_end + 1 + depot_job_tt_[jb.id] > horizon)
      throw InstanceError("job " + std::to_string(jb.id) +
                          ": horizon is shorter than window end plus return travel");
  }
}

// ---------------------------------------------------------------------------
// Random clustered instances.

struct WindowPolicy {
  int min_workload = 2;
  int max_workload = 5;
  double start_fraction = 0.6;  ///< window start drawn in [0, start_fraction * horizon]
  double slack_fraction = 0.2;  ///< extra width drawn in [0, slack_fraction * horizon]
};

struct GeneratorConfig {
  int num_jobs = 20;
  int num_clusters = 5;
  double cluster_radius = 25.0;
  double coverage_radius = 50.0;
  double mesh_spacing = 50.0;
  Rect area{500.0, 500.0};
  TimeStep horizon = 60;
  double mission_speed = 25.0;
  double emitter_speed = 25.0;
  int mission_fleet = 0;  ///< 0 means "one per job"
  int emitter_fleet = 0;  ///< 0 means "one per job"
  WindowPolicy windows;
  std::uint64_t seed = 1;
  int max_retries = 1000;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GeneratedInstance {
  Instance instance;
  std::vector<Point> centroids;
  std::vector<int> cluster_of_job;
};

namespace detail {

inline std::vector<CoverageSpot> grid_spots(const Rect& area, double spacing) {
  std::vector<CoverageSpot> spots;
  const int nx = static_cast<int>(std::floor(area.width / spacing + 1e-9));
  const int ny = static_cast<int>(std::floor(area.height / spacing + 1e-9));
  for (int iy = 0; iy <= ny; ++iy)
    for (int ix = 0; ix <= nx; ++ix)
      spots.push_back({static_cast<SpotId>(spots.size()), {ix * spacing, iy * spacing}});
  return spots;
}

}  // namespace detail

/// Clustered generator: centroids uniform in the area (shrunk so the whole
/// ball fits), job locations uniform in the ball, spots on a square grid.
/// Jobs whose location has no covering spot, or whose window cannot be served
/// by a single mission/emitter pair leaving from the depot, are resampled.
inline GeneratedInstance generate_detailed(const GeneratorConfig& cfg) {
  if (cfg.num_jobs < 1) throw GenerationError("num_jobs must be >= 1");
  if (cfg.num_clusters < 1 || cfg.num_clusters > cfg.num_jobs)
    throw GenerationError("num_clusters must be in [1, num_jobs]");
  if (!(cfg.cluster_radius > 0.0) || !(cfg.coverage_radius > 0.0) || !(cfg.mesh_spacing > 0.0))
    throw GenerationError("radii and mesh spacing must be positive");
  if (2.0 * cfg.cluster_radius > std::min(cfg.area.width, cfg.area.height))
    throw GenerationError("cluster ball does not fit inside the area");
  if (cfg.windows.min_workload < 1 || cfg.windows.max_workload < cfg.windows.min_workload)
    throw GenerationError("invalid workload range");

  std::mt19937_64 rng(cfg.seed);
  auto uniform = [&rng](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  auto uniform_int = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  GeneratedInstance out;
  Instance& inst = out.instance;
  inst.area = cfg.area;
  inst.depot = {cfg.area.width / 2.0, cfg.area.height / 2.0};
  inst.horizon = cfg.horizon;
  inst.mission_speed = cfg.mission_speed;
  inst.emitter_speed = cfg.emitter_speed;
  inst.coverage_radius = cfg.coverage_radius;
  inst.mission_fleet = cfg.mission_fleet > 0 ? cfg.mission_fleet : cfg.num_jobs;
  inst.emitter_fleet = cfg.emitter_fleet > 0 ? cfg.emitter_fleet : cfg.num_jobs;
  inst.spots = detail::grid_spots(cfg.area, cfg.mesh_spacing);

  for (int c = 0; c < cfg.num_clusters; ++c)
    out.centroids.push_back({uniform(cfg.cluster_radius, cfg.area.width - cfg.cluster_radius),
                             uniform(cfg.cluster_radius, cfg.area.height - cfg.cluster_radius)});

  const TimeStep max_start = static_cast<TimeStep>(cfg.windows.start_fraction * cfg.horizon);
  const int max_slack = static_cast<int>(cfg.windows.slack_fraction * cfg.horizon);

  for (int i = 0; i < cfg.num_jobs; ++i) {
    // Round-robin guarantees every cluster receives at least one job.
    const int cluster = i < cfg.num_clusters ? i : uniform_int(0, cfg.num_clusters - 1);
    const Point centre = out.centroids[static_cast<std::size_t>(cluster)];
    bool placed = false;
    for (int attempt = 0; attempt < cfg.max_retries && !placed; ++attempt) {
      const double r = cfg.cluster_radius * std::sqrt(uniform(0.0, 1.0));
      const double theta = uniform(0.0, 2.0 * M_PI);
      const Point loc{centre.x + r * std::cos(theta), centre.y + r * std::sin(theta)};
      if (!cfg.area.contains(loc)) continue;

      // Earliest period the job can be worked with a covering emitter in
      // place, and latest period after which both vehicles can still return.
      TimeStep reach = travel_time(inst.depot, loc, cfg.mission_speed);
      TimeStep emitter_reach = -1;
      TimeStep latest_end = cfg.horizon - 1 - travel_time(loc, inst.depot, cfg.mission_speed);
      TimeStep emitter_latest = -1;
      for (const auto& s : inst.spots) {
        if (euclidean(loc, s.location) > cfg.coverage_radius + 1e-9) continue;
        const TimeStep tt = travel_time(inst.depot, s.location, cfg.emitter_speed);
        if (emitter_reach < 0 || tt < emitter_reach) emitter_reach = tt;
        emitter_latest = std::max(emitter_latest, cfg.horizon - 1 - tt);
      }
      if (emitter_reach < 0) continue;  // no covering spot
      reach = std::max(reach, emitter_reach);
      latest_end = std::min(latest_end, emitter_latest);

      const int workload = uniform_int(cfg.windows.min_workload, cfg.windows.max_workload);
      const TimeStep start = uniform_int(0, std::max(0, max_start));
      const int slack = uniform_int(0, std::max(0, max_slack));
      if (start < reach) continue;
      const TimeStep end = std::min(start + workload - 1 + slack, latest_end);
      if (start + workload - 1 > end) continue;

      inst.jobs.push_back({i, loc, start, end, workload});
      out.cluster_of_job.push_back(cluster);
      placed = true;
    }
    if (!placed)
      throw GenerationError("could not place job " + std::to_string(i) + " after " +
                            std::to_string(cfg.max_retries) + " attempts");
  }
  inst.finalize();
  return out;
}

inline Instance generate(const GeneratorConfig& cfg) { return generate_detailed(cfg).instance; }

// ---------------------------------------------------------------------------
// Instance file format (JSON document, see docs/instance_format.md).

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline nlohmann::ordered_json to_json(const Instance& inst) {
  nlohmann::ordered_json j;
  j["format"] = "dcg-instance";
  j["version"] = 1;
  j["units"] = {{"distance", "distance units"}, {"time", "time steps"},
                {"speed", "distance units per time step"}};
  j["area"] = {{"width", inst.area.width}, {"height", inst.area.height}};
  j["depot"] = {inst.depot.x, inst.depot.y};
  j["horizon"] = inst.horizon;
  j["mission_fleet"] = inst.mission_fleet;
  j["emitter_fleet"] = inst.emitter_fleet;
  j["mission_speed"] = inst.mission_speed;
  j["emitter_speed"] = inst.emitter_speed;
  j["coverage_radius"] = inst.coverage_radius;
  auto& jobs = j["jobs"] = nlohmann::ordered_json::array();
  for (const Job& jb : inst.jobs)
    jobs.push_back({{"id", jb.id},
                    {"location", {jb.location.x, jb.location.y}},
                    {"window_start", jb.window_start},
                    {"window_end", jb.window_end},
                    {"workload", jb.workload}});
  auto& spots = j["spots"] = nlohmann::ordered_json::array();
  for (const auto& s : inst.spots)
    spots.push_back({{"id", s.id}, {"location", {s.location.x, s.location.y}}});
  return j;
}

namespace detail {

template <class Json>
const Json& require(const Json& obj, const std::string& key, const std::string& context) {
  if (!obj.is_object() || !obj.contains(key))
    throw ParseError(context + ": missing required field '" + key + "'");
  return obj.at(key);
}

template <class T, class Json>
T read_field(const Json& obj, const std::string& key, const std::string& context) {
  const Json& v = require(obj, key, context);
  try {
    return v.template get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(context + ": field '" + key + "' has the wrong type");
  }
}

template <class Json>
Point read_point(const Json& obj, const std::string& key, const std::string& context) {
  const Json& v = require(obj, key, context);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ParseError(context + ": field '" + key + "' must be [x, y]");
  return {v[0].template get<double>(), v[1].template get<double>()};
}

}  // namespace detail

inline Instance from_json(const nlohmann::json& j) {
  using detail::read_field;
  using detail::read_point;
  Instance inst;
  const std::string top = "instance";
  const auto& area = detail::require(j, "area", top);
  inst.area = {read_field<double>(area, "width", "area"), read_field<double>(area, "height", "area")};
  inst.depot = read_point(j, "depot", top);
  inst.horizon = read_field<int>(j, "horizon", top);
  inst.mission_fleet = read_field<int>(j, "mission_fleet", top);
  inst.emitter_fleet = read_field<int>(j, "emitter_fleet", top);
  inst.mission_speed = read_field<double>(j, "mission_speed", top);
  inst.emitter_speed = read_field<double>(j, "emitter_speed", top);
  inst.coverage_radius = read_field<double>(j, "coverage_radius", top);
  const auto& jobs = detail::require(j, "jobs", top);
  if (!jobs.is_array()) throw ParseError("instance: field 'jobs' must be an array");
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const std::string ctx = "jobs[" + std::to_string(k) + "]";
    Job jb;
    jb.id = read_field<int>(jobs[k], "id", ctx);
    jb.location = read_point(jobs[k], "location", ctx);
    jb.window_start = read_field<int>(jobs[k], "window_start", ctx);
    jb.window_end = read_field<int>(jobs[k], "window_end", ctx);
    jb.workload = read_field<int>(jobs[k], "workload", ctx);
    inst.jobs.push_back(jb);
  }
  const auto& spots = detail::require(j, "spots", top);
  if (!spots.is_array()) throw ParseError("instance: field 'spots' must be an array");
  for (std::size_t k = 0; k < spots.size(); ++k) {
    const std::string ctx = "spots[" + std::to_string(k) + "]";
    inst.spots.push_back({read_field<int>(spots[k], "id", ctx), read_point(spots[k], "location", ctx)});
  }
  inst.finalize();
  return inst;
}

inline std::string dump_instance(const Instance& inst) { return to_json(inst).dump(2) + "\n"; }

inline Instance parse_instance(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed instance document: ") + e.what());
  }
  return from_json(j);
}

inline void save(const Instance& inst, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << dump_instance(inst);
}

inline Instance load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_instance(ss.str());
}

}  // namespace dcg
