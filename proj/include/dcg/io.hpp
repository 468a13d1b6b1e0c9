#pragma once

// Plan documents (JSON), metrics tables (CSV) and iteration logs (JSON lines).
// The formats are described in docs/output_formats.md.

#include "baselines.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace dcg {

/// Engine details attached to a run; absent for baselines.
struct EngineSummary {
  double lp_bound = 0.0;
  bool certified = false;
  double certificate_mission_rc = 0.0;
  double certificate_emitter_rc = 0.0;
  int iterations = 0;
  int columns_generated = 0;
  bool integer_optimal = false;
  int fractional_before = 0;
  int fractional_after = 0;
  int min_emitters = -1;  ///< fleet-min mode only
};

inline EngineSummary summarize(const DcgResult& r) {
  EngineSummary s;
  s.lp_bound = r.lp_bound;
  s.certified = r.certified;
  s.certificate_mission_rc = r.certificate_mission_rc;
  s.certificate_emitter_rc = r.certificate_emitter_rc;
  s.iterations = r.iterations;
  s.columns_generated = r.columns_generated;
  s.integer_optimal = r.integer_optimal;
  s.fractional_before = r.fractional_before;
  s.fractional_after = r.fractional_after;
  return s;
}

/// One solver run on one instance.
struct RunRecord {
  std::string instance;  ///< file name or generator cell label
  std::uint64_t seed = 0;
  BaselinePlan plan;
  double wall_seconds = 0.0;
  std::optional<EngineSummary> engine;
};

// ---------------------------------------------------------------------------
// Plan documents.

namespace detail {

/// Finite numbers as JSON numbers, non-finite ones as null.
inline nlohmann::ordered_json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

}  // namespace detail

inline nlohmann::ordered_json plan_to_json(const RunRecord& run) {
  nlohmann::ordered_json j;
  j["format"] = "dcg-plan";
  j["version"] = 1;
  j["strategy"] = run.plan.strategy;
  j["feasible"] = run.plan.feasible;
  if (!run.plan.message.empty()) j["message"] = run.plan.message;
  const PlanMetrics& m = run.plan.metrics;
  j["metrics"] = {{"objective", m.objective},
                  {"mission_distance", m.mission_distance},
                  {"emitter_distance", m.emitter_distance},
                  {"distance_ratio", detail::number_or_null(m.distance_ratio)},
                  {"mission_vehicles", m.mission_vehicles},
                  {"emitter_vehicles", m.emitter_vehicles},
                  {"coverage_locations", m.coverage_locations}};
  if (run.engine) {
    const EngineSummary& e = *run.engine;
    j["engine"] = {{"lp_bound", e.lp_bound},
                   {"certified", e.certified},
                   {"certificate_mission_rc", e.certificate_mission_rc},
                   {"certificate_emitter_rc", e.certificate_emitter_rc},
                   {"iterations", e.iterations},
                   {"columns_generated", e.columns_generated},
                   {"integer_optimal", e.integer_optimal},
                   {"fractional_before", e.fractional_before},
                   {"fractional_after", e.fractional_after}};
    if (e.min_emitters >= 0) j["engine"]["min_emitters"] = e.min_emitters;
  }
  auto& missions = j["missions"] = nlohmann::ordered_json::array();
  for (const auto& q : run.plan.missions) {
    auto visits = nlohmann::ordered_json::array();
    for (const Visit& v : q.visits)
      visits.push_back({{"job", v.job}, {"work_start", v.work_start}, {"work_end", v.work_end}});
    missions.push_back({{"cost", q.cost}, {"visits", std::move(visits)}});
  }
  auto& emitters = j["emitters"] = nlohmann::ordered_json::array();
  for (const auto& p : run.plan.emitters) {
    auto stays = nlohmann::ordered_json::array();
    for (const Stay& s : p.stays) stays.push_back({{"spot", s.spot}, {"arrive", s.arrive}, {"depart", s.depart}});
    emitters.push_back({{"cost", p.cost}, {"stays", std::move(stays)}});
  }
  return j;
}

inline std::string dump_plan(const RunRecord& run) { return plan_to_json(run).dump(2) + "\n"; }

/// Routes read back from a plan document. Costs are taken from the file so
/// that validation can detect inconsistent ones.
struct PlanDocument {
  std::string strategy;
  std::vector<MissionPath> missions;
  std::vector<EmittingPath> emitters;
};

inline PlanDocument parse_plan(const std::string& text) {
  using detail::read_field;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed plan document: ") + e.what());
  }
  PlanDocument doc;
  doc.strategy = read_field<std::string>(j, "strategy", "plan");
  const auto& missions = detail::require(j, "missions", std::string("plan"));
  const auto& emitters = detail::require(j, "emitters", std::string("plan"));
  if (!missions.is_array() || !emitters.is_array()) throw ParseError("plan: missions and emitters must be arrays");
  for (std::size_t k = 0; k < missions.size(); ++k) {
    const std::string ctx = "missions[" + std::to_string(k) + "]";
    MissionPath q;
    q.cost = read_field<double>(missions[k], "cost", ctx);
    for (const auto& v : detail::require(missions[k], "visits", ctx))
      q.visits.push_back({read_field<int>(v, "job", ctx), read_field<int>(v, "work_start", ctx),
                          read_field<int>(v, "work_end", ctx)});
    doc.missions.push_back(std::move(q));
  }
  for (std::size_t k = 0; k < emitters.size(); ++k) {
    const std::string ctx = "emitters[" + std::to_string(k) + "]";
    EmittingPath p;
    p.cost = read_field<double>(emitters[k], "cost", ctx);
    for (const auto& s : detail::require(emitters[k], "stays", ctx))
      p.stays.push_back({read_field<int>(s, "spot", ctx), read_field<int>(s, "arrive", ctx),
                         read_field<int>(s, "depart", ctx)});
    doc.emitters.push_back(std::move(p));
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Metrics table.

namespace detail {

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

/// Quotes a field when it contains a delimiter, quote or line break.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string metrics_header() {
  return "instance,strategy,seed,feasible,objective,mission_distance,emitter_distance,distance_ratio,"
         "mission_vehicles,emitter_vehicles,coverage_locations,wall_seconds,lp_bound,iterations,certified,"
         "integer_optimal,fractional_before,fractional_after,min_emitters,message";
}

inline std::string metrics_row(const RunRecord& run) {
  using detail::format_number;
  const PlanMetrics& m = run.plan.metrics;
  std::ostringstream os;
  os << detail::csv_field(run.instance) << ',' << run.plan.strategy << ',' << run.seed << ','
     << (run.plan.feasible ? 1 : 0) << ',' << format_number(m.objective) << ',' << format_number(m.mission_distance)
     << ',' << format_number(m.emitter_distance) << ',' << format_number(m.distance_ratio) << ','
     << m.mission_vehicles << ',' << m.emitter_vehicles << ',' << m.coverage_locations << ','
     << format_number(run.wall_seconds) << ',';
  if (run.engine) {
    const EngineSummary& e = *run.engine;
    os << format_number(e.lp_bound) << ',' << e.iterations << ',' << (e.certified ? 1 : 0) << ','
       << (e.integer_optimal ? 1 : 0) << ',' << e.fractional_before << ',' << e.fractional_after << ',';
    if (e.min_emitters >= 0) os << e.min_emitters;
  } else {
    os << ",,,,,,";
  }
  os << ',' << detail::csv_field(run.plan.message);
  return os.str();
}

// ---------------------------------------------------------------------------
// Iteration log.

inline std::string iteration_log_line(const IterationLog& e) {
  nlohmann::ordered_json j;
  j["iteration"] = e.iteration;
  j["phase"] = e.phase;
  j["lp_objective"] = e.lp_objective;
  j["missions_added"] = e.missions_added;
  j["emitters_added"] = e.emitters_added;
  j["min_mission_rc"] = e.min_mission_rc;
  j["min_emitter_rc"] = e.min_emitter_rc;
  j["xi_sum"] = e.xi_sum;
  j["xi_positive"] = e.xi_positive;
  return j.dump();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << text;
}

inline std::string read_text(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace dcg
