#pragma once

// Feasibility check of a complete plan against the instance.

#include "paths.hpp"

#include <string>
#include <vector>

namespace dcg {

struct Violation {
  std::string kind;  ///< partition, mission_fleet, emitter_fleet, mission_path, emitting_path, coverage
  JobId job = -1;
  TimeStep time = -1;
  int path = -1;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const {
    std::string s;
    for (const auto& v : violations) {
      s += v.kind;
      if (v.job >= 0) s += " job=" + std::to_string(v.job);
      if (v.time >= 0) s += " t=" + std::to_string(v.time);
      if (v.path >= 0) s += " path=" + std::to_string(v.path);
      if (!v.detail.empty()) s += ": " + v.detail;
      s += "\n";
    }
    return s;
  }
};

inline ValidationReport validate(const Instance& inst, const std::vector<MissionPath>& missions,
                                 const std::vector<EmittingPath>& emitters) {
  ValidationReport rep;
  std::vector<int> visits(static_cast<std::size_t>(inst.num_jobs()), 0);
  for (std::size_t q = 0; q < missions.size(); ++q) {
    for (const auto& e : mission_path_errors(inst, missions[q]))
      rep.violations.push_back({"mission_path", -1, -1, static_cast<int>(q), e});
    for (const Visit& v : missions[q].visits)
      if (v.job >= 0 && v.job < inst.num_jobs()) ++visits[static_cast<std::size_t>(v.job)];
  }
  for (std::size_t p = 0; p < emitters.size(); ++p)
    for (const auto& e : emitting_path_errors(inst, emitters[p]))
      rep.violations.push_back({"emitting_path", -1, -1, static_cast<int>(p), e});
  for (int i = 0; i < inst.num_jobs(); ++i)
    if (visits[static_cast<std::size_t>(i)] != 1)
      rep.violations.push_back({"partition", i, -1, -1,
                                "visited " + std::to_string(visits[static_cast<std::size_t>(i)]) + " times"});
  if (static_cast<int>(missions.size()) > inst.mission_fleet)
    rep.violations.push_back({"mission_fleet", -1, -1, -1,
                              std::to_string(missions.size()) + " > " + std::to_string(inst.mission_fleet)});
  if (static_cast<int>(emitters.size()) > inst.emitter_fleet)
    rep.violations.push_back({"emitter_fleet", -1, -1, -1,
                              std::to_string(emitters.size()) + " > " + std::to_string(inst.emitter_fleet)});
  for (std::size_t q = 0; q < missions.size(); ++q)
    for (const Visit& v : missions[q].visits) {
      if (v.job < 0 || v.job >= inst.num_jobs()) continue;
      for (TimeStep t = v.work_start; t <= v.work_end; ++t) {
        bool covered = false;
        for (const auto& p : emitters)
          for (const Stay& s : p.stays)
            covered = covered || (s.arrive <= t && t <= s.depart && s.spot >= 0 && s.spot < inst.num_spots() &&
                                  inst.covers(s.spot, v.job));
        if (!covered) rep.violations.push_back({"coverage", v.job, t, static_cast<int>(q), "work without coverage"});
      }
    }
  return rep;
}

}  // namespace dcg
