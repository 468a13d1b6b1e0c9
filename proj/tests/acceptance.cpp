// Acceptance checks 1-10. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails. Arguments select a subset, e.g.
// `acceptance 1 2 9`; criterion 8 also runs 1, 5 and 6 since it audits them.

#include <dcg/dcg.hpp>

#include <algorithm>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "fixtures.hpp"

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

/// Certificate audit of one engine run, shared by criterion 8.
struct CertificateAudit {
  int runs = 0;
  int certified = 0;
  int recheck_ok = 0;
  double worst_rc = 0.0;
};

CertificateAudit g_audit;

std::string fmt(double v, int digits = 4) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

/// Records the run's certificate and re-prices with unpruned emitter search
/// against the certifying duals, independently of the engine's own pass.
void audit(const dcg::Instance& inst, const dcg::DcgResult& r) {
  ++g_audit.runs;
  const bool own = r.certified && r.certificate_mission_rc >= -1e-6 && r.certificate_emitter_rc >= -1e-6;
  g_audit.certified += own ? 1 : 0;
  if (!r.certified) return;
  const double mission = dcg::price_mission(inst, r.certificate_duals).best_reduced_cost;
  const double emitter =
      dcg::price_emitting(inst, r.certificate_duals, dcg::unrestricted_windows(inst)).best_reduced_cost;
  const double worst = std::min(mission, emitter);
  g_audit.worst_rc = std::min(g_audit.worst_rc, worst);
  g_audit.recheck_ok += worst >= -1e-6 ? 1 : 0;
}

dcg::Instance desk(std::uint64_t seed, int jobs, int clusters = 5, double cluster_radius = 25.0,
                   double coverage_radius = 50.0) {
  dcg::GeneratorConfig g;
  g.num_jobs = jobs;
  g.num_clusters = clusters;
  g.cluster_radius = cluster_radius;
  g.coverage_radius = coverage_radius;
  g.seed = seed;
  return dcg::generate(g);
}

double relative_gap(const dcg::DcgResult& r) { return (r.objective - r.lp_bound) / std::max(1e-9, r.lp_bound); }

// ---------------------------------------------------------------------------

Outcome oracle_equivalence() {
  int match = 0, total = 0;
  double worst = 0.0;
  std::string misses;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const int jobs = 2 + static_cast<int>(seed % 3);
    const auto inst = fixtures::tiny(seed, jobs, 15);
    const auto oracle = dcg::oracle::exhaustive_joint(inst);
    const auto r = dcg::run(inst);
    audit(inst, r);
    ++total;
    const double diff = std::abs(r.objective - oracle.optimum);
    worst = std::max(worst, diff);
    if (r.feasible && oracle.feasible && diff <= 1e-6)
      ++match;
    else
      misses += " seed" + std::to_string(seed);
  }
  return {match == total, std::to_string(match) + "/" + std::to_string(total) + " seeds equal the oracle optimum, max |diff| " +
                              fmt(worst) + (misses.empty() ? "" : ", mismatches:" + misses)};
}

Outcome relaxation_chain() {
  int holds = 0;
  double tightest = 1e300;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto inst = fixtures::tiny(seed, 2 + static_cast<int>(seed % 2), 15);
    const double explicit_lp = dcg::oracle::explicit_lp_value(inst);
    const double sp_lp = dcg::oracle::exhaustive_joint(inst).sp_lp_value;
    holds += explicit_lp <= sp_lp + 1e-6 ? 1 : 0;
    tightest = std::min(tightest, sp_lp - explicit_lp);
  }
  // One job, workload 4 in a five-period window, its only spot 30 away.
  dcg::Instance inst;
  inst.area = {100.0, 100.0};
  inst.depot = {0.0, 0.0};
  inst.horizon = 18;
  inst.mission_fleet = 1;
  inst.emitter_fleet = 1;
  inst.mission_speed = 10.0;
  inst.emitter_speed = 10.0;
  inst.coverage_radius = 20.0;
  inst.jobs = {{0, {30.0, 40.0}, 6, 10, 4}};
  inst.spots = {{0, {30.0, 30.0}}};
  inst.finalize();
  const double explicit_lp = dcg::oracle::explicit_lp_value(inst);
  const double sp_lp = dcg::oracle::exhaustive_joint(inst).sp_lp_value;
  const bool strict = explicit_lp < sp_lp - 1e-6;
  return {holds == 25 && strict, std::to_string(holds) + "/25 seeds satisfy explicit LP <= set-partitioning LP; fractional instance " +
                                     fmt(explicit_lp, 8) + " < " + fmt(sp_lp, 8) + (strict ? "" : " (not strict)")};
}

Outcome pruning_exactness() {
  int exact = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto inst = fixtures::tiny(seed, 3 + static_cast<int>(seed % 2), 15);
    const auto duals = fixtures::random_duals(inst, seed + 1000);
    const double full = dcg::price_emitting(inst, duals, dcg::unrestricted_windows(inst)).best_reduced_cost;
    const double input = dcg::price_emitting(inst, duals, dcg::input_based_windows(inst)).best_reduced_cost;
    const double dual = dcg::price_emitting(inst, duals, dcg::dual_windows(inst, duals)).best_reduced_cost;
    const double diff = std::max(std::abs(full - input), std::abs(full - dual));
    worst = std::max(worst, diff);
    exact += diff <= 1e-9 ? 1 : 0;
  }
  return {exact == 25, std::to_string(exact) + "/25 seeds: input-based and dual-based minima equal the unpruned minimum, max |diff| " +
                           fmt(worst)};
}

Outcome dominance_exactness() {
  int exact = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const int jobs = 6 + static_cast<int>(seed % 3);
    const auto inst = fixtures::tiny(seed, jobs, 20);
    const auto duals = fixtures::random_duals(inst, seed + 2000);
    dcg::MissionPricingOptions on, off;
    off.dominance = false;
    const double a = dcg::price_mission(inst, duals, on).best_reduced_cost;
    const double b = dcg::price_mission(inst, duals, off).best_reduced_cost;
    worst = std::max(worst, std::abs(a - b));
    exact += std::abs(a - b) <= 1e-9 ? 1 : 0;
  }
  return {exact == 25, std::to_string(exact) + "/25 instances (6-8 jobs) give identical minima with and without dominance, max |diff| " +
                           fmt(worst)};
}

Outcome stem_and_blender() {
  int integral = 0, within = 0;
  std::vector<double> gaps;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int jobs = 20 + 5 * static_cast<int>(seed % 3);
    const auto inst = desk(seed, jobs);
    dcg::DcgConfig cfg;
    cfg.integer_time_limit = 20.0;
    const auto r = dcg::run(inst, cfg);
    audit(inst, r);
    integral += (r.feasible && r.fractional_after == 0) ? 1 : 0;
    const double gap = relative_gap(r);
    gaps.push_back(gap);
    within += (r.feasible && gap <= 0.01) ? 1 : 0;
  }
  std::sort(gaps.begin(), gaps.end());
  const bool pass = integral == 20 && within >= 16;
  return {pass, std::to_string(integral) + "/20 integral plans; " + std::to_string(within) +
                    "/20 within 1% of the certified LP bound (need 16); median gap " + fmt(100.0 * gaps[10], 3) +
                    "%, max " + fmt(100.0 * gaps.back(), 3) + "%"};
}

Outcome baseline_ordering() {
  double greedy = 0, follow = 0, mission_first = 0, joint = 0;
  int paired = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = desk(seed, 20, 5, 25.0, 50.0);
    dcg::DcgConfig cfg;
    cfg.integer_time_limit = 20.0;
    const auto g = dcg::greedy(inst);
    const auto f = dcg::emitting_follow(inst, cfg);
    const auto m = dcg::mission_emitting(inst, cfg);
    dcg::DcgResult r;
    const auto j = dcg::joint(inst, cfg, &r);
    audit(inst, r);
    if (!(g.feasible && f.feasible && m.feasible && j.feasible)) continue;
    ++paired;
    greedy += g.metrics.objective;
    follow += f.metrics.objective;
    mission_first += m.metrics.objective;
    joint += j.metrics.objective;
  }
  if (paired == 0) return {false, "no seed where all four strategies are feasible"};
  greedy /= paired;
  follow /= paired;
  mission_first /= paired;
  joint /= paired;
  const bool ordered = greedy >= follow && follow >= mission_first && mission_first >= joint;
  const double excess = greedy / joint - 1.0;
  return {ordered && excess >= 0.20 && paired == 20,
          "means over " + std::to_string(paired) + " seeds: greedy " + fmt(greedy, 6) + ", emitting-follow " +
              fmt(follow, 6) + ", mission-emitting " + fmt(mission_first, 6) + ", joint " + fmt(joint, 6) +
              "; greedy exceeds joint by " + fmt(100.0 * excess, 3) + "%"};
}

Outcome mobile_vs_fixed() {
  double mobile = 0, fixed = 0;
  int paired = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = desk(seed, 20, 5, 100.0, 50.0);
    dcg::DcgConfig cfg;
    cfg.integer_time_limit = 5.0;
    const auto fm = dcg::fleet_min(inst, cfg);
    const auto fx = dcg::fixed_emitters(inst, cfg);
    if (fm.min_emitters < 0 || !fx.feasible) continue;
    ++paired;
    mobile += fm.min_emitters;
    fixed += fx.metrics.emitter_vehicles;
  }
  if (paired == 0) return {false, "no seed where both regimes are feasible"};
  mobile /= paired;
  fixed /= paired;
  const double ratio = mobile / fixed;
  return {paired == 20 && mobile < fixed && ratio <= 0.75,
          "mean #EV over " + std::to_string(paired) + " seeds: mobile " + fmt(mobile) + ", fixed " + fmt(fixed) +
              ", ratio " + fmt(ratio, 3)};
}

Outcome certification() {
  const bool pass = g_audit.runs > 0 && g_audit.certified == g_audit.runs && g_audit.recheck_ok == g_audit.runs;
  return {pass, std::to_string(g_audit.certified) + "/" + std::to_string(g_audit.runs) +
                    " runs certified by the engine; " + std::to_string(g_audit.recheck_ok) +
                    " confirmed by unpruned re-pricing, most negative reduced cost " + fmt(g_audit.worst_rc)};
}

Outcome validator_mutations() {
  int stay_total = 0, stay_caught = 0, dup_total = 0, dup_caught = 0;
  for (std::uint64_t seed = 1; seed <= 40 && (stay_total < 25 || dup_total < 25); ++seed) {
    const auto inst = fixtures::tiny(seed, 3 + static_cast<int>(seed % 3), 18);
    const auto r = dcg::run(inst);
    if (!r.feasible || !dcg::validate(inst, r.missions, r.emitters).ok()) continue;
    for (std::size_t p = 0; p < r.emitters.size() && stay_total < 25; ++p) {
      for (std::size_t s = 0; s < r.emitters[p].stays.size() && stay_total < 25; ++s) {
        auto emitters = r.emitters;
        auto stays = emitters[p].stays;
        stays.erase(stays.begin() + static_cast<std::ptrdiff_t>(s));
        emitters[p] = dcg::make_emitting_path(inst, std::move(stays));
        ++stay_total;
        stay_caught += dcg::validate(inst, r.missions, emitters).ok() ? 0 : 1;
      }
    }
    for (std::size_t q = 0; q < r.missions.size() && dup_total < 25; ++q) {
      auto missions = r.missions;
      missions.push_back(missions[q]);
      ++dup_total;
      dup_caught += dcg::validate(inst, missions, r.emitters).ok() ? 0 : 1;
    }
  }
  const int total = stay_total + dup_total, caught = stay_caught + dup_caught;
  return {total == 50 && caught == total, std::to_string(caught) + "/" + std::to_string(total) + " mutations reported (" +
                                              std::to_string(stay_caught) + "/" + std::to_string(stay_total) +
                                              " stay deletions, " + std::to_string(dup_caught) + "/" +
                                              std::to_string(dup_total) + " duplicated missions)"};
}

Outcome scalability() {
  const auto inst = desk(1, 40, 5, 20.0, 50.0);
  dcg::DcgConfig cfg;
  cfg.integer_time_limit = 600.0;
  const dcg::detail::Stopwatch sw;
  const auto r = dcg::run(inst, cfg);
  const double seconds = sw.seconds();
  const bool valid = r.feasible && dcg::validate(inst, r.missions, r.emitters).ok();
  return {r.certified && valid && r.fractional_after == 0 && seconds < 1800.0,
          std::string(r.certified ? "certified" : "not certified") + " LP bound " + fmt(r.lp_bound, 8) +
              ", integral plan " + fmt(r.objective, 8) + (valid ? "" : " (invalid)") + " in " + fmt(seconds, 4) +
              " s (" + std::to_string(r.iterations) + " iterations)"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"relaxation chain", relaxation_chain},
      {"pruning exactness", pruning_exactness},
      {"dominance exactness", dominance_exactness},
      {"stem-and-blender integrality and gap", stem_and_blender},
      {"baseline ordering", baseline_ordering},
      {"mobile vs fixed emitters", mobile_vs_fixed},
      {"certification", certification},
      {"validator mutations", validator_mutations},
      {"scalability", scalability},
  };
  std::set<int> selected;
  for (int k = 1; k < argc; ++k) selected.insert(std::atoi(argv[k]));
  if (selected.empty())
    for (int k = 1; k <= 10; ++k) selected.insert(k);
  if (selected.count(8)) selected.insert({1, 5, 6});

  int failures = 0;
  for (int id : selected) {
    if (id < 1 || id > 10) continue;
    const auto& [name, check] = criteria[static_cast<std::size_t>(id - 1)];
    const dcg::detail::Stopwatch sw;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("criterion %2d %s  %s: %s [%.1f s]\n", id, o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(),
                sw.seconds());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
