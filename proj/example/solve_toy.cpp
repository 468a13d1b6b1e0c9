// Builds a three-job instance by hand, solves it jointly and with the greedy
// baseline, and prints both plans.

#include <dcg/dcg.hpp>

#include <iostream>

namespace {

void print_plan(const dcg::BaselinePlan& plan) {
  std::cout << plan.strategy << ": objective " << plan.metrics.objective << (plan.feasible ? "" : " (infeasible)")
            << "\n";
  for (const auto& q : plan.missions) {
    std::cout << "  mission:";
    for (const auto& v : q.visits) std::cout << " job " << v.job << " [" << v.work_start << "," << v.work_end << "]";
    std::cout << "\n";
  }
  for (const auto& p : plan.emitters) {
    std::cout << "  emitter:";
    for (const auto& s : p.stays) std::cout << " spot " << s.spot << " [" << s.arrive << "," << s.depart << "]";
    std::cout << "\n";
  }
}

}  // namespace

int main() {
  dcg::Instance inst;
  inst.area = {100.0, 100.0};
  inst.depot = {50.0, 10.0};
  inst.horizon = 30;
  inst.mission_fleet = 2;
  inst.emitter_fleet = 2;
  inst.mission_speed = 20.0;
  inst.emitter_speed = 20.0;
  inst.coverage_radius = 30.0;
  inst.jobs = {{0, {20.0, 60.0}, 5, 14, 3}, {1, {40.0, 80.0}, 8, 20, 2}, {2, {80.0, 60.0}, 6, 18, 4}};
  inst.spots = {{0, {30.0, 70.0}}, {1, {70.0, 70.0}}, {2, {50.0, 50.0}}, {3, {90.0, 90.0}}};
  inst.finalize();

  dcg::DcgResult details;
  const auto joint = dcg::joint(inst, {}, &details);
  print_plan(joint);
  std::cout << "  LP bound " << details.lp_bound << (details.certified ? ", certified" : "") << "\n";
  print_plan(dcg::greedy(inst));
  return joint.feasible ? 0 : 1;
}
