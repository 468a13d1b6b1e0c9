#pragma once

#include <dcg/instance.hpp>
#include <dcg/rmp.hpp>

#include <random>

namespace fixtures {

/// Tiny family: 60x60 area, four corner spots, short horizon.
inline dcg::Instance tiny(std::uint64_t seed, int jobs, int horizon = 15) {
  dcg::GeneratorConfig cfg;
  cfg.area = {60.0, 60.0};
  cfg.mesh_spacing = 60.0;
  cfg.coverage_radius = 45.0;
  cfg.cluster_radius = 30.0;
  cfg.num_clusters = 1;
  cfg.num_jobs = jobs;
  cfg.horizon = horizon;
  cfg.mission_speed = 15.0;
  cfg.emitter_speed = 15.0;
  cfg.windows.min_workload = 1;
  cfg.windows.max_workload = 3;
  cfg.seed = seed;
  return dcg::generate(cfg);
}

/// Random non-negative linking prices inside windows plus random job prices.
inline dcg::DualPrices random_duals(const dcg::Instance& inst, std::uint64_t seed, double density = 0.4,
                                    double pi_scale = 60.0, double xi_scale = 15.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto d = dcg::DualPrices::zero(inst);
  for (const auto& jb : inst.jobs) {
    d.pi[static_cast<std::size_t>(jb.id)] = pi_scale * u(rng);
    for (int t = jb.window_start; t <= jb.window_end; ++t)
      if (u(rng) < density) d.xi[static_cast<std::size_t>(jb.id)][static_cast<std::size_t>(t)] = xi_scale * u(rng);
  }
  d.rho = 5.0 * u(rng);
  d.beta = 5.0 * u(rng);
  return d;
}

}  // namespace fixtures
