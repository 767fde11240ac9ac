#pragma once

#include <algorithm>
#include <vector>

#include "hres/optimize/algorithm.hpp"

namespace hres::opt {

/// Global-best particle swarm with inertia weight decaying linearly from
/// w_max to w_min and per-dimension velocity clamping.
class ParticleSwarm final : public Algorithm {
 public:
  static ParamMap defaults() {
    return {{"w_max", 0.9}, {"w_min", 0.4}, {"c1", 2.0}, {"c2", 2.0}, {"v_max_fraction", 0.2}};
  }
  explicit ParticleSwarm(const ParamMap& overrides) : p_(defaults(), overrides, "PSO") {}

  void initialize(SearchContext& ctx, Population& pop) override {
    velocity_.assign(pop.size(), std::vector<double>(ctx.dim(), 0.0));
    pbest_x_ = pop.x;
    pbest_f_ = pop.f;
  }

  void step(SearchContext& ctx, Population& pop, int t) override {
    const auto& space = ctx.space();
    const int iters = ctx.iterations();
    const double w = iters > 1 ? p_["w_max"] - (p_["w_max"] - p_["w_min"]) * (t - 1) / (iters - 1) : p_["w_max"];
    const std::vector<double> gbest = ctx.best_position();
    for (std::size_t i = 0; i < pop.size(); ++i) {
      auto& x = pop.x[i];
      auto& v = velocity_[i];
      for (std::size_t j = 0; j < x.size(); ++j) {
        const double vmax = p_["v_max_fraction"] * (space.upper[j] - space.lower[j]);
        const double r1 = ctx.rng().uniform();
        const double r2 = ctx.rng().uniform();
        v[j] = w * v[j] + p_["c1"] * r1 * (pbest_x_[i][j] - x[j]) + p_["c2"] * r2 * (gbest[j] - x[j]);
        v[j] = std::clamp(v[j], -vmax, vmax);
        x[j] += v[j];
      }
    }
    // Synchronous update: the swarm moves against the best known at the start of the step.
    for (std::size_t i = 0; i < pop.size(); ++i) {
      pop.f[i] = ctx.evaluate(pop.x[i]);
      if (pop.f[i] < pbest_f_[i]) {
        pbest_f_[i] = pop.f[i];
        pbest_x_[i] = pop.x[i];
      }
    }
  }

 private:
  Params p_;
  std::vector<std::vector<double>> velocity_;
  std::vector<std::vector<double>> pbest_x_;
  std::vector<double> pbest_f_;
};

}  // namespace hres::opt
