#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "hres/optimize/algorithm.hpp"

namespace hres::opt {

/// Gazelle optimization. Each generation grazes (Brownian steps toward the
/// elite) or flees (Levy steps; the half of the herd that has spotted the
/// predator follows it with a cumulative-effect factor CF), then the predator
/// success rate PSRs triggers either random relocation or a differential
/// escape. Members keep their previous position when the move is worse.
class Gazelle final : public Algorithm {
 public:
  static ParamMap defaults() { return {{"s", 0.88}, {"psrs", 0.34}, {"levy_scale", 0.05}, {"levy_beta", 1.5}}; }
  explicit Gazelle(const ParamMap& overrides) : p_(defaults(), overrides, "GOA") {}

  void step(SearchContext& ctx, Population& pop, int t) override {
    auto& rng = ctx.rng();
    const auto& space = ctx.space();
    const std::size_t n = pop.size();
    const std::size_t dim = ctx.dim();
    const double progress = static_cast<double>(t) / ctx.iterations();
    const double cf = std::pow(1.0 - progress, 2.0 * progress);
    const double mu = t % 2 == 0 ? -1.0 : 1.0;
    const double s = p_["s"];
    const double psrs = p_["psrs"];

    Population moved = pop;
    const std::vector<double> elite = ctx.best_position();
    for (std::size_t i = 0; i < n; ++i) {
      auto& x = moved.x[i];
      for (std::size_t j = 0; j < dim; ++j) {
        const double rb = rng.normal();
        const double rl = p_["levy_scale"] * rng.levy(p_["levy_beta"]);
        const double big_r = rng.uniform();
        if (rng.uniform() > 0.5) {
          x[j] += s * big_r * rb * (elite[j] - rb * x[j]);
        } else if (i > n / 2) {
          x[j] = elite[j] + s * mu * cf * rb * (rl * elite[j] - x[j]);
        } else {
          x[j] += s * mu * big_r * rl * (elite[j] - rl * x[j]);
        }
      }
      clamp_to_box(space, x);
    }
    ctx.evaluate_all(moved);
    keep_better(pop, moved);

    moved = pop;
    if (rng.uniform() < psrs) {
      for (auto& x : moved.x) {
        for (std::size_t j = 0; j < dim; ++j) {
          if (rng.uniform() < psrs) x[j] += cf * (space.lower[j] + rng.uniform() * (space.upper[j] - space.lower[j]));
        }
        clamp_to_box(space, x);
      }
    } else {
      const double r = rng.uniform();
      const double scale = psrs * (1.0 - r) + r;
      std::vector<std::size_t> p1(n), p2(n);
      std::iota(p1.begin(), p1.end(), 0);
      std::iota(p2.begin(), p2.end(), 0);
      std::shuffle(p1.begin(), p1.end(), rng.engine());
      std::shuffle(p2.begin(), p2.end(), rng.engine());
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < dim; ++j) moved.x[i][j] += scale * (pop.x[p1[i]][j] - pop.x[p2[i]][j]);
        clamp_to_box(space, moved.x[i]);
      }
    }
    ctx.evaluate_all(moved);
    keep_better(pop, moved);
  }

 private:
  static void keep_better(Population& pop, Population& moved) {
    for (std::size_t i = 0; i < pop.size(); ++i) {
      if (moved.f[i] < pop.f[i]) {
        pop.x[i] = std::move(moved.x[i]);
        pop.f[i] = moved.f[i];
      }
    }
  }

  Params p_;
};

}  // namespace hres::opt
