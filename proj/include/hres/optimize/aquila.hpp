#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "hres/optimize/algorithm.hpp"

namespace hres::opt {

/// Aquila optimizer. The first two thirds of the run explore (high soar with
/// vertical stoop, or contour flight with a Levy glide); the last third
/// exploits (low flight with slow descent, or walk-and-grab). Each new
/// position replaces its parent only if it is better.
class Aquila final : public Algorithm {
 public:
  static ParamMap defaults() {
    return {{"alpha", 0.1}, {"delta", 0.1}, {"spiral_u", 0.00565}, {"spiral_r1", 10.0}, {"spiral_omega", 0.005},
            {"levy_beta", 1.5}, {"levy_scale", 0.01}};
  }
  explicit Aquila(const ParamMap& overrides) : p_(defaults(), overrides, "AO") {}

  void step(SearchContext& ctx, Population& pop, int t) override {
    auto& rng = ctx.rng();
    const auto& space = ctx.space();
    const std::size_t dim = ctx.dim();
    const double big_t = ctx.iterations();
    const double progress = t / big_t;

    std::vector<double> mean(dim, 0.0);
    for (const auto& x : pop.x)
      for (std::size_t j = 0; j < dim; ++j) mean[j] += x[j] / static_cast<double>(pop.size());

    // Spiral shape of the contour flight.
    std::vector<double> spiral(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      const double d1 = static_cast<double>(j + 1);
      const double r = p_["spiral_r1"] + p_["spiral_u"] * d1;
      const double theta = -p_["spiral_omega"] * d1 + 3.0 * std::numbers::pi / 2.0;
      spiral[j] = r * std::cos(theta) - r * std::sin(theta);  // y - x
    }
    const double qf = big_t > 1.0 ? std::pow(static_cast<double>(t), (2.0 * rng.uniform() - 1.0) /
                                                                         ((1.0 - big_t) * (1.0 - big_t)))
                                  : 1.0;
    const double g1 = 2.0 * rng.uniform() - 1.0;
    const double g2 = 2.0 * (1.0 - progress);

    auto levy = [&] { return p_["levy_scale"] * rng.levy(p_["levy_beta"]); };

    for (std::size_t i = 0; i < pop.size(); ++i) {
      const std::vector<double>& best = ctx.best_position();
      const auto& x = pop.x[i];
      std::vector<double> next(dim);
      if (t <= (2.0 / 3.0) * big_t) {
        if (rng.uniform() < 0.5) {
          const double r = rng.uniform();
          for (std::size_t j = 0; j < dim; ++j) next[j] = best[j] * (1.0 - progress) + (mean[j] - best[j]) * r;
        } else {
          const auto& other = pop.x[rng.index(0, pop.size() - 1)];
          const double r = rng.uniform();
          for (std::size_t j = 0; j < dim; ++j) next[j] = best[j] * levy() + other[j] + spiral[j] * r;
        }
      } else {
        if (rng.uniform() < 0.5) {
          const double r = rng.uniform();
          for (std::size_t j = 0; j < dim; ++j) {
            const double span = space.upper[j] - space.lower[j];
            next[j] = (best[j] - mean[j]) * p_["alpha"] - r +
                      (span * rng.uniform() + space.lower[j]) * p_["delta"];
          }
        } else {
          const double r1 = rng.uniform();
          const double r2 = rng.uniform();
          for (std::size_t j = 0; j < dim; ++j) next[j] = qf * best[j] - g1 * x[j] * r1 - g2 * levy() + r2 * g1;
        }
      }
      clamp_to_box(space, next);
      ctx.greedy_replace(pop, i, std::move(next));
    }
  }

 private:
  Params p_;
};

}  // namespace hres::opt
