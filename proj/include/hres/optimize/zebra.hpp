#pragma once

#include <vector>

#include "hres/optimize/algorithm.hpp"

namespace hres::opt {

/// Zebra optimization: foraging toward the pioneer (best) zebra, then a
/// defense phase that either escapes a lion with a small shrinking local
/// move or confronts another predator by moving toward a random herd member.
class Zebra final : public Algorithm {
 public:
  static ParamMap defaults() { return {{"R", 0.01}, {"escape_probability", 0.5}}; }
  explicit Zebra(const ParamMap& overrides) : p_(defaults(), overrides, "ZOA") {}

  void step(SearchContext& ctx, Population& pop, int t) override {
    auto& rng = ctx.rng();
    const std::size_t dim = ctx.dim();
    const double shrink = 1.0 - static_cast<double>(t) / ctx.iterations();

    const std::vector<double> pioneer = pop.x[best_index(pop)];
    for (std::size_t i = 0; i < pop.size(); ++i) {
      const double intensity = rng.one_or_two();
      std::vector<double> next(dim);
      for (std::size_t j = 0; j < dim; ++j) next[j] = pop.x[i][j] + rng.uniform() * (pioneer[j] - intensity * pop.x[i][j]);
      ctx.greedy_replace(pop, i, std::move(next));
    }

    for (std::size_t i = 0; i < pop.size(); ++i) {
      std::vector<double> next(dim);
      const auto& x = pop.x[i];
      if (rng.uniform() < p_["escape_probability"]) {
        for (std::size_t j = 0; j < dim; ++j) next[j] = x[j] + p_["R"] * (2.0 * rng.uniform() - 1.0) * shrink * x[j];
      } else {
        const auto& attacked = pop.x[rng.index(0, pop.size() - 1)];
        const double intensity = rng.one_or_two();
        for (std::size_t j = 0; j < dim; ++j) next[j] = x[j] + rng.uniform() * (attacked[j] - intensity * x[j]);
      }
      ctx.greedy_replace(pop, i, std::move(next));
    }
  }

 private:
  Params p_;
};

}  // namespace hres::opt
