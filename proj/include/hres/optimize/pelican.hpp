#pragma once

#include <vector>

#include "hres/optimize/algorithm.hpp"

namespace hres::opt {

/// Pelican optimization. Phase one picks a prey among the flock's current
/// positions and moves toward it when the prey scores better, away from it
/// otherwise; phase two is a local
/// surface sweep whose neighbourhood R (1 - t/T) shrinks over the run. Both
/// phases accept a move only if it improves the member.
class Pelican final : public Algorithm {
 public:
  static ParamMap defaults() { return {{"R", 0.2}}; }
  explicit Pelican(const ParamMap& overrides) : p_(defaults(), overrides, "POA") {}

  void step(SearchContext& ctx, Population& pop, int t) override {
    auto& rng = ctx.rng();
    const std::size_t dim = ctx.dim();
    const double shrink = p_["R"] * (1.0 - static_cast<double>(t) / ctx.iterations());

    for (std::size_t i = 0; i < pop.size(); ++i) {
      const std::size_t k = rng.index(0, pop.size() - 1);
      const std::vector<double> prey = pop.x[k];
      const double prey_f = pop.f[k];
      std::vector<double> next(dim);
      const auto& x = pop.x[i];
      const double intensity = rng.one_or_two();
      const double r = rng.uniform();
      for (std::size_t j = 0; j < dim; ++j)
        next[j] = prey_f < pop.f[i] ? x[j] + r * (prey[j] - intensity * x[j]) : x[j] + r * (x[j] - prey[j]);
      ctx.greedy_replace(pop, i, std::move(next));

      std::vector<double> local(dim);
      for (std::size_t j = 0; j < dim; ++j)
        local[j] = pop.x[i][j] + shrink * (2.0 * rng.uniform() - 1.0) * pop.x[i][j];
      ctx.greedy_replace(pop, i, std::move(local));
    }
  }

 private:
  Params p_;
};

}  // namespace hres::opt
