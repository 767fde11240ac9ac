#pragma once

#include <vector>

#include "hres/optimize/algorithm.hpp"

namespace hres::opt {

/// Osprey optimization: each member dives at a fish picked from the members
/// that score better than it (always including the best), then carries it
/// to a nearby perch with a step that shrinks as 1/t.
class Osprey final : public Algorithm {
 public:
  static ParamMap defaults() { return {}; }
  explicit Osprey(const ParamMap& overrides) : p_(defaults(), overrides, "OOA") {}

  void step(SearchContext& ctx, Population& pop, int t) override {
    auto& rng = ctx.rng();
    const auto& space = ctx.space();
    const std::size_t dim = ctx.dim();
    for (std::size_t i = 0; i < pop.size(); ++i) {
      const std::size_t best = best_index(pop);
      std::vector<std::size_t> fish{best};
      for (std::size_t k = 0; k < pop.size(); ++k)
        if (k != best && pop.f[k] < pop.f[i]) fish.push_back(k);
      const std::vector<double> target = pop.x[fish[rng.index(0, fish.size() - 1)]];
      const double intensity = rng.one_or_two();
      std::vector<double> next(dim);
      for (std::size_t j = 0; j < dim; ++j) next[j] = pop.x[i][j] + rng.uniform() * (target[j] - intensity * pop.x[i][j]);
      ctx.greedy_replace(pop, i, std::move(next));

      std::vector<double> perch(dim);
      for (std::size_t j = 0; j < dim; ++j)
        perch[j] = pop.x[i][j] + (space.lower[j] + rng.uniform() * (space.upper[j] - space.lower[j])) / t;
      ctx.greedy_replace(pop, i, std::move(perch));
    }
  }

 private:
  Params p_;
};

}  // namespace hres::opt
