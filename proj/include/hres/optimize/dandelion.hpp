#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "hres/optimize/algorithm.hpp"

namespace hres::opt {

/// Dandelion optimizer: rising (wind-borne spiral drift toward a random
/// point in clear weather, contraction in rain), descending (Brownian drift
/// relative to the population mean) and landing (Levy step around the
/// elite). The population is replaced wholesale every generation; the elite
/// is the best position found so far.
class Dandelion final : public Algorithm {
 public:
  static ParamMap defaults() { return {{"weather_threshold", 1.5}, {"levy_beta", 1.5}}; }
  explicit Dandelion(const ParamMap& overrides) : p_(defaults(), overrides, "DOA") {}

  void step(SearchContext& ctx, Population& pop, int t) override {
    auto& rng = ctx.rng();
    const auto& space = ctx.space();
    const std::size_t n = pop.size();
    const std::size_t dim = ctx.dim();
    const double big_t = ctx.iterations();
    const double td = t;

    const double alpha = rng.uniform() * (td * td / (big_t * big_t) - 2.0 * td / big_t + 1.0);
    double k = 1.0 - rng.uniform();
    if (big_t > 1.0) {
      const double a = 1.0 / (big_t * big_t - 2.0 * big_t + 1.0);
      const double b = -2.0 * a;
      const double c = 1.0 - a - b;
      k = 1.0 - rng.uniform() * (c + a * td * td + b * td);
    }

    std::vector<std::vector<double>> beta(n, std::vector<double>(dim));
    for (auto& row : beta)
      for (double& v : row) v = rng.normal();

    // Rising
    if (rng.normal() < p_["weather_threshold"]) {
      for (auto& x : pop.x) {
        const double theta = (2.0 * rng.uniform() - 1.0) * std::numbers::pi;
        const double row = 1.0 / std::exp(theta);
        const double vx = row * std::cos(theta);
        const double vy = row * std::sin(theta);
        for (std::size_t j = 0; j < dim; ++j) {
          const double lambda = std::abs(rng.normal());
          const double target = rng.uniform(space.lower[j], space.upper[j]);
          x[j] += alpha * vx * vy * lognormal_pdf(lambda) * (target - x[j]);
        }
        clamp_to_box(space, x);
      }
    } else {
      for (auto& x : pop.x) {
        for (double& v : x) v *= k;
        clamp_to_box(space, x);
      }
    }

    // Descending
    std::vector<double> mean(dim, 0.0);
    for (const auto& x : pop.x)
      for (std::size_t j = 0; j < dim; ++j) mean[j] += x[j] / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto& x = pop.x[i];
      for (std::size_t j = 0; j < dim; ++j) {
        const double ba = beta[i][j] * alpha;
        x[j] = x[j] - ba * (mean[j] - ba * x[j]);
      }
      clamp_to_box(space, x);
    }

    // Landing
    const std::vector<double> elite = ctx.best_position();
    for (auto& x : pop.x) {
      for (std::size_t j = 0; j < dim; ++j)
        x[j] = elite[j] + rng.levy(p_["levy_beta"]) * alpha * (elite[j] - x[j] * (2.0 * td / big_t));
      clamp_to_box(space, x);
    }
    ctx.evaluate_all(pop);
  }

 private:
  static double lognormal_pdf(double x) {
    if (!(x > 0.0)) return 0.0;
    const double l = std::log(x);
    return std::exp(-0.5 * l * l) / (x * std::sqrt(2.0 * std::numbers::pi));
  }

  Params p_;
};

}  // namespace hres::opt
