#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace hres::opt {

/// Per-run random stream. Every algorithm draws only from the Rng of its run.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return unit_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit_(engine_); }
  double normal() { return normal_(engine_); }

  /// Uniform integer in [lo, hi].
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }

  /// 1 or 2 with equal probability: the intensity factor shared by the
  /// pelican, zebra and osprey updates.
  double one_or_two() { return uniform() < 0.5 ? 1.0 : 2.0; }

  /// Mantegna's algorithm for a Levy-stable step with index beta.
  double levy(double beta = 1.5) {
    const double sigma = std::pow(std::tgamma(1.0 + beta) * std::sin(std::numbers::pi * beta / 2.0) /
                                      (std::tgamma((1.0 + beta) / 2.0) * beta * std::pow(2.0, (beta - 1.0) / 2.0)),
                                  1.0 / beta);
    const double u = normal() * sigma;
    const double v = normal();
    return u / std::pow(std::abs(v), 1.0 / beta);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace hres::opt
