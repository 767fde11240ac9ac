// A scaled-down sizing problem whose integer lattice is small enough to
// enumerate, so optimizer results can be checked against the true minimum.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <vector>

#include "hres/problem.hpp"

namespace mini {

// n_pv 1..20, n_wg 1..6, n_bat 1..12, tilt 28..30, h 11..12, n_bio 1..2:
// 20 * 6 * 12 * 3 * 2 * 2 = 17,280 lattice points.
inline hres::opt::SearchSpace space() {
  return {{1, 1, 1, 28, 11, 1}, {20, 6, 12, 30, 12, 2}, {true, true, true, true, true, true}};
}

inline hres::ScenarioData scenario() {
  hres::SynthParams p;
  for (double& w : p.load_profile) w *= 0.18;
  p.waste_per_day_kg = 40.0;
  return hres::synth_scenario({}, p, 21);
}

/// Every lattice fitness computed once; the objective is a table lookup, so
/// optimizers see exactly the values the enumeration saw.
class Instance {
 public:
  Instance() : problem_(scenario(), {}, {}, {}, space()) {
    const auto s = problem_.space();
    for (std::size_t i = 0; i < 6; ++i) {
      lo_[i] = static_cast<long>(s.lower[i]);
      extent_[i] = static_cast<long>(s.upper[i]) - lo_[i] + 1;
    }
    std::size_t n = 1;
    for (long e : extent_) n *= static_cast<std::size_t>(e);
    table_.resize(n);
    std::vector<double> x(6);
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t rest = k;
      for (std::size_t i = 0; i < 6; ++i) {
        x[i] = static_cast<double>(lo_[i] + static_cast<long>(rest % static_cast<std::size_t>(extent_[i])));
        rest /= static_cast<std::size_t>(extent_[i]);
      }
      table_[k] = problem_(x);
    }
    best_ = *std::min_element(table_.begin(), table_.end());
  }

  std::size_t lattice_size() const { return table_.size(); }
  double brute_force_minimum() const { return best_; }
  const hres::HresProblem& problem() const { return problem_; }
  const hres::opt::SearchSpace& search_space() const { return problem_.space(); }

  double operator()(std::span<const double> x) const { return table_[index(x)]; }

  hres::opt::Objective objective() const {
    return [this](std::span<const double> x) { return (*this)(x); };
  }

 private:
  std::size_t index(std::span<const double> x) const {
    std::size_t k = 0, stride = 1;
    for (std::size_t i = 0; i < 6; ++i) {
      const long v = std::lround(x[i]) - lo_[i];
      k += static_cast<std::size_t>(v) * stride;
      stride *= static_cast<std::size_t>(extent_[i]);
    }
    return k;
  }

  hres::HresProblem problem_;
  long lo_[6]{};
  long extent_[6]{};
  std::vector<double> table_;
  double best_ = std::numeric_limits<double>::infinity();
};

}  // namespace mini
