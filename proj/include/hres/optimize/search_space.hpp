#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hres/optimize/random.hpp"

namespace hres::opt {

/// Box bounds with an integer lattice on masked dimensions.
struct SearchSpace {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> integer_mask;

  std::size_t dim() const { return lower.size(); }

  void validate() const {
    if (lower.empty()) throw std::invalid_argument("search space has no dimensions");
    if (upper.size() != lower.size() || integer_mask.size() != lower.size())
      throw std::invalid_argument("search space: lower, upper and integer_mask differ in length");
    for (std::size_t i = 0; i < lower.size(); ++i) {
      if (!(std::isfinite(lower[i]) && std::isfinite(upper[i]) && lower[i] < upper[i]))
        throw std::invalid_argument("search space: need finite lower < upper in dimension " + std::to_string(i));
    }
  }

  /// Clamps into the box and snaps masked dimensions to the nearest integer
  /// inside it. A masked dimension whose box holds no integer stays clamped.
  void repair(std::span<double> x) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      double v = x[i];
      if (std::isnan(v)) v = lower[i];
      v = std::clamp(v, lower[i], upper[i]);
      if (integer_mask[i]) {
        const double lo = std::ceil(lower[i]);
        const double hi = std::floor(upper[i]);
        if (lo <= hi) v = std::clamp(std::round(v), lo, hi);
      }
      x[i] = v;
    }
  }

  bool contains(std::span<const double> x) const {
    if (x.size() != dim()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
      if (integer_mask[i] && std::ceil(lower[i]) <= std::floor(upper[i]) && x[i] != std::round(x[i])) return false;
    }
    return true;
  }

  std::vector<double> sample(Rng& rng) const {
    std::vector<double> x(dim());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(lower[i], upper[i]);
    repair(x);
    return x;
  }
};

/// n positions drawn uniformly in the box, repaired onto the lattice.
inline std::vector<std::vector<double>> init_population(const SearchSpace& space, std::size_t n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("population must be >= 2");
  space.validate();
  std::vector<std::vector<double>> pop;
  pop.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pop.push_back(space.sample(rng));
  return pop;
}

}  // namespace hres::opt
