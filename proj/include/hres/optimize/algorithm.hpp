// Shared machinery for the population-based minimizers: the algorithm tag,
// parameter handling, the evaluation context and the Algorithm interface.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hres/optimize/random.hpp"
#include "hres/optimize/search_space.hpp"

namespace hres::opt {

enum class AlgorithmKind { PSO, AO, POA, DOA, GOA, ZOA, OOA };

inline constexpr AlgorithmKind kAllAlgorithms[] = {AlgorithmKind::PSO, AlgorithmKind::AO,  AlgorithmKind::POA,
                                                   AlgorithmKind::DOA, AlgorithmKind::GOA, AlgorithmKind::ZOA,
                                                   AlgorithmKind::OOA};

inline std::string to_string(AlgorithmKind k) {
  switch (k) {
    case AlgorithmKind::PSO: return "PSO";
    case AlgorithmKind::AO: return "AO";
    case AlgorithmKind::POA: return "POA";
    case AlgorithmKind::DOA: return "DOA";
    case AlgorithmKind::GOA: return "GOA";
    case AlgorithmKind::ZOA: return "ZOA";
    case AlgorithmKind::OOA: return "OOA";
  }
  return "?";
}

inline AlgorithmKind parse_algorithm(const std::string& s) {
  for (AlgorithmKind k : kAllAlgorithms)
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown algorithm '" + s + "' (expected PSO, AO, POA, DOA, GOA, ZOA or OOA)");
}

using Objective = std::function<double(std::span<const double>)>;
using ParamMap = std::map<std::string, double>;

/// Algorithm parameters: documented defaults overridden by user keys.
class Params {
 public:
  Params(ParamMap defaults, const ParamMap& overrides, const std::string& owner) : values_(std::move(defaults)) {
    for (const auto& [key, value] : overrides) {
      auto it = values_.find(key);
      if (it == values_.end()) throw std::invalid_argument(owner + ": unknown parameter '" + key + "'");
      it->second = value;
    }
  }
  double operator[](const std::string& key) const { return values_.at(key); }
  const ParamMap& values() const { return values_; }

 private:
  ParamMap values_;
};

struct Population {
  std::vector<std::vector<double>> x;
  std::vector<double> f;

  std::size_t size() const { return x.size(); }
};

/// Owns the evaluation path: every candidate is repaired onto the feasible
/// lattice before the objective sees it, non-finite values become +inf, and
/// the best-so-far is updated only on strict improvement.
class SearchContext {
 public:
  SearchContext(const Objective& objective, const SearchSpace& space, Rng& rng, int iterations)
      : objective_(objective), space_(space), rng_(rng), iterations_(iterations) {}

  double evaluate(std::vector<double>& x) {
    space_.repair(x);
    double f = objective_(std::span<const double>(x));
    ++evaluations_;
    if (!std::isfinite(f)) {
      ++nonfinite_;
      f = std::numeric_limits<double>::infinity();
    }
    if (f < best_f_ || best_x_.empty()) {
      best_f_ = f;
      best_x_ = x;
    }
    return f;
  }

  void evaluate_all(Population& pop) {
    pop.f.resize(pop.x.size());
    for (std::size_t i = 0; i < pop.x.size(); ++i) pop.f[i] = evaluate(pop.x[i]);
  }

  /// Evaluates the candidate and keeps it in slot i only if it is better.
  bool greedy_replace(Population& pop, std::size_t i, std::vector<double> candidate) {
    const double f = evaluate(candidate);
    if (f < pop.f[i]) {
      pop.x[i] = std::move(candidate);
      pop.f[i] = f;
      return true;
    }
    return false;
  }

  Rng& rng() { return rng_; }
  const SearchSpace& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }
  int iterations() const { return iterations_; }
  const std::vector<double>& best_position() const { return best_x_; }
  double best_fitness() const { return best_f_; }
  std::size_t evaluations() const { return evaluations_; }
  std::size_t nonfinite_evaluations() const { return nonfinite_; }

 private:
  const Objective& objective_;
  const SearchSpace& space_;
  Rng& rng_;
  int iterations_;
  std::vector<double> best_x_;
  double best_f_ = std::numeric_limits<double>::infinity();
  std::size_t evaluations_ = 0;
  std::size_t nonfinite_ = 0;
};

class Algorithm {
 public:
  virtual ~Algorithm() = default;
  /// Called once after the initial population has been evaluated.
  virtual void initialize(SearchContext&, Population&) {}
  /// One generation; t runs from 1 to the iteration budget.
  virtual void step(SearchContext& ctx, Population& pop, int t) = 0;
};

inline std::size_t best_index(const Population& pop) {
  std::size_t b = 0;
  for (std::size_t i = 1; i < pop.size(); ++i)
    if (pop.f[i] < pop.f[b]) b = i;
  return b;
}

inline void clamp_to_box(const SearchSpace& space, std::vector<double>& x) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (std::isnan(x[j])) x[j] = space.lower[j];
    x[j] = std::clamp(x[j], space.lower[j], space.upper[j]);
  }
}

}  // namespace hres::opt
