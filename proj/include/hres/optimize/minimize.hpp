// Single-run entry point: seeded initialization, the generation loop and the
// best-so-far convergence trace.
#pragma once

#include <chrono>
#include <cstdio>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "hres/optimize/algorithm.hpp"
#include "hres/optimize/aquila.hpp"
#include "hres/optimize/dandelion.hpp"
#include "hres/optimize/gazelle.hpp"
#include "hres/optimize/osprey.hpp"
#include "hres/optimize/pelican.hpp"
#include "hres/optimize/pso.hpp"
#include "hres/optimize/zebra.hpp"

namespace hres::opt {

struct OptimizerConfig {
  int population = 150;
  int iterations = 300;
  std::uint64_t seed = 1;
  AlgorithmKind algorithm = AlgorithmKind::POA;
  ParamMap algorithm_params;

  void validate() const {
    if (population < 2) throw std::invalid_argument("optimizer.population must be >= 2");
    if (iterations < 1) throw std::invalid_argument("optimizer.iterations must be >= 1");
  }
};

struct RunResult {
  std::vector<double> best_position;
  double best_fitness = 0.0;
  std::vector<double> convergence;  // best-so-far after each iteration
  std::size_t evaluations = 0;
  std::size_t nonfinite_evaluations = 0;
  double wall_time_s = 0.0;
};

inline std::unique_ptr<Algorithm> make_algorithm(AlgorithmKind kind, const ParamMap& params) {
  switch (kind) {
    case AlgorithmKind::PSO: return std::make_unique<ParticleSwarm>(params);
    case AlgorithmKind::AO: return std::make_unique<Aquila>(params);
    case AlgorithmKind::POA: return std::make_unique<Pelican>(params);
    case AlgorithmKind::DOA: return std::make_unique<Dandelion>(params);
    case AlgorithmKind::GOA: return std::make_unique<Gazelle>(params);
    case AlgorithmKind::ZOA: return std::make_unique<Zebra>(params);
    case AlgorithmKind::OOA: return std::make_unique<Osprey>(params);
  }
  throw std::invalid_argument("unknown algorithm");
}

/// Default parameters for an algorithm, as documented on its class.
inline ParamMap default_params(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::PSO: return ParticleSwarm::defaults();
    case AlgorithmKind::AO: return Aquila::defaults();
    case AlgorithmKind::POA: return Pelican::defaults();
    case AlgorithmKind::DOA: return Dandelion::defaults();
    case AlgorithmKind::GOA: return Gazelle::defaults();
    case AlgorithmKind::ZOA: return Zebra::defaults();
    case AlgorithmKind::OOA: return Osprey::defaults();
  }
  return {};
}

/// Fully determined by (objective, space, config): the run draws every random
/// number from one stream seeded with config.seed.
inline RunResult minimize(const Objective& objective, const SearchSpace& space, const OptimizerConfig& config) {
  config.validate();
  space.validate();
  const auto start = std::chrono::steady_clock::now();
  auto algorithm = make_algorithm(config.algorithm, config.algorithm_params);
  Rng rng(config.seed);
  SearchContext ctx(objective, space, rng, config.iterations);

  Population pop;
  pop.x = init_population(space, static_cast<std::size_t>(config.population), rng);
  ctx.evaluate_all(pop);
  algorithm->initialize(ctx, pop);

  RunResult result;
  result.convergence.reserve(static_cast<std::size_t>(config.iterations));
  for (int t = 1; t <= config.iterations; ++t) {
    algorithm->step(ctx, pop, t);
    result.convergence.push_back(ctx.best_fitness());
  }
  result.best_position = ctx.best_position();
  result.best_fitness = ctx.best_fitness();
  result.evaluations = ctx.evaluations();
  result.nonfinite_evaluations = ctx.nonfinite_evaluations();
  result.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

inline void write_convergence_csv(const std::vector<double>& convergence, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << "iteration,best_fitness\n";
  char buf[64];
  for (std::size_t i = 0; i < convergence.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6f", convergence[i]);
    out << (i + 1) << ',' << buf << '\n';
  }
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace hres::opt
