// Binds a scenario, catalog and economics into a minimization problem over
// the six-variable design vector (N_PV, N_WG, N_bat, tilt, h, N_bio).
#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "hres/dispatch.hpp"
#include "hres/economics.hpp"
#include "hres/optimize/algorithm.hpp"
#include "hres/optimize/search_space.hpp"

namespace hres {

struct DesignBounds {
  double n_pv_max = 600;
  double n_wg_max = 60;
  double n_bat_max = 1500;
  double n_bio_max = 10;
  double tilt_min = 0.0;
  double tilt_max = 90.0;
  // Hub-height bounds default to the turbine's tower range.
};

inline opt::SearchSpace design_search_space(const DesignBounds& b, const WindTurbineSpec& wind) {
  opt::SearchSpace s;
  s.lower = {1.0, 1.0, 1.0, b.tilt_min, wind.h_low_m, 1.0};
  s.upper = {b.n_pv_max, b.n_wg_max, b.n_bat_max, b.tilt_max, wind.h_high_m, b.n_bio_max};
  s.integer_mask = {true, true, true, false, false, true};
  s.validate();
  return s;
}

inline DesignVector decode_design(std::span<const double> x) {
  if (x.size() != 6) throw std::invalid_argument("design position must have 6 entries");
  DesignVector d;
  d.n_pv = std::lround(x[0]);
  d.n_wg = std::lround(x[1]);
  d.n_bat_parallel = std::lround(x[2]);
  d.tilt_deg = x[3];
  d.hub_height_m = x[4];
  d.n_bio = std::lround(x[5]);
  return d;
}

inline std::vector<double> encode_design(const DesignVector& d) {
  return {static_cast<double>(d.n_pv), static_cast<double>(d.n_wg), static_cast<double>(d.n_bat_parallel),
          d.tilt_deg,                  d.hub_height_m,               static_cast<double>(d.n_bio)};
}

class HresProblem {
 public:
  HresProblem(const ScenarioData& scenario, ComponentCatalog catalog, EconConfig econ, FitnessConfig fitness,
              opt::SearchSpace space)
      : catalog_(std::move(catalog)),
        econ_(econ),
        fitness_(fitness),
        prepared_(scenario, catalog_),
        space_(std::move(space)) {
    econ_.validate();
    fitness_.validate();
    space_.validate();
    if (space_.dim() != 6) throw std::invalid_argument("HRES search space must have 6 dimensions");
  }

  HresProblem(const ScenarioData& scenario, const ComponentCatalog& catalog, const EconConfig& econ,
              const FitnessConfig& fitness, const DesignBounds& bounds = {})
      : HresProblem(scenario, catalog, econ, fitness, design_search_space(bounds, catalog.wind)) {}

  FitnessBreakdown evaluate(const DesignVector& d) const {
    return evaluate_fitness(d, prepared_, catalog_, econ_, fitness_);
  }

  double operator()(std::span<const double> x) const { return evaluate(decode_design(x)).fitness; }

  /// Reentrant objective; captures this problem by reference.
  opt::Objective objective() const {
    return [this](std::span<const double> x) { return (*this)(x); };
  }

  SimulationResult simulate(const DesignVector& d, const SimulationOptions& options = {}) const {
    return simulate_year(d, prepared_, catalog_, options);
  }

  double cost(const DesignVector& d) const {
    return system_cost(d, catalog_, econ_, battery_bank_layout(0, catalog_.battery, prepared_.site()).n_series);
  }

  const opt::SearchSpace& space() const { return space_; }
  const ComponentCatalog& catalog() const { return catalog_; }
  const EconConfig& econ() const { return econ_; }
  const FitnessConfig& fitness_config() const { return fitness_; }
  const PreparedScenario& prepared() const { return prepared_; }

 private:
  ComponentCatalog catalog_;
  EconConfig econ_;
  FitnessConfig fitness_;
  PreparedScenario prepared_;
  opt::SearchSpace space_;
};

}  // namespace hres
