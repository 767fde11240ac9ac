// Lifetime cost objective, sizing constraints, the LPSP-gated fitness and
// simple payback.
#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hres/components.hpp"
#include "hres/dispatch.hpp"

namespace hres {

// paper_literal takes the battery terms at face value:
//   N_bat (C_bat + V_bat C_bat) + (H - Y_bat - 1) M_bat
// corrected charges each battery its replacements and upkeep:
//   N_bat (C_bat (Y_bat + 1) + H M_bat)
enum class CostModel { paper_literal, corrected };

inline std::string to_string(CostModel m) { return m == CostModel::paper_literal ? "paper-literal" : "corrected"; }

inline CostModel parse_cost_model(const std::string& s) {
  if (s == "paper-literal" || s == "paper_literal") return CostModel::paper_literal;
  if (s == "corrected") return CostModel::corrected;
  throw std::invalid_argument("cost_model must be paper-literal|corrected, got '" + s + "'");
}

/// Replacements needed over the horizon for a battery of the given life.
inline int default_battery_replacements(int horizon_years, double life_years) {
  return std::max(0, static_cast<int>(std::floor(horizon_years / life_years)) - 1);
}

struct EconConfig {
  int horizon_years = 25;
  int y_bat_replacements = 1;
  double tariff_usd_per_kwh = 0.10;
  CostModel cost_model = CostModel::corrected;

  void validate() const {
    if (horizon_years <= 0) throw std::invalid_argument("econ.horizon_years must be > 0");
    if (y_bat_replacements < 0 || y_bat_replacements >= horizon_years)
      throw std::invalid_argument("econ.y_bat_replacements must lie in [0, horizon_years)");
    if (!(tariff_usd_per_kwh >= 0.0)) throw std::invalid_argument("econ.tariff_usd_per_kwh must be >= 0");
  }
};

struct FitnessConfig {
  double lpsp_tolerance = 0.0;
  double penalty_scale_usd = 1e12;

  void validate() const {
    if (!(lpsp_tolerance >= 0.0)) throw std::invalid_argument("fitness.lpsp_tolerance must be >= 0");
    if (!(penalty_scale_usd > 0.0)) throw std::invalid_argument("fitness.penalty_scale_usd must be > 0");
  }
};

/// Lifetime cost over the horizon. N_bat counts every battery, i.e. the
/// parallel strings times the batteries in series per string.
inline double system_cost(const DesignVector& d, const ComponentCatalog& c, const EconConfig& econ,
                          int batteries_in_series = 2) {
  if (d.n_pv < 0 || d.n_wg < 0 || d.n_bat_parallel < 0 || d.n_bio < 0 || d.hub_height_m < 0.0)
    throw std::invalid_argument("system_cost: design entries must be >= 0");
  const double years = econ.horizon_years;
  const double n_bat = static_cast<double>(d.n_bat_parallel) * batteries_in_series;
  const auto& w = c.wind;
  const auto& b = c.battery;

  double cost = static_cast<double>(d.n_pv) * (c.pv.capital_cost_usd + years * c.pv.maint_per_year_usd);
  cost += static_cast<double>(d.n_wg) * (w.capital_cost_usd + years * w.maint_per_year_usd +
                                         d.hub_height_m * w.tower_cost_per_m_usd +
                                         years * d.hub_height_m * w.tower_maint_per_m_year_usd);
  if (econ.cost_model == CostModel::paper_literal) {
    cost += n_bat * (b.capital_cost_usd + b.voltage_v * b.capital_cost_usd);
    cost += (years - econ.y_bat_replacements - 1) * b.maint_per_year_usd;
  } else {
    cost += n_bat * (b.capital_cost_usd * (econ.y_bat_replacements + 1) + years * b.maint_per_year_usd);
  }
  cost += static_cast<double>(d.n_bio) * (c.biogas.engine_cost_usd + years * c.biogas.engine_maint_per_year_usd);
  cost += c.biogas.digester_cost_usd + years * c.biogas.digester_maint_per_year_usd;
  return cost;
}

struct ConstraintVerdict {
  bool feasible = true;
  std::vector<std::string> violations;
  double magnitude = 0.0;  // summed distance to the feasible region
};

inline ConstraintVerdict check_constraints(const DesignVector& d, const ComponentCatalog& c) {
  ConstraintVerdict v;
  auto fail = [&v](std::string what, double amount) {
    v.feasible = false;
    v.violations.push_back(std::move(what));
    v.magnitude += amount;
  };
  auto positive = [&](const char* name, long n) {
    if (n <= 0) fail(std::string(name) + " must be > 0", static_cast<double>(1 - n));
  };
  positive("N_WG", d.n_wg);
  positive("N_PV", d.n_pv);
  positive("N_bat", d.n_bat_parallel);
  positive("N_bio", d.n_bio);
  if (d.tilt_deg < 0.0) fail("β below 0", -d.tilt_deg);
  if (d.tilt_deg > 90.0) fail("β above 90", d.tilt_deg - 90.0);
  auto fmt = [](double x) {
    std::string s = std::to_string(x);
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
    return s;
  };
  if (d.hub_height_m < c.wind.h_low_m) fail("h below " + fmt(c.wind.h_low_m), c.wind.h_low_m - d.hub_height_m);
  if (d.hub_height_m > c.wind.h_high_m) fail("h above " + fmt(c.wind.h_high_m), d.hub_height_m - c.wind.h_high_m);
  return v;
}

struct FitnessBreakdown {
  double fitness = 0.0;
  double cost = 0.0;
  double lpsp = 1.0;
  bool feasible = false;
  bool simulated = false;
};

/// Cost if the design is feasible and its LPSP is within tolerance, otherwise
/// cost + penalty_scale * (LPSP + constraint violation magnitude). Designs the
/// simulator cannot run (negative counts, tilt outside [0, 90]) score LPSP 1.
inline FitnessBreakdown evaluate_fitness(const DesignVector& d, const PreparedScenario& scenario,
                                         const ComponentCatalog& c, const EconConfig& econ,
                                         const FitnessConfig& fcfg) {
  FitnessBreakdown out;
  const ConstraintVerdict verdict = check_constraints(d, c);
  const bool runnable = d.n_pv >= 0 && d.n_wg >= 0 && d.n_bat_parallel >= 0 && d.n_bio >= 0 &&
                        d.tilt_deg >= 0.0 && d.tilt_deg <= 90.0 && (d.n_wg == 0 || d.hub_height_m > 0.0);
  if (runnable) {
    out.lpsp = simulate_year(d, scenario, c).lpsp;
    out.simulated = true;
  }
  DesignVector priced = d;
  priced.n_pv = std::max(0L, d.n_pv);
  priced.n_wg = std::max(0L, d.n_wg);
  priced.n_bat_parallel = std::max(0L, d.n_bat_parallel);
  priced.n_bio = std::max(0L, d.n_bio);
  priced.hub_height_m = std::max(0.0, d.hub_height_m);
  out.cost = system_cost(priced, c, econ, battery_bank_layout(0, c.battery, scenario.site()).n_series);
  out.feasible = verdict.feasible && out.lpsp <= fcfg.lpsp_tolerance;
  out.fitness = out.feasible ? out.cost : out.cost + fcfg.penalty_scale_usd * (out.lpsp + verdict.magnitude);
  return out;
}

inline double fitness(const DesignVector& d, const PreparedScenario& scenario, const ComponentCatalog& c,
                      const EconConfig& econ, const FitnessConfig& fcfg) {
  return evaluate_fitness(d, scenario, c, econ, fcfg).fitness;
}

inline double fitness(const DesignVector& d, const ScenarioData& scenario, const ComponentCatalog& c,
                      const EconConfig& econ, const FitnessConfig& fcfg) {
  return fitness(d, PreparedScenario(scenario, c), c, econ, fcfg);
}

/// Undiscounted payback in days, or nullopt if the system earns nothing.
inline std::optional<double> payback_period(double total_cost_usd, double annual_energy_served_kwh,
                                            double tariff_usd_per_kwh) {
  const double revenue = annual_energy_served_kwh * tariff_usd_per_kwh;
  if (!(revenue > 0.0)) return std::nullopt;
  return 365.0 * total_cost_usd / revenue;
}

}  // namespace hres
