// Hourly operation of one candidate design over a site-year and the
// resulting loss of power supply probability.
//
// Per hour: renewables (wind + PV + must-run biogas) serve the load first,
// surplus charges the battery up to its SOC ceiling, deficit discharges it
// down to its floor, and whatever remains is curtailed or unmet.
#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hres/components.hpp"
#include "hres/solar.hpp"
#include "hres/timeseries.hpp"

namespace hres {

struct DesignVector {
  long n_pv = 0;
  long n_wg = 0;
  long n_bat_parallel = 0;
  double tilt_deg = 0.0;
  double hub_height_m = 0.0;
  long n_bio = 0;

  friend bool operator==(const DesignVector&, const DesignVector&) = default;
};

struct HourRecord {
  double wind_w = 0.0;
  double pv_w = 0.0;
  double bio_w = 0.0;
  double load_w = 0.0;
  double soc = 0.0;
  double charge_wh = 0.0;
  double discharge_wh = 0.0;
  double unmet_wh = 0.0;
  double surplus_wh = 0.0;
};

struct SimulationResult {
  double lpsp = 0.0;
  double total_demand_wh = 0.0;
  double total_unmet_wh = 0.0;
  double total_surplus_wh = 0.0;
  double energy_served_wh = 0.0;
  std::map<std::string, double> generation_by_source_wh;
  double final_soc = 0.0;
  std::optional<std::vector<HourRecord>> hourly_traces;
};

struct SimulationOptions {
  bool trace = false;
  std::optional<double> initial_soc;  // defaults to soc_max
};

inline double lpsp_of(const SimulationResult& r) {
  if (!(r.total_demand_wh > 0.0)) return 0.0;
  return r.total_unmet_wh / r.total_demand_wh;
}

/// Design-independent per-hour quantities, computed once per scenario so the
/// optimizer's inner loop only does arithmetic.
class PreparedScenario {
 public:
  struct Hour {
    double ghi;
    double diffuse;
    double temp_c;
    double wind_ref_ms;
    double load_w;
    double gas_m3;       // biogas available to burn this hour
    double cos_dec_cos_omega;
    double sin_dec;
    double cos_zenith;   // <= 0 with the sun down
  };

  PreparedScenario(const ScenarioData& scenario, const ComponentCatalog& catalog) : site_(scenario.site) {
    const auto violations = validate_scenario(scenario);
    if (!violations.empty()) throw std::invalid_argument("invalid scenario: " + violations.front().message());
    catalog.validate();
    hours_.resize(kHoursPerYear);
    for (std::size_t day = 0; day < kHoursPerYear / 24; ++day) {
      double waste = 0.0;
      for (std::size_t h = 0; h < 24; ++h) waste += scenario.food_waste[day * 24 + h];
      const double hourly_gas = biogas_volume(waste, catalog.biogas) / 24.0;
      const double delta = solar::deg2rad(solar::declination(static_cast<int>(day) + 1));
      for (std::size_t h = 0; h < 24; ++h) {
        const std::size_t t = day * 24 + h;
        const double omega = solar::deg2rad(solar::hour_angle(solar_hour_of(t)));
        Hour& x = hours_[t];
        x.ghi = scenario.ghi[t];
        x.diffuse = scenario.diffuse[t];
        x.temp_c = scenario.ambient_temp[t];
        x.wind_ref_ms = scenario.wind_speed_ref[t];
        x.load_w = scenario.load[t];
        x.gas_m3 = hourly_gas;
        x.cos_dec_cos_omega = std::cos(delta) * std::cos(omega);
        x.sin_dec = std::sin(delta);
        const double phi = solar::deg2rad(site_.latitude_deg);
        x.cos_zenith = std::cos(phi) * x.cos_dec_cos_omega + std::sin(phi) * x.sin_dec;
      }
    }
  }

  const SiteConfig& site() const { return site_; }
  const std::vector<Hour>& hours() const { return hours_; }

 private:
  SiteConfig site_;
  std::vector<Hour> hours_;
};

inline void validate_design(const DesignVector& d) {
  if (d.n_pv < 0 || d.n_wg < 0 || d.n_bat_parallel < 0 || d.n_bio < 0)
    throw std::invalid_argument("design counts must be >= 0");
  if (!(d.tilt_deg >= 0.0 && d.tilt_deg <= 90.0)) throw std::invalid_argument("design tilt must lie in [0, 90]");
  if (!(d.hub_height_m > 0.0) && d.n_wg > 0) throw std::invalid_argument("design hub height must be > 0");
}

inline SimulationResult simulate_year(const DesignVector& design, const PreparedScenario& scenario,
                                      const ComponentCatalog& catalog, const SimulationOptions& options = {}) {
  validate_design(design);
  const SiteConfig& site = scenario.site();
  const BatterySpec& bat = catalog.battery;
  const BatteryBank bank = battery_bank_layout(design.n_bat_parallel, bat, site);

  const double wind_scale =
      design.n_wg > 0 ? std::pow(design.hub_height_m / site.reference_height_m, site.power_law_alpha) : 0.0;
  const double phi_eff =
      solar::deg2rad(solar::effective_latitude(site.latitude_deg, design.tilt_deg, site.transposition));
  const double cos_phi_eff = std::cos(phi_eff);
  const double sin_phi_eff = std::sin(phi_eff);
  const double cos_tilt = std::cos(solar::deg2rad(design.tilt_deg));
  const double sky_view = (1.0 + cos_tilt) / 2.0;
  const double ground_view = site.ground_reflectance * (1.0 - cos_tilt) / 2.0;
  const bool flat = design.tilt_deg == 0.0;

  SimulationResult r;
  if (options.trace) r.hourly_traces.emplace().reserve(kHoursPerYear);
  double soc = options.initial_soc.value_or(bat.soc_max);
  double gen_wind = 0.0, gen_pv = 0.0, gen_bio = 0.0;

  // Loop-invariant pieces of the component models. The per-hour arithmetic
  // below is the same as wind_specific_power / wind_electric_power,
  // pv_module_power / pv_array_power and biogas_power with these hoisted.
  const WindTurbineSpec& wt = catalog.wind;
  const double wind_gain = wt.swept_area_m2 * wt.efficiency * static_cast<double>(design.n_wg);
  const double p_rated = wt.rated_specific_power();
  const double ci3 = wt.cut_in_ms * wt.cut_in_ms * wt.cut_in_ms;
  const double r3 = wt.rated_ms * wt.rated_ms * wt.rated_ms;
  const double curve_a = p_rated / (r3 - ci3);
  const double curve_b = ci3 / (r3 - ci3) * p_rated;

  const PVModuleSpec& pv = catalog.pv;
  const double pv_gain = pv.converter_efficiency * static_cast<double>(design.n_pv) * pv.fill_factor();
  const double noct_rise = (pv.noct_c - 20.0) / 1000.0;
  const double voc_offset = pv.voc_convention == VocConvention::paper ? 0.0 : 25.0;

  const BiogasSpec& bg = catalog.biogas;
  const double bio_per_m3 = bg.calorific_kcal_per_m3 * bg.engine_efficiency / 860.0 * 1000.0;
  const double bio_cap = static_cast<double>(design.n_bio) * bg.rated_power_w;

  for (const auto& h : scenario.hours()) {
    double wind_w = 0.0;
    if (design.n_wg > 0) {
      const double v = h.wind_ref_ms * wind_scale;
      double p_spec = 0.0;
      if (v >= wt.cut_in_ms && v < wt.cut_out_ms)
        p_spec = v >= wt.rated_ms ? p_rated : std::max(0.0, curve_a * v * v * v - curve_b);
      wind_w = p_spec * wind_gain;
    }

    double pv_w = 0.0;
    if (design.n_pv > 0 && h.ghi > 0.0) {
      double r_b = 0.0;
      if (h.cos_zenith > 0.0) {
        r_b = flat ? 1.0
                   : std::clamp((cos_phi_eff * h.cos_dec_cos_omega + sin_phi_eff * h.sin_dec) / h.cos_zenith, 0.0,
                                solar::kBeamRatioCap);
      }
      const double g_tilt = std::max(0.0, (h.ghi - h.diffuse) * r_b + h.diffuse * sky_view + h.ghi * ground_view);
      const double tc = h.temp_c + noct_rise * g_tilt;
      const double voc = pv.voc_stc_v - pv.kv_v_per_c * (tc - voc_offset);
      const double isc = (pv.isc_stc_a + pv.ki_a_per_c * (tc - 25.0)) * g_tilt / 1000.0;
      pv_w = std::max(0.0, voc * isc) * pv_gain;
    }

    const double bio_w = std::min(h.gas_m3 * bio_per_m3, bio_cap);
    const double net_w = wind_w + pv_w + bio_w - h.load_w;
    const SocStep step = soc_step(soc, net_w, 1.0, bank, bat);
    soc = step.soc;

    gen_wind += wind_w;
    gen_pv += pv_w;
    gen_bio += bio_w;
    r.total_demand_wh += h.load_w;
    r.total_unmet_wh += step.unmet_wh;
    r.total_surplus_wh += step.surplus_wh;
    if (options.trace) {
      r.hourly_traces->push_back({wind_w, pv_w, bio_w, h.load_w, step.soc, step.charged_wh, step.discharged_wh,
                                  step.unmet_wh, step.surplus_wh});
    }
  }
  r.total_unmet_wh = std::min(r.total_unmet_wh, r.total_demand_wh);
  r.energy_served_wh = r.total_demand_wh - r.total_unmet_wh;
  r.generation_by_source_wh = {{"biogas", gen_bio}, {"pv", gen_pv}, {"wind", gen_wind}};
  r.final_soc = soc;
  r.lpsp = lpsp_of(r);
  return r;
}

inline SimulationResult simulate_year(const DesignVector& design, const ScenarioData& scenario,
                                      const ComponentCatalog& catalog, const SimulationOptions& options = {}) {
  return simulate_year(design, PreparedScenario(scenario, catalog), catalog, options);
}

inline void write_trace_csv(const SimulationResult& r, const std::filesystem::path& path) {
  if (!r.hourly_traces) throw std::invalid_argument("simulation was run without tracing");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << "hour,wind_w,pv_w,bio_w,load_w,soc,charge_wh,discharge_wh,unmet_wh,surplus_wh\n";
  std::size_t t = 0;
  for (const auto& h : *r.hourly_traces) {
    using detail::format_double;
    out << t++ << ',' << format_double(h.wind_w) << ',' << format_double(h.pv_w) << ',' << format_double(h.bio_w)
        << ',' << format_double(h.load_w) << ',' << format_double(h.soc) << ',' << format_double(h.charge_wh) << ','
        << format_double(h.discharge_wh) << ',' << format_double(h.unmet_wh) << ','
        << format_double(h.surplus_wh) << '\n';
  }
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace hres
