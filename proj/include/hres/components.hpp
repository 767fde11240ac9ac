// Device models for the four HRES components: wind turbine, PV module and
// array, biogas digester/engine, and the battery bank.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hres/site.hpp"

namespace hres {

// ---------------------------------------------------------------------------
// Specifications. Cost defaults are vendor list prices;
// maintenance defaults are 1% of capital per year.

struct WindTurbineSpec {
  double rated_power_w = 1000.0;
  double cut_in_ms = 2.5;
  double rated_ms = 11.0;
  double cut_out_ms = 25.0;
  double swept_area_m2 = 4.52;
  double efficiency = 0.9;
  double h_low_m = 11.0;
  double h_high_m = 40.0;
  double capital_cost_usd = 2400.0;
  double tower_cost_per_m_usd = 55.0;
  double maint_per_year_usd = 24.0;
  double tower_maint_per_m_year_usd = 0.55;

  void validate() const {
    if (!(0.0 < cut_in_ms && cut_in_ms < rated_ms && rated_ms < cut_out_ms))
      throw std::invalid_argument("wind: need 0 < cut_in < rated < cut_out");
    if (!(efficiency > 0.0 && efficiency <= 1.0)) throw std::invalid_argument("wind: efficiency must lie in (0, 1]");
    if (!(swept_area_m2 > 0.0)) throw std::invalid_argument("wind: swept area must be > 0");
    if (!(rated_power_w > 0.0)) throw std::invalid_argument("wind: rated power must be > 0");
    if (!(h_low_m < h_high_m)) throw std::invalid_argument("wind: h_low must be < h_high");
  }

  /// Rated power per unit swept area (W/m^2).
  double rated_specific_power() const { return rated_power_w / swept_area_m2; }
};

// How the open-circuit voltage responds to cell temperature:
// literal subtracts K_V * T_C, delta25 subtracts K_V * (T_C - 25).
enum class VocConvention { paper, delta25 };

inline std::string to_string(VocConvention c) { return c == VocConvention::paper ? "paper" : "delta25"; }

inline VocConvention parse_voc_convention(const std::string& s) {
  if (s == "paper") return VocConvention::paper;
  if (s == "delta25") return VocConvention::delta25;
  throw std::invalid_argument("pv_voc_convention must be paper|delta25, got '" + s + "'");
}

struct PVModuleSpec {
  double voc_stc_v = 64.8;
  double isc_stc_a = 6.24;
  double vmax_v = 54.7;
  double imax_a = 5.86;
  double pmax_w = 320.0;
  double capital_cost_usd = 640.0;
  double maint_per_year_usd = 6.4;
  double kv_v_per_c = 0.176;
  double ki_a_per_c = 0.0035;
  double noct_c = 47.0;
  double converter_efficiency = 0.95;
  // Layout metadata only: the design count N_pv already counts every module.
  int n_series = 1;
  int n_parallel_per_unit = 1;
  VocConvention voc_convention = VocConvention::paper;

  double fill_factor() const { return (vmax_v * imax_a) / (voc_stc_v * isc_stc_a); }

  void validate() const {
    if (!(vmax_v < voc_stc_v)) throw std::invalid_argument("pv: vmax must be < voc");
    if (!(imax_a < isc_stc_a)) throw std::invalid_argument("pv: imax must be < isc");
    if (!(converter_efficiency > 0.0 && converter_efficiency <= 1.0))
      throw std::invalid_argument("pv: converter efficiency must lie in (0, 1]");
    const double ff = fill_factor();
    if (!(ff > 0.0 && ff < 1.0)) throw std::invalid_argument("pv: fill factor must lie in (0, 1)");
  }
};

struct BiogasSpec {
  double rated_power_w = 3000.0;
  double engine_cost_usd = 720.0;
  double engine_maint_per_year_usd = 7.2;
  double digester_volume_m3 = 22.183;
  double digester_cost_usd = 2550.0;
  double digester_maint_per_year_usd = 25.5;
  double gas_rate_m3_per_kg = 0.05;
  double calorific_kcal_per_m3 = 4700.0;
  double engine_efficiency = 0.30;

  void validate() const {
    if (!(engine_efficiency > 0.0 && engine_efficiency <= 1.0))
      throw std::invalid_argument("biogas: engine efficiency must lie in (0, 1]");
    if (!(gas_rate_m3_per_kg > 0.0)) throw std::invalid_argument("biogas: gas rate must be > 0");
    if (!(calorific_kcal_per_m3 > 0.0)) throw std::invalid_argument("biogas: calorific value must be > 0");
    if (!(digester_volume_m3 >= 0.0)) throw std::invalid_argument("biogas: digester volume must be >= 0");
  }
};

struct BatterySpec {
  double voltage_v = 12.0;
  double capacity_ah = 357.0;
  double capital_cost_usd = 1239.0;
  double maint_per_year_usd = 12.39;
  double self_discharge_per_day = 0.002;
  double charge_efficiency = 0.8;
  double discharge_efficiency = 1.0;
  double soc_min = 0.2;
  double soc_max = 1.0;
  double life_years = 10.0;

  void validate() const {
    if (!(0.0 <= soc_min && soc_min < soc_max && soc_max <= 1.0))
      throw std::invalid_argument("battery: need 0 <= soc_min < soc_max <= 1");
    if (!(charge_efficiency > 0.0 && charge_efficiency <= 1.0))
      throw std::invalid_argument("battery: charge efficiency must lie in (0, 1]");
    if (!(discharge_efficiency > 0.0 && discharge_efficiency <= 1.0))
      throw std::invalid_argument("battery: discharge efficiency must lie in (0, 1]");
    if (!(voltage_v > 0.0 && capacity_ah > 0.0)) throw std::invalid_argument("battery: voltage and capacity must be > 0");
    if (!(self_discharge_per_day >= 0.0 && self_discharge_per_day < 1.0))
      throw std::invalid_argument("battery: self discharge must lie in [0, 1)");
    if (!(life_years > 0.0)) throw std::invalid_argument("battery: life must be > 0");
  }
};

struct ComponentCatalog {
  WindTurbineSpec wind;
  PVModuleSpec pv;
  BiogasSpec biogas;
  BatterySpec battery;

  void validate() const {
    wind.validate();
    pv.validate();
    biogas.validate();
    battery.validate();
  }
};

// ---------------------------------------------------------------------------
// Wind

/// Specific power (W/m^2) of the turbine at hub-height wind speed v.
inline double wind_specific_power(double v_ms, const WindTurbineSpec& spec) {
  if (!(v_ms >= 0.0)) throw std::invalid_argument("wind speed must be >= 0");
  const double p_r = spec.rated_specific_power();
  if (v_ms < spec.cut_in_ms || v_ms >= spec.cut_out_ms) return 0.0;
  if (v_ms >= spec.rated_ms) return p_r;
  const double ci3 = spec.cut_in_ms * spec.cut_in_ms * spec.cut_in_ms;
  const double r3 = spec.rated_ms * spec.rated_ms * spec.rated_ms;
  const double a = p_r / (r3 - ci3);
  const double b = ci3 / (r3 - ci3);
  return std::max(0.0, a * v_ms * v_ms * v_ms - b * p_r);
}

/// Power-law extrapolation of the reference-height wind speed.
inline double wind_speed_at_height(double v_ref_ms, double h_m, const SiteConfig& site) {
  if (!(h_m > 0.0)) throw std::invalid_argument("hub height must be > 0");
  if (!(v_ref_ms >= 0.0)) throw std::invalid_argument("wind speed must be >= 0");
  return v_ref_ms * std::pow(h_m / site.reference_height_m, site.power_law_alpha);
}

inline double wind_electric_power(double p_w_specific, const WindTurbineSpec& spec, long n_wg) {
  if (n_wg < 0) throw std::invalid_argument("turbine count must be >= 0");
  if (!(p_w_specific >= 0.0)) throw std::invalid_argument("specific power must be >= 0");
  return p_w_specific * spec.swept_area_m2 * spec.efficiency * static_cast<double>(n_wg);
}

// ---------------------------------------------------------------------------
// PV

inline double pv_cell_temperature(double t_ambient_c, double g_tilt_wm2, const PVModuleSpec& spec) {
  return t_ambient_c + (spec.noct_c - 20.0) * g_tilt_wm2 / 1000.0;
}

/// DC output of one module: V_oc * I_sc * FF with temperature-corrected V_oc and I_sc.
inline double pv_module_power(double g_tilt_wm2, double t_ambient_c, const PVModuleSpec& spec) {
  if (!(g_tilt_wm2 >= 0.0)) throw std::invalid_argument("irradiance must be >= 0");
  const double tc = pv_cell_temperature(t_ambient_c, g_tilt_wm2, spec);
  const double voc = spec.voc_convention == VocConvention::paper ? spec.voc_stc_v - spec.kv_v_per_c * tc
                                                                   : spec.voc_stc_v - spec.kv_v_per_c * (tc - 25.0);
  const double isc = (spec.isc_stc_a + spec.ki_a_per_c * (tc - 25.0)) * g_tilt_wm2 / 1000.0;
  return std::max(0.0, voc * isc * spec.fill_factor());
}

inline double pv_array_power(double p_module_w, long n_pv, const PVModuleSpec& spec) {
  if (n_pv < 0) throw std::invalid_argument("module count must be >= 0");
  if (!(p_module_w >= 0.0)) throw std::invalid_argument("module power must be >= 0");
  return spec.converter_efficiency * static_cast<double>(n_pv) * p_module_w;
}

// ---------------------------------------------------------------------------
// Biogas

/// Gas produced from one day's waste, capped by what the digester holds.
inline double biogas_volume(double waste_kg, const BiogasSpec& spec) {
  if (!(waste_kg >= 0.0)) throw std::invalid_argument("food waste must be >= 0");
  return std::min(waste_kg * spec.gas_rate_m3_per_kg, spec.digester_volume_m3);
}

/// Average engine output (W) over an hour that burns v_bio_m3 of gas,
/// limited by the installed engine rating.
inline double biogas_power(double v_bio_m3, const BiogasSpec& spec, long n_bio) {
  if (!(v_bio_m3 >= 0.0) || n_bio < 0) throw std::invalid_argument("biogas volume and engine count must be >= 0");
  // 860 kcal per kWh
  const double raw_w = v_bio_m3 * spec.calorific_kcal_per_m3 * spec.engine_efficiency / 860.0 * 1000.0;
  return std::min(raw_w, static_cast<double>(n_bio) * spec.rated_power_w);
}

// ---------------------------------------------------------------------------
// Battery

struct BatteryBank {
  int n_series = 0;
  long n_parallel = 0;
  double total_capacity_ah = 0.0;
  double energy_max_kwh = 0.0;

  long battery_count() const { return static_cast<long>(n_series) * n_parallel; }
  double bus_voltage(const BatterySpec& spec) const { return n_series * spec.voltage_v; }
  double energy_max_wh() const { return energy_max_kwh * 1000.0; }
};

inline BatteryBank battery_bank_layout(long n_pbat, const BatterySpec& spec, const SiteConfig& site) {
  if (n_pbat < 0) throw std::invalid_argument("parallel battery count must be >= 0");
  const double ratio = site.bus_voltage_v / spec.voltage_v;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9)
    throw std::invalid_argument("bus voltage " + std::to_string(site.bus_voltage_v) +
                                " V is not an integer multiple of battery voltage " + std::to_string(spec.voltage_v) +
                                " V");
  BatteryBank bank;
  bank.n_series = static_cast<int>(rounded);
  bank.n_parallel = n_pbat;
  bank.total_capacity_ah = static_cast<double>(n_pbat) * spec.capacity_ah;
  bank.energy_max_kwh = bank.total_capacity_ah * (bank.n_series * spec.voltage_v) / 1000.0;
  return bank;
}

struct SocStep {
  double soc = 0.0;
  double charged_wh = 0.0;     // drawn from the bus into the battery
  double discharged_wh = 0.0;  // delivered from the battery to the bus
  double unmet_wh = 0.0;
  double surplus_wh = 0.0;
};

/// One hour of battery operation against the bus net power.
///
/// Self-discharge is applied first (never below soc_min), then the net power
/// charges or discharges the bank through a current I = P / V_bus. Bus-side
/// bookkeeping:
///
///   net_power * dt = charged_wh - discharged_wh + surplus_wh - unmet_wh
///
/// and the stored energy moves by charge_efficiency * charged_wh on charge and
/// by discharged_wh / discharge_efficiency on discharge.
inline SocStep soc_step(double soc_prev, double net_power_w, double dt_h, const BatteryBank& bank,
                        const BatterySpec& spec) {
  constexpr double kSocSlack = 1e-12;
  if (!(dt_h > 0.0)) throw std::invalid_argument("time step must be > 0");
  if (!(soc_prev >= spec.soc_min - kSocSlack && soc_prev <= spec.soc_max + kSocSlack))
    throw std::invalid_argument("previous SOC outside [soc_min, soc_max]");
  SocStep r;
  const double soc_sd =
      std::clamp(soc_prev * (1.0 - spec.self_discharge_per_day * dt_h / 24.0), spec.soc_min, spec.soc_max);
  const double capacity_ah = bank.total_capacity_ah;
  const double bus_v = bank.bus_voltage(spec);
  const double energy = net_power_w * dt_h;
  r.soc = soc_sd;
  if (capacity_ah <= 0.0 || bus_v <= 0.0) {
    if (energy > 0.0) r.surplus_wh = energy;
    else r.unmet_wh = -energy;
    return r;
  }
  const double current_a = net_power_w / bus_v;
  if (current_a > 0.0) {
    const double room_ah = (spec.soc_max - soc_sd) * capacity_ah;
    const double limit_ah = room_ah / spec.charge_efficiency;
    const double accepted_ah = std::min(current_a * dt_h, limit_ah);
    r.soc = std::min(spec.soc_max, soc_sd + accepted_ah * spec.charge_efficiency / capacity_ah);
    r.charged_wh = current_a * dt_h <= limit_ah ? energy : accepted_ah * bus_v;
    r.surplus_wh = energy - r.charged_wh;
  } else if (current_a < 0.0) {
    const double avail_ah = (soc_sd - spec.soc_min) * capacity_ah;
    const double limit_ah = avail_ah * spec.discharge_efficiency;
    const double delivered_ah = std::min(-current_a * dt_h, limit_ah);
    r.soc = std::max(spec.soc_min, soc_sd - delivered_ah / spec.discharge_efficiency / capacity_ah);
    r.discharged_wh = -current_a * dt_h <= limit_ah ? -energy : delivered_ah * bus_v;
    r.unmet_wh = -energy - r.discharged_wh;
  }
  return r;
}

}  // namespace hres
