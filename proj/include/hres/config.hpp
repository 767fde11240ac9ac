// Flat key-value configuration with [section] headers.
//
//   # comment
//   [catalog.wind]
//   cut_in_ms = 3.0
//
// A key's full name is "<section>.<key>", so [catalog] wind.cut_in_ms = 3 is
// the same setting. Every model default is a key; unknown keys are errors.
#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hres/bench.hpp"
#include "hres/problem.hpp"
#include "hres/timeseries.hpp"

namespace hres {

struct AppConfig {
  SiteConfig site;
  ComponentCatalog catalog;
  EconConfig econ;
  FitnessConfig fitness;
  DesignBounds bounds;
  SynthParams synth;
  std::uint64_t synth_seed = 1;
  bench::BenchConfig bench;  // bench.optimizer is the optimizer section

  void validate() const {
    site.validate();
    catalog.validate();
    econ.validate();
    fitness.validate();
    synth.validate();
    bench.validate();
    design_search_space(bounds, catalog.wind);
  }
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace config_detail {

using Setter = std::function<void(AppConfig&, const std::string&)>;
using Getter = std::function<std::string(const AppConfig&)>;

struct Binding {
  Setter set;
  Getter get;
};

inline double to_double(const std::string& v) {
  double d = 0.0;
  if (!detail::parse_double(v, d)) throw std::invalid_argument("expected a number, got '" + v + "'");
  return d;
}

template <typename Int>
Int to_integer(const std::string& v) {
  Int out{};
  const auto* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || p != end) throw std::invalid_argument("expected an integer, got '" + v + "'");
  return out;
}

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  for (auto& item : detail::split_csv(v)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline std::string join_algorithms(const std::vector<opt::AlgorithmKind>& algs) {
  std::string s;
  for (auto a : algs) s += (s.empty() ? "" : ",") + opt::to_string(a);
  return s;
}

inline std::vector<opt::AlgorithmKind> parse_algorithm_list(const std::string& v) {
  std::vector<opt::AlgorithmKind> out;
  for (const auto& name : split_list(v)) out.push_back(opt::parse_algorithm(name));
  if (out.empty()) throw std::invalid_argument("algorithm list is empty");
  return out;
}

#define HRES_REAL(key, member) \
  t[key] = {[](AppConfig& c, const std::string& v) { c.member = to_double(v); }, \
            [](const AppConfig& c) { return detail::format_double(c.member); }}
#define HRES_INT(key, member) \
  t[key] = {[](AppConfig& c, const std::string& v) { c.member = to_integer<decltype(c.member)>(v); }, \
            [](const AppConfig& c) { return std::to_string(c.member); }}

inline const std::map<std::string, Binding>& bindings() {
  static const std::map<std::string, Binding> table = [] {
    std::map<std::string, Binding> t;
    HRES_REAL("site.latitude_deg", site.latitude_deg);
    HRES_REAL("site.ground_reflectance", site.ground_reflectance);
    HRES_REAL("site.reference_height_m", site.reference_height_m);
    HRES_REAL("site.power_law_alpha", site.power_law_alpha);
    HRES_REAL("site.bus_voltage_v", site.bus_voltage_v);
    t["site.transposition_convention"] = {
        [](AppConfig& c, const std::string& v) { c.site.transposition = parse_transposition(v); },
        [](const AppConfig& c) { return to_string(c.site.transposition); }};

    HRES_REAL("catalog.wind.rated_power_w", catalog.wind.rated_power_w);
    HRES_REAL("catalog.wind.cut_in_ms", catalog.wind.cut_in_ms);
    HRES_REAL("catalog.wind.rated_ms", catalog.wind.rated_ms);
    HRES_REAL("catalog.wind.cut_out_ms", catalog.wind.cut_out_ms);
    HRES_REAL("catalog.wind.swept_area_m2", catalog.wind.swept_area_m2);
    HRES_REAL("catalog.wind.efficiency", catalog.wind.efficiency);
    HRES_REAL("catalog.wind.h_low_m", catalog.wind.h_low_m);
    HRES_REAL("catalog.wind.h_high_m", catalog.wind.h_high_m);
    HRES_REAL("catalog.wind.capital_cost_usd", catalog.wind.capital_cost_usd);
    HRES_REAL("catalog.wind.tower_cost_per_m_usd", catalog.wind.tower_cost_per_m_usd);
    HRES_REAL("catalog.wind.maint_per_year_usd", catalog.wind.maint_per_year_usd);
    HRES_REAL("catalog.wind.tower_maint_per_m_year_usd", catalog.wind.tower_maint_per_m_year_usd);

    HRES_REAL("catalog.pv.voc_stc_v", catalog.pv.voc_stc_v);
    HRES_REAL("catalog.pv.isc_stc_a", catalog.pv.isc_stc_a);
    HRES_REAL("catalog.pv.vmax_v", catalog.pv.vmax_v);
    HRES_REAL("catalog.pv.imax_a", catalog.pv.imax_a);
    HRES_REAL("catalog.pv.pmax_w", catalog.pv.pmax_w);
    HRES_REAL("catalog.pv.capital_cost_usd", catalog.pv.capital_cost_usd);
    HRES_REAL("catalog.pv.maint_per_year_usd", catalog.pv.maint_per_year_usd);
    HRES_REAL("catalog.pv.kv_v_per_c", catalog.pv.kv_v_per_c);
    HRES_REAL("catalog.pv.ki_a_per_c", catalog.pv.ki_a_per_c);
    HRES_REAL("catalog.pv.noct_c", catalog.pv.noct_c);
    HRES_REAL("catalog.pv.converter_efficiency", catalog.pv.converter_efficiency);
    HRES_INT("catalog.pv.n_series", catalog.pv.n_series);
    HRES_INT("catalog.pv.n_parallel_per_unit", catalog.pv.n_parallel_per_unit);
    t["catalog.pv.voc_convention"] = {
        [](AppConfig& c, const std::string& v) { c.catalog.pv.voc_convention = parse_voc_convention(v); },
        [](const AppConfig& c) { return to_string(c.catalog.pv.voc_convention); }};

    HRES_REAL("catalog.biogas.rated_power_w", catalog.biogas.rated_power_w);
    HRES_REAL("catalog.biogas.engine_cost_usd", catalog.biogas.engine_cost_usd);
    HRES_REAL("catalog.biogas.engine_maint_per_year_usd", catalog.biogas.engine_maint_per_year_usd);
    HRES_REAL("catalog.biogas.digester_volume_m3", catalog.biogas.digester_volume_m3);
    HRES_REAL("catalog.biogas.digester_cost_usd", catalog.biogas.digester_cost_usd);
    HRES_REAL("catalog.biogas.digester_maint_per_year_usd", catalog.biogas.digester_maint_per_year_usd);
    HRES_REAL("catalog.biogas.gas_rate_m3_per_kg", catalog.biogas.gas_rate_m3_per_kg);
    HRES_REAL("catalog.biogas.calorific_kcal_per_m3", catalog.biogas.calorific_kcal_per_m3);
    HRES_REAL("catalog.biogas.engine_efficiency", catalog.biogas.engine_efficiency);

    HRES_REAL("catalog.battery.voltage_v", catalog.battery.voltage_v);
    HRES_REAL("catalog.battery.capacity_ah", catalog.battery.capacity_ah);
    HRES_REAL("catalog.battery.capital_cost_usd", catalog.battery.capital_cost_usd);
    HRES_REAL("catalog.battery.maint_per_year_usd", catalog.battery.maint_per_year_usd);
    HRES_REAL("catalog.battery.self_discharge_per_day", catalog.battery.self_discharge_per_day);
    HRES_REAL("catalog.battery.charge_efficiency", catalog.battery.charge_efficiency);
    HRES_REAL("catalog.battery.discharge_efficiency", catalog.battery.discharge_efficiency);
    HRES_REAL("catalog.battery.soc_min", catalog.battery.soc_min);
    HRES_REAL("catalog.battery.soc_max", catalog.battery.soc_max);
    HRES_REAL("catalog.battery.life_years", catalog.battery.life_years);

    HRES_INT("econ.horizon_years", econ.horizon_years);
    HRES_INT("econ.y_bat_replacements", econ.y_bat_replacements);
    HRES_REAL("econ.tariff_usd_per_kwh", econ.tariff_usd_per_kwh);
    t["econ.cost_model"] = {[](AppConfig& c, const std::string& v) { c.econ.cost_model = parse_cost_model(v); },
                            [](const AppConfig& c) { return to_string(c.econ.cost_model); }};

    HRES_REAL("fitness.lpsp_tolerance", fitness.lpsp_tolerance);
    HRES_REAL("fitness.penalty_scale_usd", fitness.penalty_scale_usd);

    HRES_REAL("bounds.n_pv_max", bounds.n_pv_max);
    HRES_REAL("bounds.n_wg_max", bounds.n_wg_max);
    HRES_REAL("bounds.n_bat_max", bounds.n_bat_max);
    HRES_REAL("bounds.n_bio_max", bounds.n_bio_max);
    HRES_REAL("bounds.tilt_min", bounds.tilt_min);
    HRES_REAL("bounds.tilt_max", bounds.tilt_max);

    HRES_INT("synth.seed", synth_seed);
    HRES_REAL("synth.peak_irradiance_w_m2", synth.peak_irradiance_w_m2);
    HRES_REAL("synth.cloud_variability", synth.cloud_variability);
    HRES_REAL("synth.weibull_shape", synth.weibull_shape);
    HRES_REAL("synth.weibull_scale_ms", synth.weibull_scale_ms);
    HRES_REAL("synth.wind_noise", synth.wind_noise);
    HRES_REAL("synth.temp_mean_c", synth.temp_mean_c);
    HRES_REAL("synth.temp_annual_amplitude_c", synth.temp_annual_amplitude_c);
    HRES_REAL("synth.temp_daily_amplitude_c", synth.temp_daily_amplitude_c);
    HRES_REAL("synth.waste_per_day_kg", synth.waste_per_day_kg);
    HRES_REAL("synth.load_noise", synth.load_noise);
    t["synth.load_profile_w"] = {
        [](AppConfig& c, const std::string& v) {
          const auto items = split_list(v);
          if (items.size() != 24) throw std::invalid_argument("expected 24 hourly values");
          for (std::size_t h = 0; h < 24; ++h) c.synth.load_profile[h] = to_double(items[h]);
        },
        [](const AppConfig& c) {
          std::string s;
          for (double v : c.synth.load_profile) s += (s.empty() ? "" : ",") + detail::format_double(v);
          return s;
        }};

    HRES_INT("optimizer.population", bench.optimizer.population);
    HRES_INT("optimizer.iterations", bench.optimizer.iterations);
    HRES_INT("optimizer.seed", bench.optimizer.seed);
    t["optimizer.algorithm"] = {
        [](AppConfig& c, const std::string& v) { c.bench.optimizer.algorithm = opt::parse_algorithm(v); },
        [](const AppConfig& c) { return opt::to_string(c.bench.optimizer.algorithm); }};

    HRES_INT("bench.runs", bench.runs);
    HRES_INT("bench.parallelism", bench.parallelism);
    HRES_INT("bench.master_seed", bench.master_seed);
    t["bench.algorithms"] = {
        [](AppConfig& c, const std::string& v) { c.bench.algorithms = parse_algorithm_list(v); },
        [](const AppConfig& c) { return join_algorithms(c.bench.algorithms); }};
    return t;
  }();
  return table;
}

#undef HRES_REAL
#undef HRES_INT

inline constexpr std::string_view kParamsPrefix = "optimizer.params.";

/// "optimizer.params.<ALG>.<name>": per-algorithm parameter overrides.
inline bool set_algorithm_param(AppConfig& c, const std::string& key, const std::string& value) {
  if (key.rfind(kParamsPrefix, 0) != 0) return false;
  const std::string rest = key.substr(kParamsPrefix.size());
  const auto dot = rest.find('.');
  if (dot == std::string::npos) throw std::invalid_argument("expected optimizer.params.<ALGORITHM>.<name>");
  const auto kind = opt::parse_algorithm(rest.substr(0, dot));
  const std::string name = rest.substr(dot + 1);
  const auto defaults = opt::default_params(kind);
  if (!defaults.count(name)) throw std::invalid_argument("unknown " + opt::to_string(kind) + " parameter '" + name + "'");
  c.bench.algorithm_params[kind][name] = to_double(value);
  return true;
}

}  // namespace config_detail

/// Applies one "section.key = value" setting.
inline void set_config_value(AppConfig& c, const std::string& key, const std::string& value) {
  try {
    if (config_detail::set_algorithm_param(c, key, value)) return;
    const auto& table = config_detail::bindings();
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown key '" + key + "'");
    it->second.set(c, value);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

/// Every known key; per-algorithm parameter keys are listed with their defaults.
inline std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, b] : config_detail::bindings()) keys.push_back(k);
  return keys;
}

/// Parses config text on top of the defaults in base. source names the
/// origin in error messages.
inline AppConfig parse_config(std::istream& in, AppConfig base = {}, const std::string& source = "config") {
  std::string line, section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto at = [&](const std::string& what) {
      return ConfigError(source + ":" + std::to_string(line_no) + ": " + what);
    };
    if (const auto hash = line.find_first_of("#;"); hash != std::string::npos) line.erase(hash);
    const std::string text = detail::trim(line);
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') throw at("unterminated section header");
      section = detail::trim(std::string_view(text).substr(1, text.size() - 2));
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw at("expected key = value");
    const std::string key = detail::trim(std::string_view(text).substr(0, eq));
    const std::string value = detail::trim(std::string_view(text).substr(eq + 1));
    if (key.empty()) throw at("empty key");
    try {
      set_config_value(base, section.empty() ? key : section + "." + key, value);
    } catch (const ConfigError& e) {
      throw at(e.what());
    }
  }
  try {
    base.validate();
  } catch (const std::exception& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return base;
}

inline AppConfig parse_config_string(const std::string& text, AppConfig base = {}) {
  std::istringstream in(text);
  return parse_config(in, std::move(base));
}

inline AppConfig load_config(const std::filesystem::path& path, AppConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open for reading");
  return parse_config(in, std::move(base), path.string());
}

/// Canonical text form: every key under its section, sorted. Parsing the
/// output reproduces the configuration exactly.
inline std::string dump_config(const AppConfig& c) {
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections;
  auto add = [&](const std::string& full, const std::string& value) {
    const auto dot = full.rfind('.');
    sections[full.substr(0, dot)].emplace_back(full.substr(dot + 1), value);
  };
  for (const auto& [k, b] : config_detail::bindings()) add(k, b.get(c));
  for (const auto& [kind, params] : c.bench.algorithm_params)
    for (const auto& [name, value] : params)
      add(std::string(config_detail::kParamsPrefix) + opt::to_string(kind) + "." + name, detail::format_double(value));
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, entries] : sections) {
    out << (first ? "" : "\n") << '[' << name << "]\n";
    first = false;
    for (const auto& [k, v] : entries) out << k << " = " << v << '\n';
  }
  return out.str();
}

/// Digest of the canonical form, recorded in bench reports.
inline std::string config_digest(const AppConfig& c) { return bench::detail::fnv1a_hex(dump_config(c)); }

}  // namespace hres
