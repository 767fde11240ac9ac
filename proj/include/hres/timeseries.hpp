// Hourly site-year data: ingestion, synthesis and validation.
//
// Hour t = 0 is January 1, 00:00 local solar time; day of year n = 1 + t / 24.
// A year is always 8760 hours.
#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hres/rng.hpp"
#include "hres/site.hpp"
#include "hres/solar.hpp"

namespace hres {

inline constexpr std::size_t kHoursPerYear = 8760;

enum class Unit { watt, watt_per_m2, celsius, metre_per_second, kilogram };

inline std::string to_string(Unit u) {
  switch (u) {
    case Unit::watt: return "W";
    case Unit::watt_per_m2: return "W/m2";
    case Unit::celsius: return "degC";
    case Unit::metre_per_second: return "m/s";
    case Unit::kilogram: return "kg";
  }
  return "?";
}

inline Unit parse_unit(std::string_view s) {
  if (s == "W") return Unit::watt;
  if (s == "W/m2" || s == "W/m²") return Unit::watt_per_m2;
  if (s == "degC" || s == "°C" || s == "C") return Unit::celsius;
  if (s == "m/s") return Unit::metre_per_second;
  if (s == "kg") return Unit::kilogram;
  throw std::invalid_argument("unknown unit '" + std::string(s) + "'");
}

inline bool allows_negative(Unit u) { return u == Unit::celsius; }

struct HourlySeries {
  std::vector<double> values;
  Unit unit = Unit::watt;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t t) const { return values[t]; }
};

struct ScenarioData {
  HourlySeries ghi{{}, Unit::watt_per_m2};
  HourlySeries diffuse{{}, Unit::watt_per_m2};
  HourlySeries ambient_temp{{}, Unit::celsius};
  HourlySeries wind_speed_ref{{}, Unit::metre_per_second};
  HourlySeries load{{}, Unit::watt};
  HourlySeries food_waste{{}, Unit::kilogram};
  SiteConfig site;
};

inline int day_of_year(std::size_t hour) { return 1 + static_cast<int>(hour / 24); }

// Mid-hour solar time, so each hourly value stands for the hour it integrates.
inline double solar_hour_of(std::size_t hour) { return static_cast<double>(hour % 24) + 0.5; }

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string series;
  long hour = -1;  // -1 when the rule is not tied to one hour
  std::string rule;

  std::string message() const {
    std::string m = series;
    if (hour >= 0) m += " hour " + std::to_string(hour);
    return m + ": " + rule;
  }
};

inline void check_series(std::string_view name, const HourlySeries& s, std::vector<Violation>& out) {
  if (s.size() != kHoursPerYear) {
    out.push_back({std::string(name), -1,
                   "length " + std::to_string(s.size()) + " ≠ " + std::to_string(kHoursPerYear)});
  }
  for (std::size_t t = 0; t < s.size(); ++t) {
    const double v = s.values[t];
    if (!std::isfinite(v)) {
      out.push_back({std::string(name), static_cast<long>(t), "non-finite value"});
    } else if (v < 0.0 && !allows_negative(s.unit)) {
      out.push_back({std::string(name), static_cast<long>(t), "negative value under unit " + to_string(s.unit)});
    }
  }
}

/// Empty iff every ScenarioData invariant holds.
inline std::vector<Violation> validate_scenario(const ScenarioData& s) {
  std::vector<Violation> out;
  check_series("ghi", s.ghi, out);
  check_series("diffuse", s.diffuse, out);
  check_series("ambient_temp", s.ambient_temp, out);
  check_series("wind_speed_ref", s.wind_speed_ref, out);
  check_series("load", s.load, out);
  check_series("food_waste", s.food_waste, out);
  const std::size_t n = std::min(s.ghi.size(), s.diffuse.size());
  for (std::size_t t = 0; t < n; ++t) {
    if (s.diffuse.values[t] > s.ghi.values[t])
      out.push_back({"diffuse", static_cast<long>(t), "diffuse exceeds ghi"});
  }
  try {
    s.site.validate();
  } catch (const std::invalid_argument& e) {
    out.push_back({"site", -1, e.what()});
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV ingestion

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

inline bool parse_double(const std::string& cell, double& out) {
  if (cell.empty()) return false;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

// Shortest representation that reads back to the same double.
inline std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

inline std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path.string() + ": cannot open for reading");
  return in;
}

}  // namespace detail

/// Reads one hourly series. Each row holds a value in its last column; a
/// non-numeric first line is taken as a header. Rows are numbered from 1.
inline HourlySeries load_series_csv(const std::filesystem::path& path, Unit expected_unit) {
  auto in = detail::open_for_read(path);
  HourlySeries s{{}, expected_unit};
  s.values.reserve(kHoursPerYear);
  std::string line;
  std::size_t line_no = 0;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_csv(line);
    double v = 0.0;
    const bool ok = detail::parse_double(cells.back(), v);
    if (!ok && line_no == 1) continue;  // header
    ++row;
    if (!ok)
      throw std::runtime_error(path.string() + ": row " + std::to_string(row) + ": non-numeric cell '" +
                               cells.back() + "'");
    if (!std::isfinite(v))
      throw std::runtime_error(path.string() + ": row " + std::to_string(row) + ": non-finite value");
    if (v < 0.0 && !allows_negative(expected_unit))
      throw std::runtime_error(path.string() + ": row " + std::to_string(row) + ": negative value under unit " +
                               to_string(expected_unit));
    s.values.push_back(v);
  }
  if (s.values.size() != kHoursPerYear)
    throw std::runtime_error(path.string() + ": row count " + std::to_string(s.values.size()) + " ≠ " +
                             std::to_string(kHoursPerYear));
  return s;
}

inline constexpr std::string_view kScenarioHeader = "hour,ghi_w_m2,diffuse_w_m2,temp_c,wind_ms,load_w,foodwaste_kg";

/// Reads the seven-column scenario file. The site is not stored in the file.
inline ScenarioData load_scenario_csv(const std::filesystem::path& path, const SiteConfig& site) {
  auto in = detail::open_for_read(path);
  ScenarioData s;
  s.site = site;
  HourlySeries* cols[] = {&s.ghi, &s.diffuse, &s.ambient_temp, &s.wind_speed_ref, &s.load, &s.food_waste};
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
  if (detail::split_csv(line).size() != 7)
    throw std::runtime_error(path.string() + ": header must have 7 columns: " + std::string(kScenarioHeader));
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    ++row;
    const auto cells = detail::split_csv(line);
    if (cells.size() != 7)
      throw std::runtime_error(path.string() + ": row " + std::to_string(row) + ": expected 7 columns, got " +
                               std::to_string(cells.size()));
    for (int c = 0; c < 6; ++c) {
      double v = 0.0;
      if (!detail::parse_double(cells[c + 1], v))
        throw std::runtime_error(path.string() + ": row " + std::to_string(row) + ": non-numeric cell '" +
                                 cells[c + 1] + "'");
      if (!std::isfinite(v))
        throw std::runtime_error(path.string() + ": row " + std::to_string(row) + ": non-finite value");
      cols[c]->values.push_back(v);
    }
  }
  if (row != kHoursPerYear)
    throw std::runtime_error(path.string() + ": row count " + std::to_string(row) + " ≠ " +
                             std::to_string(kHoursPerYear));
  const auto violations = validate_scenario(s);
  if (!violations.empty()) throw std::runtime_error(path.string() + ": " + violations.front().message());
  return s;
}

inline void write_scenario_csv(const ScenarioData& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << kScenarioHeader << '\n';
  for (std::size_t t = 0; t < s.ghi.size(); ++t) {
    out << t << ',' << detail::format_double(s.ghi[t]) << ',' << detail::format_double(s.diffuse[t]) << ','
        << detail::format_double(s.ambient_temp[t]) << ',' << detail::format_double(s.wind_speed_ref[t]) << ','
        << detail::format_double(s.load[t]) << ',' << detail::format_double(s.food_waste[t]) << '\n';
  }
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

// ---------------------------------------------------------------------------
// Synthesis

using DailyProfile = std::array<double, 24>;

// Stand-in campus profile (W): night base, morning ramp, working-day plateau.
inline constexpr DailyProfile kDefaultLoadProfile = {
    1800, 1700, 1650, 1600, 1650, 1900, 2600, 3600, 4800, 5600, 6000, 6200,
    6000, 6100, 6200, 6000, 5500, 4800, 4300, 3900, 3400, 2900, 2400, 2000};

/// Hourly load drawn as max(0, N(profile[t mod 24], noise * profile[t mod 24])).
inline HourlySeries synth_load(const DailyProfile& daily_profile, double noise_fraction, std::uint64_t seed) {
  for (double v : daily_profile)
    if (!(v >= 0.0)) throw std::invalid_argument("daily load profile entries must be >= 0");
  if (!(noise_fraction >= 0.0 && noise_fraction < 1.0))
    throw std::invalid_argument("load noise fraction must lie in [0, 1)");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit_normal(0.0, 1.0);
  HourlySeries s{std::vector<double>(kHoursPerYear), Unit::watt};
  for (std::size_t t = 0; t < kHoursPerYear; ++t) {
    const double mu = daily_profile[t % 24];
    const double z = unit_normal(rng);
    s.values[t] = std::max(0.0, mu + noise_fraction * mu * z);
  }
  return s;
}

struct SynthParams {
  double peak_irradiance_w_m2 = 950.0;  // clear-sky ghi with the sun at zenith
  double cloud_variability = 0.5;       // daily sky transmittance drawn from U[1 - v, 1]
  double weibull_shape = 2.0;
  double weibull_scale_ms = 6.0;        // at the reference height
  double wind_noise = 1.0;              // 0: constant Weibull mean, 1: pure Weibull draws
  double temp_mean_c = 26.0;
  double temp_annual_amplitude_c = 5.0;
  double temp_daily_amplitude_c = 4.0;
  double waste_per_day_kg = 200.0;
  DailyProfile load_profile = kDefaultLoadProfile;
  double load_noise = 0.1;

  void validate() const {
    if (!(peak_irradiance_w_m2 >= 0.0)) throw std::invalid_argument("peak irradiance must be >= 0");
    if (!(cloud_variability >= 0.0 && cloud_variability <= 1.0))
      throw std::invalid_argument("cloud variability must lie in [0, 1]");
    if (!(weibull_shape > 0.0)) throw std::invalid_argument("Weibull shape must be > 0");
    if (!(weibull_scale_ms > 0.0)) throw std::invalid_argument("Weibull scale must be > 0");
    if (!(wind_noise >= 0.0 && wind_noise <= 1.0)) throw std::invalid_argument("wind noise must lie in [0, 1]");
    if (!(waste_per_day_kg >= 0.0)) throw std::invalid_argument("waste per day must be >= 0");
  }
};

/// Seeded synthetic site-year. Irradiance is a cos-zenith bell scaled by a
/// daily transmittance, split into diffuse with the clearness-index
/// correlation; wind is Weibull at the reference height; temperature is a
/// sum of annual and daily sinusoids; waste arrives evenly over the day.
inline ScenarioData synth_scenario(const SiteConfig& site, const SynthParams& p, std::uint64_t seed) {
  site.validate();
  p.validate();
  ScenarioData s;
  s.site = site;
  // Separate streams so changing one component's parameters leaves the others intact.
  std::mt19937_64 sky_rng(derive_seed(seed, {1})), wind_rng(derive_seed(seed, {2}));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::weibull_distribution<double> weibull(p.weibull_shape, p.weibull_scale_ms);
  const double wind_mean = p.weibull_scale_ms * std::tgamma(1.0 + 1.0 / p.weibull_shape);

  s.ghi.values.resize(kHoursPerYear);
  s.diffuse.values.resize(kHoursPerYear);
  s.ambient_temp.values.resize(kHoursPerYear);
  s.wind_speed_ref.values.resize(kHoursPerYear);
  s.food_waste.values.resize(kHoursPerYear);

  double transmittance = 1.0;
  for (std::size_t t = 0; t < kHoursPerYear; ++t) {
    const int n = day_of_year(t);
    if (t % 24 == 0) transmittance = 1.0 - p.cloud_variability * unit(sky_rng);
    const double cz = solar::cos_zenith(site.latitude_deg, solar::declination(n),
                                        solar::hour_angle(solar_hour_of(t)));
    double ghi = 0.0;
    double diffuse = 0.0;
    if (cz > 0.0) {
      const double g0 = solar::extraterrestrial_horizontal(n, cz);
      ghi = std::min(g0, p.peak_irradiance_w_m2 * std::pow(cz, 1.15) * transmittance);
      diffuse = ghi * solar::diffuse_fraction(solar::clearness_index(ghi, n, cz));
    }
    s.ghi.values[t] = ghi;
    s.diffuse.values[t] = std::min(diffuse, ghi);

    const double hour = static_cast<double>(t % 24);
    s.ambient_temp.values[t] = p.temp_mean_c +
                               p.temp_annual_amplitude_c * std::sin(2.0 * std::numbers::pi * (n - 105) / 365.0) +
                               p.temp_daily_amplitude_c * std::sin(2.0 * std::numbers::pi * (hour - 9.0) / 24.0);

    const double draw = weibull(wind_rng);
    s.wind_speed_ref.values[t] = (1.0 - p.wind_noise) * wind_mean + p.wind_noise * draw;
    s.food_waste.values[t] = p.waste_per_day_kg / 24.0;
  }
  s.load = synth_load(p.load_profile, p.load_noise, derive_seed(seed, {3}));
  return s;
}

}  // namespace hres
