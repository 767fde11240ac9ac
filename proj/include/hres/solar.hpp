// Solar geometry and plane-of-array irradiance.
//
// All angles cross the API in degrees. Hour angle follows the usual
// convention: negative in the morning, zero at solar noon.
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "hres/site.hpp"

namespace hres::solar {

inline constexpr double kSolarConstant = 1367.0;  // W/m^2
inline constexpr double kMaxDeclination = 23.45;
inline constexpr double kBeamRatioCap = 10.0;

inline double deg2rad(double d) { return d * std::numbers::pi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / std::numbers::pi; }

struct SolarAngles {
  double declination_deg = 0.0;
  double hour_angle_deg = 0.0;
  double latitude_deg = 0.0;
  double tilt_deg = 0.0;
};

inline double declination(int day_of_year) {
  if (day_of_year < 1 || day_of_year > 365)
    throw std::invalid_argument("day of year " + std::to_string(day_of_year) + " outside 1..365");
  return kMaxDeclination * std::sin(deg2rad(360.0 * (284.0 + day_of_year) / 365.0));
}

inline double hour_angle(double solar_hour) {
  if (!(solar_hour >= 0.0 && solar_hour <= 24.0))
    throw std::invalid_argument("solar hour must lie in [0, 24]");
  return 15.0 * (solar_hour - 12.0);
}

// cos of the zenith angle: the beam-ratio denominator.
inline double cos_zenith(double latitude_deg, double declination_deg, double hour_angle_deg) {
  const double phi = deg2rad(latitude_deg);
  const double delta = deg2rad(declination_deg);
  const double omega = deg2rad(hour_angle_deg);
  return std::cos(phi) * std::cos(delta) * std::cos(omega) + std::sin(phi) * std::sin(delta);
}

// Latitude that replaces phi in the numerator for a tilted plane.
inline double effective_latitude(double latitude_deg, double tilt_deg, TranspositionConvention c) {
  return c == TranspositionConvention::paper ? latitude_deg + tilt_deg : latitude_deg - tilt_deg;
}

/// Ratio of beam irradiance on the tilted plane to that on the horizontal.
/// Returns std::nullopt when the sun is at or below the horizon; callers then
/// treat the beam component as zero. The ratio is clamped to [0, 10].
inline std::optional<double> beam_ratio(const SolarAngles& a,
                                        TranspositionConvention c = TranspositionConvention::paper) {
  if (!(a.tilt_deg >= 0.0 && a.tilt_deg <= 90.0))
    throw std::invalid_argument("tilt must lie in [0, 90] degrees");
  const double den = cos_zenith(a.latitude_deg, a.declination_deg, a.hour_angle_deg);
  if (den <= 0.0) return std::nullopt;
  const double num = cos_zenith(effective_latitude(a.latitude_deg, a.tilt_deg, c),
                                a.declination_deg, a.hour_angle_deg);
  if (a.tilt_deg == 0.0) return 1.0;
  return std::clamp(num / den, 0.0, kBeamRatioCap);
}

/// Erbs-form diffuse fraction D/G as a function of the clearness index.
inline double diffuse_fraction(double kt) {
  if (!(kt >= 0.0 && kt <= 1.0)) throw std::invalid_argument("clearness index must lie in [0, 1]");
  double f;
  if (kt <= 0.22) {
    f = 1.0 - 0.09 * kt;
  } else if (kt <= 0.80) {
    const double k2 = kt * kt;
    f = 0.9511 - 0.1604 * kt + 4.388 * k2 - 16.638 * k2 * kt + 12.336 * k2 * k2;
  } else {
    f = 0.165;
  }
  return std::clamp(f, 0.0, 1.0);
}

/// Extraterrestrial irradiance on a horizontal plane (W/m^2), zero with the sun down.
inline double extraterrestrial_horizontal(int day_of_year, double cos_zenith_angle) {
  if (cos_zenith_angle <= 0.0) return 0.0;
  const double eccentricity = 1.0 + 0.033 * std::cos(deg2rad(360.0 * day_of_year / 365.0));
  return kSolarConstant * eccentricity * cos_zenith_angle;
}

/// Clearness index k_t = ghi / extraterrestrial horizontal, clamped to [0, 1].
/// Zero when the sun is down.
inline double clearness_index(double ghi, int day_of_year, double cos_zenith_angle) {
  const double g0 = extraterrestrial_horizontal(day_of_year, cos_zenith_angle);
  if (g0 <= 0.0) return 0.0;
  return std::clamp(ghi / g0, 0.0, 1.0);
}

/// Isotropic-sky transposition of horizontal global/diffuse irradiance.
inline double tilted_irradiance(double ghi, double diffuse, double r_b, double tilt_deg, double rho_g) {
  if (!(diffuse >= 0.0 && ghi >= diffuse))
    throw std::invalid_argument("tilted_irradiance requires ghi >= diffuse >= 0");
  if (!(tilt_deg >= 0.0 && tilt_deg <= 90.0))
    throw std::invalid_argument("tilt must lie in [0, 90] degrees");
  if (!(rho_g >= 0.0 && rho_g <= 1.0))
    throw std::invalid_argument("ground reflectance must lie in [0, 1]");
  if (r_b < 0.0) throw std::invalid_argument("beam ratio must be >= 0");
  const double cb = std::cos(deg2rad(tilt_deg));
  const double g = (ghi - diffuse) * r_b + diffuse * (1.0 + cb) / 2.0 + ghi * rho_g * (1.0 - cb) / 2.0;
  return std::max(0.0, g);
}

}  // namespace hres::solar
