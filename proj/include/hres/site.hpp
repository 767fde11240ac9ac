#pragma once

#include <stdexcept>
#include <string>

namespace hres {

// Which sign the tilt enters the beam-ratio numerator with: the default
// form uses (latitude + tilt), the textbook equator-facing form (latitude - tilt).
enum class TranspositionConvention { paper, standard };

inline std::string to_string(TranspositionConvention c) {
  return c == TranspositionConvention::paper ? "paper" : "standard";
}

inline TranspositionConvention parse_transposition(const std::string& s) {
  if (s == "paper") return TranspositionConvention::paper;
  if (s == "standard") return TranspositionConvention::standard;
  throw std::invalid_argument("transposition_convention must be paper|standard, got '" + s + "'");
}

/// Site-wide constants shared by the solar, wind and battery models.
struct SiteConfig {
  double latitude_deg = 24.0;
  double ground_reflectance = 0.2;
  double reference_height_m = 33.0;
  double power_law_alpha = 0.15;
  double bus_voltage_v = 24.0;
  TranspositionConvention transposition = TranspositionConvention::paper;

  void validate() const {
    if (!(latitude_deg >= -90.0 && latitude_deg <= 90.0))
      throw std::invalid_argument("site.latitude_deg must lie in [-90, 90]");
    if (!(ground_reflectance >= 0.0 && ground_reflectance <= 1.0))
      throw std::invalid_argument("site.ground_reflectance must lie in [0, 1]");
    if (!(reference_height_m > 0.0))
      throw std::invalid_argument("site.reference_height_m must be > 0");
    if (!(power_law_alpha > 0.0))
      throw std::invalid_argument("site.power_law_alpha must be > 0");
    if (!(bus_voltage_v > 0.0))
      throw std::invalid_argument("site.bus_voltage_v must be > 0");
  }
};

}  // namespace hres
