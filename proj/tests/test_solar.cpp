#include <gtest/gtest.h>

#include "hres/solar.hpp"
#include "support/oracles.hpp"

using namespace hres;
using namespace hres::solar;

TEST(Declination, WorkedValues) {
  EXPECT_NEAR(declination(81), 0.0, 1e-12);
  EXPECT_NEAR(oracle::declination_deg(1), -23.01, 0.005);
  EXPECT_NEAR(declination(1), oracle::declination_deg(1), 1e-12);
  EXPECT_NEAR(declination(1), -23.01, 0.005);
  EXPECT_NEAR(oracle::declination_deg(172), 23.45, 0.01);
  EXPECT_NEAR(declination(172), 23.45, 0.01);
}

TEST(Declination, BoundedOverTheYear) {
  for (int n = 1; n <= 365; ++n) {
    EXPECT_LE(std::abs(declination(n)), kMaxDeclination + 1e-12);
  }
  EXPECT_THROW(declination(0), std::invalid_argument);
  EXPECT_THROW(declination(366), std::invalid_argument);
}

TEST(HourAngle, WorkedValues) {
  EXPECT_DOUBLE_EQ(hour_angle(12), 0.0);
  EXPECT_DOUBLE_EQ(hour_angle(10), -30.0);
  EXPECT_DOUBLE_EQ(hour_angle(18), 90.0);
  EXPECT_THROW(hour_angle(-1), std::invalid_argument);
  EXPECT_THROW(hour_angle(25), std::invalid_argument);
}

TEST(BeamRatio, FlatPlaneIsOne) {
  for (double omega : {-60.0, 0.0, 45.0})
    EXPECT_DOUBLE_EQ(*beam_ratio({10.0, omega, 24.0, 0.0}), 1.0);
}

TEST(BeamRatio, WorkedValues) {
  const double a = oracle::beam_ratio_summed(24, 30, 0, 0);
  EXPECT_NEAR(a, std::cos(oracle::rad(54)) / std::cos(oracle::rad(24)), 1e-12);
  EXPECT_NEAR(a, 0.6434, 0.0005);
  EXPECT_NEAR(*beam_ratio({0.0, 0.0, 24.0, 30.0}), a, 1e-12);

  const double b = oracle::beam_ratio_summed(24, 30, 23.45, 30);
  EXPECT_NEAR(b, 0.8888, 0.0005);
  EXPECT_NEAR(*beam_ratio({23.45, 30.0, 24.0, 30.0}), b, 1e-12);
}

TEST(BeamRatio, StandardConventionSubtractsTilt) {
  const auto r = beam_ratio({0.0, 0.0, 24.0, 30.0}, TranspositionConvention::standard);
  EXPECT_NEAR(*r, std::cos(oracle::rad(-6)) / std::cos(oracle::rad(24)), 1e-12);
}

TEST(BeamRatio, SunDownHasNoRatio) {
  EXPECT_FALSE(beam_ratio({0.0, 120.0, 24.0, 30.0}).has_value());
  EXPECT_THROW(beam_ratio({0.0, 0.0, 24.0, 95.0}), std::invalid_argument);
}

TEST(BeamRatio, ClampedNearTheHorizon) {
  // Low sun with a steep tilt makes the raw ratio blow up; it stays within the cap.
  for (double omega = -89.0; omega <= 89.0; omega += 0.5) {
    const auto r = beam_ratio({-20.0, omega, 24.0, 60.0}, TranspositionConvention::standard);
    if (r) {
      EXPECT_GE(*r, 0.0);
      EXPECT_LE(*r, kBeamRatioCap);
    }
  }
}

TEST(DiffuseFraction, WorkedValues) {
  EXPECT_DOUBLE_EQ(diffuse_fraction(0.0), 1.0);
  EXPECT_NEAR(diffuse_fraction(0.1), 1.0 - 0.09 * 0.1, 1e-12);
  EXPECT_NEAR(diffuse_fraction(0.1), 0.991, 1e-9);
  EXPECT_NEAR(oracle::diffuse_fraction_mid(0.5), 0.6592, 0.0005);
  EXPECT_NEAR(diffuse_fraction(0.5), oracle::diffuse_fraction_mid(0.5), 1e-12);
  EXPECT_DOUBLE_EQ(diffuse_fraction(0.9), 0.165);
}

TEST(DiffuseFraction, ContinuousAtFirstBreakAndBounded) {
  EXPECT_NEAR(diffuse_fraction(0.22), diffuse_fraction(0.22 + 1e-9), 0.003);
  for (int i = 0; i <= 1000; ++i) {
    const double f = diffuse_fraction(i / 1000.0);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
  }
  EXPECT_THROW(diffuse_fraction(-0.1), std::invalid_argument);
  EXPECT_THROW(diffuse_fraction(1.1), std::invalid_argument);
}

TEST(TiltedIrradiance, WorkedValues) {
  EXPECT_DOUBLE_EQ(tilted_irradiance(640.0, 120.0, 1.0, 0.0, 0.2), 640.0);
  const double g = oracle::tilted(800, 200, 1.1, 30, 0.2);
  EXPECT_NEAR(g, 857.3, 0.1);
  EXPECT_NEAR(tilted_irradiance(800, 200, 1.1, 30, 0.2), g, 1e-9);
  EXPECT_DOUBLE_EQ(tilted_irradiance(0, 0, 1.0, 30, 0.2), 0.0);
}

TEST(TiltedIrradiance, RejectsInconsistentInputs) {
  EXPECT_THROW(tilted_irradiance(100, 200, 1.0, 30, 0.2), std::invalid_argument);
  EXPECT_THROW(tilted_irradiance(100, 50, 1.0, 91, 0.2), std::invalid_argument);
  EXPECT_THROW(tilted_irradiance(100, 50, 1.0, 30, 1.5), std::invalid_argument);
}

TEST(Extraterrestrial, ZeroAtNightAndClearnessBounded) {
  EXPECT_EQ(extraterrestrial_horizontal(100, -0.2), 0.0);
  EXPECT_NEAR(extraterrestrial_horizontal(1, 1.0), 1367.0 * (1.0 + 0.033 * std::cos(oracle::rad(360.0 / 365.0))),
              1e-9);
  EXPECT_EQ(clearness_index(500.0, 100, 0.0), 0.0);
  EXPECT_LE(clearness_index(5000.0, 100, 0.5), 1.0);
}
