#include <gtest/gtest.h>

#include "hres/components.hpp"
#include "support/oracles.hpp"

using namespace hres;

namespace {
const WindTurbineSpec kWind{};
const PVModuleSpec kPv{};
const BiogasSpec kBio{};
const BatterySpec kBat{};
const SiteConfig kSite{};
}  // namespace

TEST(WindCurve, WorkedValues) {
  EXPECT_EQ(wind_specific_power(2.0, kWind), 0.0);
  EXPECT_NEAR(oracle::rated_specific_power(), 221.24, 0.01);
  EXPECT_NEAR(wind_specific_power(11.0, kWind), oracle::rated_specific_power(), 1e-12);
  EXPECT_NEAR(oracle::wind_specific_power_at(7.0), 55.06, 0.05);
  EXPECT_NEAR(wind_specific_power(7.0, kWind), oracle::wind_specific_power_at(7.0), 1e-9);
  EXPECT_EQ(wind_specific_power(25.0, kWind), 0.0);
}

TEST(WindCurve, MonotoneBelowCutOut) {
  double prev = 0.0;
  for (double v = 0.0; v < kWind.cut_out_ms; v += 0.01) {
    const double p = wind_specific_power(v, kWind);
    EXPECT_GE(p, prev - 1e-12) << v;
    EXPECT_LE(p, kWind.rated_specific_power() + 1e-12);
    prev = p;
  }
  EXPECT_THROW(wind_specific_power(-1.0, kWind), std::invalid_argument);
}

TEST(WindHeight, WorkedValues) {
  EXPECT_DOUBLE_EQ(wind_speed_at_height(5.0, 33.0, kSite), 5.0);
  EXPECT_NEAR(oracle::height_scaled(5, 40), 5.146, 0.005);
  EXPECT_NEAR(wind_speed_at_height(5.0, 40.0, kSite), oracle::height_scaled(5, 40), 1e-12);
  EXPECT_NEAR(oracle::height_scaled(5, 11), 4.240, 0.005);
  EXPECT_NEAR(wind_speed_at_height(5.0, 11.0, kSite), oracle::height_scaled(5, 11), 1e-12);
  EXPECT_THROW(wind_speed_at_height(5.0, 0.0, kSite), std::invalid_argument);
}

TEST(WindOutput, WorkedValues) {
  EXPECT_EQ(wind_electric_power(0.0, kWind, 4), 0.0);
  EXPECT_NEAR(oracle::turbine_output(55.06, 1), 224.0, 0.5);
  EXPECT_NEAR(wind_electric_power(55.06, kWind, 1), oracle::turbine_output(55.06, 1), 1e-9);
  EXPECT_NEAR(oracle::turbine_output(221.24, 19), 17101, 5);
  EXPECT_NEAR(wind_electric_power(221.24, kWind, 19), oracle::turbine_output(221.24, 19), 1e-9);
  EXPECT_THROW(wind_electric_power(10.0, kWind, -1), std::invalid_argument);
}

TEST(PvCell, WorkedValues) {
  EXPECT_DOUBLE_EQ(pv_cell_temperature(31.0, 0.0, kPv), 31.0);
  EXPECT_NEAR(oracle::cell_temp(25, 1000), 52.0, 1e-12);
  EXPECT_NEAR(pv_cell_temperature(25, 1000, kPv), 52.0, 1e-12);
  EXPECT_NEAR(oracle::cell_temp(30, 800), 51.6, 1e-12);
  EXPECT_NEAR(pv_cell_temperature(30, 800, kPv), 51.6, 1e-12);
}

TEST(PvModule, WorkedValues) {
  EXPECT_NEAR(oracle::fill_factor(), 0.7927, 0.0005);
  EXPECT_NEAR(kPv.fill_factor(), oracle::fill_factor(), 1e-12);
  EXPECT_EQ(pv_module_power(0.0, 25.0, kPv), 0.0);
  EXPECT_NEAR(oracle::module_power(1000, 25), 279.4, 0.5);
  EXPECT_NEAR(pv_module_power(1000, 25, kPv), oracle::module_power(1000, 25), 1e-9);
}

TEST(PvModule, Delta25ConventionOnlyShiftsVoc) {
  PVModuleSpec alt = kPv;
  alt.voc_convention = VocConvention::delta25;
  // At 52 C the alternative form keeps 25 * K_V more volts.
  const double ratio = pv_module_power(1000, 25, alt) / pv_module_power(1000, 25, kPv);
  EXPECT_NEAR(ratio, (64.8 - 0.176 * 27.0) / (64.8 - 0.176 * 52.0), 1e-12);
  EXPECT_EQ(parse_voc_convention(to_string(VocConvention::delta25)), VocConvention::delta25);
  EXPECT_THROW(parse_voc_convention("other"), std::invalid_argument);
}

TEST(PvArray, WorkedValues) {
  EXPECT_EQ(pv_array_power(279.4, 0, kPv), 0.0);
  EXPECT_NEAR(oracle::array_power(279.4, 69), 18315, 20);
  EXPECT_NEAR(pv_array_power(279.4, 69, kPv), oracle::array_power(279.4, 69), 1e-9);
  EXPECT_NEAR(oracle::array_power(279.4, 1), 265.4, 0.5);
  EXPECT_NEAR(pv_array_power(279.4, 1, kPv), oracle::array_power(279.4, 1), 1e-12);
}

TEST(Biogas, VolumeWithDailyCap) {
  EXPECT_EQ(biogas_volume(0.0, kBio), 0.0);
  EXPECT_NEAR(biogas_volume(100.0, kBio), 5.0, 1e-12);
  EXPECT_NEAR(biogas_volume(500.0, kBio), 22.183, 1e-12);
  EXPECT_THROW(biogas_volume(-1.0, kBio), std::invalid_argument);
}

TEST(Biogas, PowerWithEngineCap) {
  EXPECT_EQ(biogas_power(0.0, kBio, 3), 0.0);
  EXPECT_NEAR(oracle::biogas_watts(1.0), 1639.5, 1.0);
  EXPECT_NEAR(biogas_power(1.0, kBio, 100), oracle::biogas_watts(1.0), 1e-9);
  EXPECT_GT(oracle::biogas_watts(10.0), 9000.0);
  EXPECT_DOUBLE_EQ(biogas_power(10.0, kBio, 3), 9000.0);
}

TEST(BatteryBank, LayoutFromBusVoltage) {
  const auto bank = battery_bank_layout(3343, kBat, kSite);
  EXPECT_EQ(bank.n_series, 2);
  EXPECT_NEAR(bank.total_capacity_ah, oracle::bank_capacity_ah(3343), 1e-9);
  EXPECT_NEAR(bank.total_capacity_ah, 1193451.0, 1e-6);
  EXPECT_EQ(bank.battery_count(), 6686);
  const auto empty = battery_bank_layout(0, kBat, kSite);
  EXPECT_EQ(empty.total_capacity_ah, 0.0);
  EXPECT_EQ(empty.energy_max_kwh, 0.0);
  SiteConfig odd;
  odd.bus_voltage_v = 30.0;
  EXPECT_THROW(battery_bank_layout(1, kBat, odd), std::invalid_argument);
  EXPECT_THROW(battery_bank_layout(-1, kBat, kSite), std::invalid_argument);
}

TEST(SocStep, IdleDriftsBySelfDischarge) {
  const auto bank = battery_bank_layout(10, kBat, kSite);
  const auto r = soc_step(0.5, 0.0, 1.0, bank, kBat);
  EXPECT_NEAR(oracle::self_discharged(0.5), 0.499958, 1e-6);
  EXPECT_NEAR(r.soc, oracle::self_discharged(0.5), 1e-15);
  EXPECT_EQ(r.charged_wh, 0.0);
  EXPECT_EQ(r.discharged_wh, 0.0);
  EXPECT_EQ(r.unmet_wh, 0.0);
  EXPECT_EQ(r.surplus_wh, 0.0);
}

TEST(SocStep, FullBankCurtailsAlmostEverything) {
  const auto bank = battery_bank_layout(10, kBat, kSite);
  const auto r = soc_step(kBat.soc_max, 1000.0, 1.0, bank, kBat);
  EXPECT_DOUBLE_EQ(r.soc, kBat.soc_max);
  // Only the self-discharge gap can be refilled.
  const double gap_wh = kBat.soc_max * kBat.self_discharge_per_day / 24.0 * bank.energy_max_wh() / kBat.charge_efficiency;
  EXPECT_NEAR(r.charged_wh, gap_wh, 1e-6);
  EXPECT_NEAR(r.surplus_wh, 1000.0 - gap_wh, 1e-6);
}

TEST(SocStep, EmptyBankLeavesDemandUnmet) {
  const auto bank = battery_bank_layout(10, kBat, kSite);
  const auto r = soc_step(kBat.soc_min, -1000.0, 1.0, bank, kBat);
  EXPECT_DOUBLE_EQ(r.soc, kBat.soc_min);
  EXPECT_DOUBLE_EQ(r.unmet_wh, 1000.0);
  EXPECT_DOUBLE_EQ(r.discharged_wh, 0.0);
}

TEST(SocStep, ChargeUsesEfficiency) {
  const auto bank = battery_bank_layout(1, kBat, kSite);
  const auto r = soc_step(0.5, 1000.0, 1.0, bank, kBat);
  const double expected = oracle::self_discharged(0.5) + 1000.0 * 0.8 / bank.energy_max_wh();
  EXPECT_NEAR(r.soc, expected, 1e-12);
  EXPECT_DOUBLE_EQ(r.charged_wh, 1000.0);
  EXPECT_DOUBLE_EQ(r.surplus_wh, 0.0);
}

TEST(SocStep, NoBankPassesEverythingThrough) {
  const auto bank = battery_bank_layout(0, kBat, kSite);
  EXPECT_DOUBLE_EQ(soc_step(0.7, 250.0, 1.0, bank, kBat).surplus_wh, 250.0);
  EXPECT_DOUBLE_EQ(soc_step(0.7, -250.0, 1.0, bank, kBat).unmet_wh, 250.0);
}

TEST(SocStep, BookkeepingIdentityHolds) {
  const auto bank = battery_bank_layout(2, kBat, kSite);
  for (double soc : {0.2, 0.35, 0.6, 0.99, 1.0}) {
    for (double net : {-40000.0, -3000.0, -1.0, 0.0, 1.0, 3000.0, 40000.0}) {
      const auto r = soc_step(soc, net, 1.0, bank, kBat);
      EXPECT_NEAR(net, r.charged_wh - r.discharged_wh + r.surplus_wh - r.unmet_wh, 1e-9);
      EXPECT_GE(r.soc, kBat.soc_min);
      EXPECT_LE(r.soc, kBat.soc_max);
      EXPECT_GE(r.charged_wh, 0.0);
      EXPECT_GE(r.discharged_wh, 0.0);
      EXPECT_GE(r.unmet_wh, 0.0);
      EXPECT_GE(r.surplus_wh, 0.0);
    }
  }
  EXPECT_THROW(soc_step(0.1, 0.0, 1.0, bank, kBat), std::invalid_argument);
  EXPECT_THROW(soc_step(0.5, 0.0, 0.0, bank, kBat), std::invalid_argument);
}

TEST(Catalog, DefaultsValidateAndBadSpecsThrow) {
  ComponentCatalog c;
  EXPECT_NO_THROW(c.validate());
  c.pv.vmax_v = 70.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  ComponentCatalog d;
  d.battery.soc_min = 0.9;
  d.battery.soc_max = 0.5;
  EXPECT_THROW(d.validate(), std::invalid_argument);
}
