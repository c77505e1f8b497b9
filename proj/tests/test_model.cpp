#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "omit/errors.hpp"
#include "omit/model.hpp"
#include "omit/units.hpp"
#include "support/oracles.hpp"

namespace omit {
namespace {

using testing::paper_device;

TEST(PhotonFlux, ZeroPowerIsZeroFlux) { EXPECT_EQ(photon_flux(0.0, 775e-9), 0.0); }

TEST(PhotonFlux, HalfMilliwattAt775nm) {
  // 0.5e-3 / (hbar 2 pi c / 775 nm), evaluated in 30-digit arithmetic.
  EXPECT_NEAR(photon_flux(0.5e-3, 775e-9), 1.9507201711180435e15, 1e-15 * 1.95e15 * 4);
}

TEST(PhotonFlux, LinearInPower) {
  EXPECT_EQ(photon_flux(2.0e-3, 775e-9), 2.0 * photon_flux(1.0e-3, 775e-9));
}

TEST(PhotonFlux, RejectsBadWavelength) {
  EXPECT_THROW(photon_flux(1e-3, 0.0), ParameterError);
  EXPECT_THROW(photon_flux(1e-3, -1.0), ParameterError);
}

TEST(ZeroPointFluctuation, PaperDevice) {
  EXPECT_NEAR(zero_point_fluctuation(paper_device().mechanics), 9.0002230109905356e-17, 1e-30);
}

TEST(ZeroPointFluctuation, Scaling) {
  MechanicalParams mech = paper_device().mechanics;
  const double base = zero_point_fluctuation(mech);
  mech.m_eff *= 4.0;
  EXPECT_NEAR(zero_point_fluctuation(mech), 0.5 * base, 1e-15 * base);
  mech.m_eff /= 4.0;
  mech.gamma_m *= 17.0;
  EXPECT_EQ(zero_point_fluctuation(mech), base);
}

TEST(Validation, RejectsUnphysicalParameters) {
  Device device = paper_device();
  device.mechanics.gamma_m = 0.0;
  EXPECT_THROW(device.validate(), DegenerateInputError);
  device = paper_device();
  device.cavity.kappa0 = 0.0;
  EXPECT_THROW(device.validate(), ParameterError);
  device = paper_device();
  device.cavity.kappa_ex = -1.0;
  EXPECT_THROW(device.validate(), ParameterError);
  device = paper_device();
  device.mechanics.m_eff = -1.0;
  EXPECT_THROW(device.validate(), ParameterError);
  DriveParams drive;
  drive.input_power = -1.0;
  EXPECT_THROW(drive.validate(), ParameterError);
}

TEST(SteadyState, UndrivenCavity) {
  const auto roots = solve_steady_state(paper_device(), -1e8, 0.0);
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_EQ(roots[0].point.a_bar, 0.0);
  EXPECT_EQ(roots[0].point.x_bar, 0.0);
  EXPECT_TRUE(roots[0].stable);
}

TEST(SteadyState, BareCavityClosedForm) {
  Device device = paper_device();
  device.coupling.g0 = 0.0;
  const double flux = 1e15;
  const double kappa = device.cavity.kappa();
  const auto roots = solve_steady_state(device, 0.0, flux);
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_NEAR(roots[0].point.a_bar, std::sqrt(0.5 * kappa * flux) / (0.5 * kappa),
              1e-15 * roots[0].point.a_bar);
  EXPECT_EQ(roots[0].point.x_bar, 0.0);
}

TEST(SteadyState, BareCavityAtAnyDetuning) {
  Device device = paper_device(0.3);
  device.coupling.g0 = 0.0;
  const double kappa = device.cavity.kappa();
  for (double detuning : {-3.0 * kappa, -0.7 * kappa, 0.2 * kappa, 5.0 * kappa}) {
    const auto roots = solve_steady_state(device, detuning, 3e14);
    ASSERT_EQ(roots.size(), 1u);
    const double expected = std::sqrt(0.3 * kappa * 3e14 /
                                      (detuning * detuning + 0.25 * kappa * kappa));
    EXPECT_NEAR(roots[0].point.a_bar, expected, 4e-16 * expected);
  }
}

// Red-detuned by a few linewidths with strong drive: three static solutions.
TEST(SteadyState, BistableCaseMatchesScan) {
  const Device device = paper_device();
  const double kappa = device.cavity.kappa();
  const double laser_detuning = -3.0 * kappa;
  const double pull_per_flux = kHbar * std::pow(device.coupling.g0, 2) * 0.5 * kappa /
                               (device.mechanics.m_eff * std::pow(device.mechanics.omega_m, 2));
  const double flux = 2.0 * std::pow(kappa, 3) / pull_per_flux;

  const auto roots = solve_steady_state(device, laser_detuning, flux);
  ASSERT_EQ(roots.size(), 3u);
  const auto scan = testing::scan_static_roots(device, laser_detuning, flux);
  ASSERT_EQ(scan.size(), 3u);
  for (const auto& root : roots) {
    EXPECT_LE(root.residual, 1e-10);
    double best = INFINITY;
    for (double x : scan) best = std::min(best, std::abs(device.coupling.g0 * (x - root.point.x_bar)));
    EXPECT_LT(best, device.mechanics.gamma_m);
  }
  // Sorted by |x|; the middle branch is the unstable one.
  EXPECT_LT(std::abs(roots[0].point.x_bar), std::abs(roots[1].point.x_bar));
  EXPECT_LT(std::abs(roots[1].point.x_bar), std::abs(roots[2].point.x_bar));
  EXPECT_TRUE(roots[0].stable);
  EXPECT_FALSE(roots[1].stable);
  EXPECT_TRUE(roots[2].stable);
}

TEST(SteadyState, RootsSatisfyBothSelfConsistencyEquations) {
  const Device device = paper_device(0.2);
  const double kappa = device.cavity.kappa();
  const double flux = photon_flux(5e-3, device.cavity.wavelength);
  for (double detuning : {-2.0 * kappa, -0.5 * kappa, 0.0, 0.4 * kappa}) {
    for (const auto& root : solve_steady_state(device, detuning, flux)) {
      const auto& p = root.point;
      const double shifted = detuning - device.coupling.g0 * p.x_bar;
      EXPECT_NEAR(p.delta_bar, shifted, 1e-9 * std::abs(detuning) + 1.0);
      const double a = std::sqrt(0.2 * kappa * flux) / std::abs(std::complex<double>(0.5 * kappa, -shifted));
      EXPECT_NEAR(p.a_bar, a, 1e-10 * a);
      const double force = device.mechanics.m_eff * std::pow(device.mechanics.omega_m, 2) * p.x_bar;
      const double pressure = -kHbar * device.coupling.g0 * p.a_bar * p.a_bar;
      EXPECT_NEAR(force, pressure, 1e-10 * std::abs(pressure));
    }
  }
}

TEST(OperatingPoint, ZeroPower) {
  DriveParams drive;
  drive.detuning = -hz_to_rad(51.8e6);
  const OperatingPoint op = operating_point(paper_device(), drive);
  EXPECT_EQ(op.omega_c_rate, 0.0);
  EXPECT_EQ(op.cooperativity, 0.0);
}

TEST(OperatingPoint, AgreesWithCubicAtTheImpliedLaserDetuning) {
  const Device device = paper_device(0.3);
  DriveParams drive;
  drive.input_power = 2e-3;
  drive.detuning = -device.mechanics.omega_m;
  const OperatingPoint op = operating_point(device, drive);
  const auto roots = solve_steady_state(device, laser_detuning_for(device, op),
                                        photon_flux(drive.input_power, device.cavity.wavelength));
  ASSERT_FALSE(roots.empty());
  bool found = false;
  for (const auto& root : roots) {
    if (std::abs(root.point.delta_bar - op.delta_bar) < 1e-6 * std::abs(op.delta_bar)) {
      found = true;
      EXPECT_NEAR(root.point.cooperativity, op.cooperativity, 1e-6 * op.cooperativity);
    }
  }
  EXPECT_TRUE(found);
}

TEST(OperatingPoint, CooperativityFromPeakTransparency) {
  EXPECT_NEAR(cooperativity_from_peak_transmission(0.81), 9.0, 1e-12);
  EXPECT_THROW(cooperativity_from_peak_transmission(1.0), ParameterError);
}

TEST(OperatingPoint, CooperativityFromWindowWidth) {
  EXPECT_NEAR(cooperativity_from_window_width(hz_to_rad(500e3), hz_to_rad(41e3)),
              11.195121951219512, 1e-12);
}

TEST(OperatingPoint, CooperativityLinearInPower) {
  const Device device = paper_device();
  DriveParams drive;
  drive.detuning = -device.mechanics.omega_m;
  drive.input_power = 1e-3;
  const double c1 = operating_point(device, drive).cooperativity;
  drive.input_power = 3e-3;
  EXPECT_NEAR(operating_point(device, drive).cooperativity, 3.0 * c1, 1e-14 * c1);
}

TEST(OperatingPoint, PowerForCooperativityInverts) {
  const Device device = paper_device();
  DriveParams drive;
  drive.detuning = -device.mechanics.omega_m;
  drive.input_power = power_for_cooperativity(device, drive.detuning, 9.0);
  EXPECT_NEAR(operating_point(device, drive).cooperativity, 9.0, 1e-12);
}

TEST(OperatingPoint, InvariantUnderCouplingSignFlip) {
  Device device = paper_device();
  DriveParams drive;
  drive.input_power = 1e-3;
  drive.detuning = -device.mechanics.omega_m;
  const OperatingPoint a = operating_point(device, drive);
  device.coupling.g0 = -device.coupling.g0;
  const OperatingPoint b = operating_point(device, drive);
  EXPECT_EQ(a.a_bar, b.a_bar);
  EXPECT_EQ(a.omega_c_rate, b.omega_c_rate);
  EXPECT_EQ(a.cooperativity, b.cooperativity);
  EXPECT_EQ(a.x_bar, -b.x_bar);
}

}  // namespace
}  // namespace omit
