#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "omit/homodyne.hpp"
#include "omit/units.hpp"
#include "support/oracles.hpp"

namespace omit {
namespace {

using testing::paper_device;

OperatingPoint at_cooperativity(const Device& device, double c) {
  DriveParams drive;
  drive.detuning = -device.mechanics.omega_m;
  drive.input_power = c == 0.0 ? 0.0 : power_for_cooperativity(device, drive.detuning, c);
  return operating_point(device, drive);
}

TEST(Quadratures, EmptyCavityGivesNoSignal) {
  const auto s = quadratures_full(ThreeToneTransmission::make(1.0, 1.0, 1.0, 0.0));
  EXPECT_EQ(s.in_phase, 0.0);
  EXPECT_EQ(s.quadrature, 0.0);
}

TEST(Quadratures, ReducesToOneMinusUpperSideband) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 100; ++i) {
    const Complex t_us(u(rng), u(rng));
    const auto s = quadratures_full(ThreeToneTransmission::make(1.0, t_us, 1.0, 0.0));
    EXPECT_NEAR(s.in_phase, 1.0 - t_us.real(), 1e-15);
    EXPECT_NEAR(s.quadrature, -t_us.imag(), 1e-15);
    EXPECT_NEAR(std::abs(s.t_hom - (1.0 - t_us)), 0.0, 1e-15);
  }
}

TEST(Quadratures, MatchesTimeDomainDemodulation) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(-3.0, 3.0);
  for (int i = 0; i < 20; ++i) {
    const Complex t_c(u(rng), u(rng));
    const Complex t_us(u(rng), u(rng));
    const Complex t_ls(u(rng), u(rng));
    const double phi = phase(rng);
    const auto analytic = demodulate(ThreeToneTransmission::make(t_c, t_us, t_ls, phi));
    const auto numeric = testing::time_domain_demodulation(t_c, t_us, t_ls, phi);
    const double scale = std::hypot(analytic.cos_term, analytic.sin_term);
    EXPECT_NEAR(numeric.cos_term, analytic.cos_term, 1e-6 * scale);
    EXPECT_NEAR(numeric.sin_term, analytic.sin_term, 1e-6 * scale);
  }
}

TEST(Quadratures, NormalizedByResidual) {
  const auto s = quadratures_full(ThreeToneTransmission::make(1.0, 0.5, 1.0, 0.0), 0.2);
  EXPECT_NEAR(s.t_hom_norm.real(), 0.5 / 0.8, 1e-15);
}

TEST(HomodyneRsb, Limits) {
  EXPECT_EQ(homodyne_rsb(1.0), Complex(0.0));
  EXPECT_EQ(homodyne_rsb(0.0), Complex(1.0));
}

TEST(HomodyneRsb, NormalizedSignalComplementsNormalizedTransmission) {
  const Device device = paper_device(0.3);
  const OperatingPoint op = at_cooperativity(device, 2.0);
  const Complex t_r = residual_transmission(ModelVariant::weak_coupling, op, device);
  for (double dp : {-1e6, -1e5, 0.0, 3e5}) {
    const auto point = transmission_weak_coupling(op, device, dp);
    const Complex t_hom_norm = homodyne_rsb(point.t_p) / (1.0 - t_r);
    EXPECT_NEAR(std::abs(t_hom_norm + point.t_p_norm - 1.0), 0.0, 1e-14);
  }
}

TEST(HomodyneRsb, FullThreeToneDeviationShrinksWithSidebandResolution) {
  double previous = INFINITY;
  for (double ratio : {0.29, 0.029, 0.0029}) {
    Device device = paper_device(0.5);
    const double kappa = ratio * device.mechanics.omega_m;
    device.cavity.kappa0 = 0.5 * kappa;
    device.cavity.kappa_ex = 0.5 * kappa;
    const OperatingPoint op = at_cooperativity(device, 1.0);
    const double omega = device.mechanics.omega_m;
    const Complex t_p = response_closed_form(op, device, omega).t_p;
    const auto full = quadratures_full(three_tones(device, op.delta_bar, omega, t_p));
    const double deviation = std::abs(full.t_hom - homodyne_rsb(t_p));
    EXPECT_LT(deviation, previous);
    previous = deviation;
  }
}

TEST(HomodyneDip, NoControlNoDip) {
  const Device device = paper_device();
  const OperatingPoint op = at_cooperativity(device, 0.0);
  for (double dp : {-1e6, 0.0, 2e5}) EXPECT_EQ(homodyne_dip(op, device, dp), 1.0);
}

TEST(HomodyneDip, DipRelation) {
  const Device device = paper_device();
  for (double c : {0.0, 0.1, 1.0, 9.0, 40.0}) {
    const OperatingPoint op = at_cooperativity(device, c);
    const double peak = std::norm(transmission_weak_coupling(op, device, 0.0).t_p_norm);
    const double expected = std::pow(1.0 - std::sqrt(peak), 2);
    EXPECT_NEAR(homodyne_dip(op, device, 0.0), expected, 1e-12);
  }
  EXPECT_NEAR(homodyne_dip(at_cooperativity(device, 9.0), device, 0.0), 0.01, 1e-12);
}

TEST(HomodyneDip, EqualsComplementOfWeakCouplingWindow) {
  const Device device = paper_device();
  const OperatingPoint op = at_cooperativity(device, 3.0);
  for (double dp : {-4e5, -1e5, 0.0, 2e5, 1e6}) {
    const Complex t_norm = transmission_weak_coupling(op, device, dp).t_p_norm;
    EXPECT_NEAR(homodyne_dip(op, device, dp), std::norm(1.0 - t_norm), 1e-12);
  }
}

}  // namespace
}  // namespace omit
