#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "omit/errors.hpp"
#include "omit/linear_response.hpp"
#include "omit/units.hpp"
#include "support/oracles.hpp"

namespace omit {
namespace {

using testing::paper_device;

OperatingPoint at_cooperativity(const Device& device, double c, double delta_bar) {
  DriveParams drive;
  drive.detuning = delta_bar;
  drive.input_power = c == 0.0 ? 0.0 : power_for_cooperativity(device, delta_bar, c);
  return operating_point(device, drive);
}

TEST(Susceptibility, StaticAndResonantLimits) {
  const auto mech = paper_device().mechanics;
  const Complex chi0 = susceptibility(mech, 0.0);
  EXPECT_EQ(chi0.imag(), 0.0);
  EXPECT_NEAR(chi0.real(), 1.0 / (mech.m_eff * mech.omega_m * mech.omega_m), 1e-15 * chi0.real());
  const Complex chi_res = susceptibility(mech, mech.omega_m);
  EXPECT_EQ(chi_res.real(), 0.0);
  EXPECT_NEAR(chi_res.imag(), 1.0 / (mech.m_eff * mech.gamma_m * mech.omega_m),
              1e-14 * chi_res.imag());
  EXPECT_NEAR(std::abs(chi_res) / std::abs(chi0), mech.quality_factor(),
              1e-12 * mech.quality_factor());
}

TEST(ClosedForm, CriticallyCoupledBareCavityOnResonance) {
  const Device device = paper_device(0.5);
  const OperatingPoint op = at_cooperativity(device, 0.0, -device.mechanics.omega_m);
  const auto point = response_closed_form(op, device, -op.delta_bar);
  EXPECT_LT(std::abs(point.t_p), 1e-15);
}

TEST(ClosedForm, FarOffResonanceIsTransparent) {
  const Device device = paper_device(0.5);
  const OperatingPoint op = at_cooperativity(device, 0.0, -device.mechanics.omega_m);
  EXPECT_NEAR(std::abs(response_closed_form(op, device, 1e15).t_p - 1.0), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(response_closed_form(op, device, -1e15).t_p - 1.0), 0.0, 1e-6);
}

TEST(ClosedForm, PaperDeviceAtUnitCooperativity) {
  const Device device = paper_device(0.5);
  const OperatingPoint op = at_cooperativity(device, 1.0, -device.mechanics.omega_m);
  const double full = std::norm(transmission(ModelVariant::full, op, device, 0.0).t_p_norm);
  // Weak-coupling value 1/4; the full model differs by the Stokes sideband and
  // the finite kappa/Omega_m.
  EXPECT_NEAR(full, 0.25, 0.02);
  const double rsb = std::norm(transmission(ModelVariant::rsb, op, device, 0.0).t_p_norm);
  EXPECT_NEAR(rsb, 0.25, 1e-3);
}

TEST(DirectSolve, DecoupledSystem) {
  Device device = paper_device(0.4);
  device.coupling.g0 = 0.0;
  const OperatingPoint op = at_cooperativity(device, 0.0, -device.mechanics.omega_m);
  const double omega = 1.01 * device.mechanics.omega_m;
  const LinearResponse r = response_direct_solve(op, device, omega);
  EXPECT_EQ(r.x_amp, Complex(0.0));
  EXPECT_EQ(r.a_plus, Complex(0.0));
  const double kappa = device.cavity.kappa();
  const Complex expected = std::sqrt(0.4 * kappa) / Complex(0.5 * kappa, -(op.delta_bar + omega));
  EXPECT_NEAR(std::abs(r.a_minus - expected), 0.0, 1e-14 * std::abs(expected));
}

TEST(DirectSolve, MatchesClosedForm) {
  const Device device = paper_device(0.3);
  for (double c : {0.3, 3.0, 30.0}) {
    const OperatingPoint op = at_cooperativity(device, c, -0.8 * device.mechanics.omega_m);
    for (double frac : {0.5, 0.99, 1.0, 1.003, 1.7}) {
      const double omega = frac * device.mechanics.omega_m;
      const Complex direct =
          1.0 - std::sqrt(0.3 * device.cavity.kappa()) * response_direct_solve(op, device, omega).a_minus;
      const Complex closed = response_closed_form(op, device, omega).t_p;
      EXPECT_LE(std::abs(direct - closed) / std::abs(closed), 1e-10);
    }
  }
}

TEST(DirectSolve, OscillationPeaksAtTwoPhotonResonance) {
  const Device device = paper_device(0.5);
  const OperatingPoint op = at_cooperativity(device, 0.05, -device.mechanics.omega_m);
  const double width = omit_width(op, device);
  double best = -1.0;
  double best_dp = 0.0;
  for (int i = -500; i <= 500; ++i) {
    const double dp = width * i / 100.0;
    const double x = std::abs(response_direct_solve(op, device, device.mechanics.omega_m + dp).x_amp);
    if (x > best) {
      best = x;
      best_dp = dp;
    }
  }
  EXPECT_LE(std::abs(best_dp), width / 100.0);
}

TEST(ResolvedSideband, BareLorentzianWithoutControl) {
  const Device device = paper_device(0.5);
  const OperatingPoint op = at_cooperativity(device, 0.0, -device.mechanics.omega_m);
  const double kappa = device.cavity.kappa();
  for (double dp : {-kappa, 0.0, 0.3 * kappa}) {
    const Complex expected = std::sqrt(0.5 * kappa) / Complex(0.5 * kappa, -dp);
    EXPECT_NEAR(std::abs(response_rsb(op, device, dp) - expected), 0.0, 1e-15 * std::abs(expected));
  }
}

TEST(ResolvedSideband, RealOnTwoPhotonResonance) {
  const Device device = paper_device(0.5);
  const OperatingPoint op = at_cooperativity(device, 2.0, -device.mechanics.omega_m);
  const Complex a = response_rsb(op, device, 0.0);
  EXPECT_EQ(a.imag(), 0.0);
  const double kappa = device.cavity.kappa();
  const double expected = std::sqrt(0.5 * kappa) /
                          (0.5 * kappa + op.omega_c_rate * op.omega_c_rate / (2.0 * device.mechanics.gamma_m));
  EXPECT_NEAR(a.real(), expected, 1e-14 * expected);
}

TEST(ResolvedSideband, ConvergesToFullModel) {
  double previous = INFINITY;
  for (double ratio : {0.3, 0.03, 0.003}) {
    Device device = paper_device(0.5);
    const double kappa = ratio * device.mechanics.omega_m;
    device.cavity.kappa_ex = 0.5 * kappa;
    device.cavity.kappa0 = 0.5 * kappa;
    const OperatingPoint op = at_cooperativity(device, 1.0, -device.mechanics.omega_m);
    const Complex rsb = response_rsb(op, device, 0.0);
    const Complex full = response_direct_solve(op, device, device.mechanics.omega_m).a_minus;
    const double error = std::abs(rsb - full) / std::abs(full);
    EXPECT_LT(error, previous);
    previous = error;
  }
}

TEST(WeakCoupling, PeakEqualsCooperativityRatio) {
  const Device device = paper_device(0.5);
  for (double c : {0.1, 1.0, 9.0}) {
    const OperatingPoint op = at_cooperativity(device, c, -device.mechanics.omega_m);
    const auto point = transmission_weak_coupling(op, device, 0.0);
    EXPECT_NEAR(point.t_p_norm.real(), c / (1.0 + c), 1e-12);
    EXPECT_EQ(point.t_p_norm.imag(), 0.0);
  }
  const OperatingPoint op = at_cooperativity(device, 1.0, -device.mechanics.omega_m);
  EXPECT_NEAR(std::norm(transmission_weak_coupling(op, device, 0.0).t_p_norm), 0.25, 1e-12);
}

TEST(WeakCoupling, HalfMaximumAtHalfWidth) {
  const Device device = paper_device(0.5);
  const OperatingPoint op = at_cooperativity(device, 3.0, -device.mechanics.omega_m);
  const double width = omit_width(op, device);
  const double peak = std::norm(transmission_weak_coupling(op, device, 0.0).t_p_norm);
  const double half = std::norm(transmission_weak_coupling(op, device, 0.5 * width).t_p_norm);
  EXPECT_NEAR(half, 0.5 * peak, 1e-12);
}

TEST(WeakCoupling, ResidualTransmission) {
  const Device device = paper_device(0.2);
  const OperatingPoint op = at_cooperativity(device, 0.0, -device.mechanics.omega_m);
  EXPECT_NEAR(transmission_weak_coupling(op, device, 0.0).t_p.real(), 0.6, 1e-15);
  EXPECT_EQ(residual_transmission(ModelVariant::weak_coupling, op, device), Complex(0.6));
}

TEST(Width, Arithmetic) {
  const Device device = paper_device();
  OperatingPoint op;
  op.cooperativity = 0.0;
  EXPECT_EQ(omit_width(op, device), device.mechanics.gamma_m);
  op.cooperativity = 9.0;
  EXPECT_NEAR(rad_to_hz(omit_width(op, device)), 410e3, 1e-6);
}

TEST(Width, LinearInPower) {
  const Device device = paper_device();
  DriveParams drive;
  drive.detuning = -device.mechanics.omega_m;
  drive.input_power = 1e-3;
  const double extra1 = omit_width(operating_point(device, drive), device) - device.mechanics.gamma_m;
  drive.input_power = 4e-3;
  const double extra4 = omit_width(operating_point(device, drive), device) - device.mechanics.gamma_m;
  EXPECT_NEAR(extra4, 4.0 * extra1, 1e-12 * extra4);
}

TEST(GroupDelay, ClosedFormLimits) {
  const Device device = paper_device();
  const OperatingPoint op0 = at_cooperativity(device, 0.0, -device.mechanics.omega_m);
  EXPECT_NEAR(group_delay_closed_form(op0, device), 2.0 / device.mechanics.gamma_m,
              1e-14 / device.mechanics.gamma_m);
  for (double c : {0.5, 1.0, 10.0}) {
    const OperatingPoint op = at_cooperativity(device, c, -device.mechanics.omega_m);
    EXPECT_NEAR(group_delay_closed_form(op, device) * omit_width(op, device), 2.0, 1e-12);
  }
}

TEST(GroupDelay, FiniteDifferenceOfWeakCouplingModel) {
  const Device device = paper_device();
  for (double c : {1.0, 10.0}) {
    const OperatingPoint op = at_cooperativity(device, c, -device.mechanics.omega_m);
    const double expected = 2.0 / omit_width(op, device);
    const double fd = group_delay(ModelVariant::weak_coupling, op, device, 0.0,
                                  {.step = 0.0, .normalized = true});
    EXPECT_NEAR(fd / expected, 1.0, 1e-6);
  }
}

TEST(GroupDelay, StepUnderflowIsReported) {
  const Device device = paper_device();
  const OperatingPoint op = at_cooperativity(device, 1.0, -device.mechanics.omega_m);
  EXPECT_THROW(group_delay(ModelVariant::full, op, device, 0.0, {.step = 1e-12}), SolverError);
}

TEST(Phase, UnwrapRemovesJumps) {
  const std::vector<double> wrapped{3.0, -3.1, -2.9, 3.05, 2.9};
  const auto unwrapped = unwrap_phase(wrapped);
  for (std::size_t i = 1; i < unwrapped.size(); ++i) {
    EXPECT_LT(std::abs(unwrapped[i] - unwrapped[i - 1]), std::numbers::pi);
  }
  EXPECT_NEAR(unwrapped[1], -3.1 + 2.0 * std::numbers::pi, 1e-15);
}

TEST(Phase, ContinuousAcrossWindow) {
  const Device device = paper_device(0.5);
  const OperatingPoint op = at_cooperativity(device, 4.0, -device.mechanics.omega_m);
  const double width = omit_width(op, device);
  std::vector<double> phase;
  for (int i = -1000; i <= 1000; ++i) {
    phase.push_back(transmission(ModelVariant::full, op, device, width * i / 200.0).phase);
  }
  const auto unwrapped = unwrap_phase(phase);
  for (std::size_t i = 1; i < unwrapped.size(); ++i) {
    EXPECT_LT(std::abs(unwrapped[i] - unwrapped[i - 1]), 0.5);
  }
}

}  // namespace
}  // namespace omit
