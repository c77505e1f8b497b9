#include "omit/linear_response.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "omit/errors.hpp"
#include "omit/units.hpp"

namespace omit {

namespace {

constexpr Complex kI{0.0, 1.0};

Complex normalize(Complex t, Complex t_r) {
  const Complex span = 1.0 - t_r;
  if (span == 0.0) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
  return (t - t_r) / span;
}

TransmissionPoint make_point(Complex t, Complex t_norm) {
  TransmissionPoint point;
  point.t_p = t;
  point.t_p_norm = t_norm;
  point.power_transmission = std::norm(t);
  point.phase = std::arg(t);
  return point;
}

// Bare-cavity transmission at the two-photon resonance; shared by the full and
// resolved-sideband variants.
Complex sideband_residual(const OperatingPoint& op, const Device& device) {
  const double kappa = device.cavity.kappa();
  const double eta = device.cavity.eta_c();
  const double offset = op.delta_bar + device.mechanics.omega_m;
  return 1.0 - eta * kappa / (-kI * offset + 0.5 * kappa);
}

}  // namespace

Complex susceptibility(const MechanicalParams& mech, double omega) {
  mech.validate();
  const Complex inverse = mech.m_eff * Complex(mech.omega_m * mech.omega_m - omega * omega,
                                               -mech.gamma_m * omega);
  return 1.0 / inverse;
}

Complex anti_stokes_closed_form(const OperatingPoint& op, const Device& device, double omega) {
  const double kappa = device.cavity.kappa();
  const double eta = device.cavity.eta_c();
  const double g0 = device.coupling.g0;
  const double delta = op.delta_bar;

  const Complex chi = susceptibility(device.mechanics, omega);
  const Complex f =
      kHbar * g0 * g0 * op.a_bar * op.a_bar * chi / (kI * (delta - omega) + 0.5 * kappa);
  const Complex denom = -kI * (delta + omega) + 0.5 * kappa + 2.0 * delta * f;
  return std::sqrt(eta * kappa) * (1.0 + kI * f) / denom;
}

TransmissionPoint response_closed_form(const OperatingPoint& op, const Device& device,
                                       double omega) {
  device.validate();
  const double coupling = std::sqrt(device.cavity.eta_c() * device.cavity.kappa());
  const Complex t = 1.0 - coupling * anti_stokes_closed_form(op, device, omega);
  return make_point(t, normalize(t, sideband_residual(op, device)));
}

LinearResponse response_direct_solve(const OperatingPoint& op, const Device& device,
                                     double omega) {
  device.validate();
  const auto& mech = device.mechanics;
  const double kappa = device.cavity.kappa();
  const double delta = op.delta_bar;
  const double x_zpf = zero_point_fluctuation(mech);
  // Unknowns (A-, (A+)*, X / x_zpf); the mechanical row is scaled by
  // x_zpf / hbar so every coefficient is a rate.
  const Complex rate = device.coupling.g0 * op.a_bar * x_zpf;
  const Complex mech_row =
      Complex(mech.omega_m * mech.omega_m - omega * omega, -mech.gamma_m * omega) /
      (2.0 * mech.omega_m);

  Eigen::Matrix3cd system;
  system << -kI * (delta + omega) + 0.5 * kappa, 0.0, kI * rate,
      0.0, kI * (delta - omega) + 0.5 * kappa, -kI * rate,
      rate, rate, mech_row;
  Eigen::Vector3cd drive(std::sqrt(device.cavity.eta_c() * kappa), 0.0, 0.0);

  const auto lu = system.fullPivLu();
  if (!lu.isInvertible()) {
    throw DegenerateInputError("linear response system is singular");
  }
  const Eigen::Vector3cd solution = lu.solve(drive);

  LinearResponse response;
  response.a_minus = solution(0);
  response.a_plus = std::conj(solution(1));
  response.x_amp = x_zpf * solution(2);
  return response;
}

Complex response_rsb(const OperatingPoint& op, const Device& device, double delta_prime) {
  device.validate();
  const double kappa = device.cavity.kappa();
  const double gamma_m = device.mechanics.gamma_m;
  const double offset = op.delta_bar + device.mechanics.omega_m + delta_prime;
  const double coupling_sq = op.omega_c_rate * op.omega_c_rate;
  const Complex denom = -kI * offset + 0.5 * kappa +
                        0.25 * coupling_sq / (-kI * delta_prime + 0.5 * gamma_m);
  return std::sqrt(device.cavity.eta_c() * kappa) / denom;
}

Complex mechanical_amplitude_rsb(const OperatingPoint& op, const Device& device,
                                 double delta_prime, Complex a_minus) {
  const auto& mech = device.mechanics;
  const Complex lhs = 2.0 * mech.m_eff * mech.omega_m * (-kI * delta_prime + 0.5 * mech.gamma_m);
  return -kI * kHbar * device.coupling.g0 * op.a_bar * a_minus / lhs;
}

TransmissionPoint transmission_rsb(const OperatingPoint& op, const Device& device,
                                   double delta_prime) {
  const double coupling = std::sqrt(device.cavity.eta_c() * device.cavity.kappa());
  const Complex t = 1.0 - coupling * response_rsb(op, device, delta_prime);
  return make_point(t, normalize(t, sideband_residual(op, device)));
}

TransmissionPoint transmission_weak_coupling(const OperatingPoint& op, const Device& device,
                                             double delta_prime) {
  device.validate();
  const double kappa = device.cavity.kappa();
  const double eta = device.cavity.eta_c();
  const double coupling_sq = op.omega_c_rate * op.omega_c_rate;
  const Complex window =
      coupling_sq /
      Complex(coupling_sq + device.mechanics.gamma_m * kappa, -2.0 * delta_prime * kappa);
  return make_point(1.0 - 2.0 * eta + 2.0 * eta * window, window);
}

TransmissionPoint transmission(ModelVariant variant, const OperatingPoint& op,
                               const Device& device, double delta_prime) {
  switch (variant) {
    case ModelVariant::full:
      return response_closed_form(op, device, device.mechanics.omega_m + delta_prime);
    case ModelVariant::rsb:
      return transmission_rsb(op, device, delta_prime);
    case ModelVariant::weak_coupling:
      return transmission_weak_coupling(op, device, delta_prime);
  }
  throw ParameterError("unknown model variant");
}

Complex residual_transmission(ModelVariant variant, const OperatingPoint& op,
                              const Device& device) {
  if (variant == ModelVariant::weak_coupling) return 1.0 - 2.0 * device.cavity.eta_c();
  return sideband_residual(op, device);
}

double omit_width(const OperatingPoint& op, const Device& device) {
  return device.mechanics.gamma_m * (1.0 + op.cooperativity);
}

double peak_transparency(double cooperativity) {
  const double ratio = cooperativity / (1.0 + cooperativity);
  return ratio * ratio;
}

double group_delay(ModelVariant variant, const OperatingPoint& op, const Device& device,
                   double delta_prime, const GroupDelayOptions& options) {
  const double step = options.step > 0.0 ? options.step : omit_width(op, device) / 1e4;
  const double omega_m = device.mechanics.omega_m;
  const double upper = delta_prime + step;
  const double lower = delta_prime - step;
  // The full model is evaluated at omega_m + Delta', so the step has to survive
  // that addition too.
  const double span = (omega_m + upper) - (omega_m + lower);
  if (!(step > 0.0) || !std::isfinite(step) || !(span > 0.0) || upper == lower) {
    std::ostringstream os;
    os << "group delay step " << step << " rad/s underflows at probe offset "
       << omega_m + delta_prime << " rad/s";
    throw SolverError(os.str(), step);
  }

  auto value = [&](double dp) {
    const TransmissionPoint point = transmission(variant, op, device, dp);
    return options.normalized ? point.t_p_norm : point.t_p;
  };
  const Complex hi = value(upper);
  const Complex lo = value(lower);
  if (hi == 0.0 || lo == 0.0) {
    throw SolverError("group delay undefined: transmission vanishes inside the difference stencil",
                      0.0);
  }
  return std::arg(hi * std::conj(lo)) / span;
}

double group_delay_closed_form(const OperatingPoint& op, const Device& device) {
  const double kappa = device.cavity.kappa();
  return 2.0 * kappa /
         (op.omega_c_rate * op.omega_c_rate + device.mechanics.gamma_m * kappa);
}

std::vector<double> unwrap_phase(std::span<const double> phase) {
  std::vector<double> out(phase.begin(), phase.end());
  double offset = 0.0;
  for (std::size_t i = 1; i < out.size(); ++i) {
    const double jump = phase[i] - phase[i - 1];
    if (jump > std::numbers::pi) offset -= kTwoPi;
    else if (jump < -std::numbers::pi) offset += kTwoPi;
    out[i] = phase[i] + offset;
  }
  return out;
}

}  // namespace omit
