#include "omit/mode_splitting.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "omit/errors.hpp"

namespace omit {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void require(bool ok, const char* name, double value, const char* rule) {
  if (ok) return;
  std::ostringstream os;
  os << name << " = " << value << " violates " << rule;
  throw ParameterError(os.str());
}

}  // namespace

void SplitModeParams::validate() const {
  base.validate();
  require(gamma_split >= 0.0 && std::isfinite(gamma_split), "gamma_split", gamma_split,
          "gamma_split >= 0");
}

bool SplitModeParams::resolved() const noexcept { return gamma_split >= 10.0 * base.kappa(); }

const EffectiveMode& StationaryModes::near_resonant() const noexcept {
  return std::abs(minus.detuning) < std::abs(plus.detuning) ? minus : plus;
}

StationaryModes stationary_modes(const SplitModeParams& params, double laser_detuning) {
  params.validate();
  const double kappa = params.base.kappa();
  const double eta = 0.5 * params.base.eta_c();
  StationaryModes modes;
  modes.plus = {laser_detuning + 0.5 * params.gamma_split, kappa, eta, +1};
  modes.minus = {laser_detuning - 0.5 * params.gamma_split, kappa, eta, -1};
  return modes;
}

StationaryAmplitudes to_stationary(const PropagatingAmplitudes& a) {
  return {(a.ccw + a.cw) * kInvSqrt2, (a.ccw - a.cw) * kInvSqrt2};
}

PropagatingAmplitudes to_propagating(const StationaryAmplitudes& a) {
  return {(a.plus + a.minus) * kInvSqrt2, (a.plus - a.minus) * kInvSqrt2};
}

StationaryAmplitudes steady_state_amplitudes(const SplitModeParams& params,
                                             double laser_detuning, double flux) {
  require(flux >= 0.0, "flux", flux, "flux >= 0");
  const StationaryModes modes = stationary_modes(params, laser_detuning);
  auto amplitude = [flux](const EffectiveMode& mode) {
    return std::sqrt(mode.eta_c * mode.kappa * flux) /
           std::complex<double>(0.5 * mode.kappa, -mode.detuning);
  };
  return {amplitude(modes.plus), amplitude(modes.minus)};
}

CavityParams effective_cavity(const SplitModeParams& params) {
  params.validate();
  CavityParams cavity = params.base;
  const double kappa = cavity.kappa();
  cavity.kappa_ex = 0.5 * params.base.kappa_ex;
  cavity.kappa0 = kappa - cavity.kappa_ex;
  return cavity;
}

double residual_from_eta(double eta_effective) {
  const double amplitude = 1.0 - 2.0 * eta_effective;
  return amplitude * amplitude;
}

double infer_eta_from_residual(double residual_power_transmission) {
  require(residual_power_transmission >= 0.0 && residual_power_transmission <= 1.0,
          "residual_power_transmission", residual_power_transmission, "0 <= |t_r|^2 <= 1");
  return 0.5 * (1.0 - std::sqrt(residual_power_transmission));
}

double effective_coupling_rate_correction(double omega_c_nominal, double taper_loss_factor,
                                          bool resolved_split) {
  require(taper_loss_factor >= 1.0, "taper_loss_factor", taper_loss_factor,
          "taper_loss_factor >= 1");
  const double split = resolved_split ? kInvSqrt2 : 1.0;
  return omega_c_nominal * split / taper_loss_factor;
}

OperatingPoint apply_taper_loss(const OperatingPoint& op, const Device& device,
                                double taper_loss_factor) {
  require(taper_loss_factor >= 1.0, "taper_loss_factor", taper_loss_factor,
          "taper_loss_factor >= 1");
  if (taper_loss_factor == 1.0) return op;
  return operating_point_from_amplitude(device, op.delta_bar, op.a_bar / taper_loss_factor);
}

}  // namespace omit
