#pragma once

#include <complex>

#include "omit/model.hpp"

namespace omit {

/// Whispering-gallery resonator whose clockwise and counter-clockwise modes are
/// coupled by backscattering at rate gamma_split. Only the ccw mode couples to
/// the waveguide.
struct SplitModeParams {
  double gamma_split = 0.0;  // rad/s
  CavityParams base;

  void validate() const;
  /// gamma_split >= 10 kappa: the doublet is resolved and each stationary mode
  /// can be treated as an independent cavity.
  bool resolved() const noexcept;
};

/// One stationary mode seen as an ordinary single-mode cavity.
struct EffectiveMode {
  double detuning = 0.0;  // laser detuning from this mode, rad/s
  double kappa = 0.0;
  double eta_c = 0.0;
  int parity = +1;        // +1 for a_+ = (a_ccw + a_cw)/sqrt2, -1 for a_-
};

struct StationaryModes {
  EffectiveMode plus;   // detuning Delta + gamma/2
  EffectiveMode minus;  // detuning Delta - gamma/2

  /// The mode closer to the laser.
  const EffectiveMode& near_resonant() const noexcept;
};

struct StationaryAmplitudes {
  std::complex<double> plus;
  std::complex<double> minus;
};

struct PropagatingAmplitudes {
  std::complex<double> ccw;
  std::complex<double> cw;
};

StationaryModes stationary_modes(const SplitModeParams& params, double laser_detuning);

StationaryAmplitudes to_stationary(const PropagatingAmplitudes& a);
PropagatingAmplitudes to_propagating(const StationaryAmplitudes& a);

/// Static intracavity amplitudes of both stationary modes for input flux `flux`
/// (radiation-pressure shift already folded into `laser_detuning`).
StationaryAmplitudes steady_state_amplitudes(const SplitModeParams& params,
                                             double laser_detuning, double flux);

/// Single-mode cavity equivalent to one resolved stationary mode: same kappa,
/// coupling parameter halved.
CavityParams effective_cavity(const SplitModeParams& params);

/// Residual power transmission |t_r|^2 = (1 - 2 eta')^2 of a single mode.
double residual_from_eta(double eta_effective);

/// Undercoupled (eta' <= 1/2) solution of |t_r|^2 = (1 - 2 eta')^2.
double infer_eta_from_residual(double residual_power_transmission);

/// Coupling rate after the intracavity-amplitude reduction of a resolved
/// doublet (factor 1/sqrt2 when `resolved_split`) and an empirical taper loss
/// factor (>= 1) dividing Omega_c.
double effective_coupling_rate_correction(double omega_c_nominal, double taper_loss_factor,
                                          bool resolved_split = false);

/// Operating point with the intracavity amplitude reduced by the taper loss
/// factor; displacement, coupling rate and cooperativity follow.
OperatingPoint apply_taper_loss(const OperatingPoint& op, const Device& device,
                                double taper_loss_factor);

}  // namespace omit
