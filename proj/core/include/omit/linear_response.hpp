#pragma once

#include <complex>
#include <span>
#include <vector>

#include "omit/model.hpp"

namespace omit {

using Complex = std::complex<double>;

/// Which approximation of the probe response to evaluate.
enum class ModelVariant {
  full,           // linearized response with both sidebands and the exact susceptibility
  rsb,            // resolved-sideband limit: Stokes sideband dropped, susceptibility linearized
  weak_coupling,  // rsb plus omega_c, gamma_m << kappa: Lorentzian window
};

/// Sideband amplitudes per unit probe amplitude s_p.
struct LinearResponse {
  Complex a_minus;  // anti-Stokes intracavity field A-
  Complex a_plus;   // Stokes intracavity field A+
  Complex x_amp;    // mechanical amplitude X, m per sqrt(photon/s)
};

struct TransmissionPoint {
  Complex t_p;                    // probe amplitude transmission
  Complex t_p_norm;               // (t_p - t_r) / (1 - t_r)
  double power_transmission = 0;  // |t_p|^2
  double phase = 0;               // arg(t_p), wrapped to (-pi, pi]
};

/// chi(Omega) = 1 / (m_eff (Omega_m^2 - Omega^2 - i gamma_m Omega)), m/N.
Complex susceptibility(const MechanicalParams& mech, double omega);

/// Anti-Stokes amplitude A- of the full linearized model in closed form at
/// probe offset `omega` = omega_p - omega_l.
Complex anti_stokes_closed_form(const OperatingPoint& op, const Device& device, double omega);

/// Probe transmission of the full linearized model at probe offset `omega`.
TransmissionPoint response_closed_form(const OperatingPoint& op, const Device& device,
                                       double omega);

/// Solves the coupled equations for (A-, (A+)*, X) as a 3x3 complex linear
/// system. Independent of the closed form above; the two must agree.
LinearResponse response_direct_solve(const OperatingPoint& op, const Device& device,
                                     double omega);

/// Resolved-sideband anti-Stokes amplitude at Delta' = Omega - Omega_m:
///
///   A- = sqrt(eta kappa) / (-i(Delta_bar + Omega_m + Delta') + kappa/2
///                           + (Omega_c^2/4) / (-i Delta' + gamma_m/2))
///
/// For a control on the lower sideband (Delta_bar = -Omega_m) the first term
/// reduces to -i Delta'.
Complex response_rsb(const OperatingPoint& op, const Device& device, double delta_prime);

/// Mechanical amplitude X driven by an intracavity anti-Stokes field in the
/// resolved-sideband limit.
Complex mechanical_amplitude_rsb(const OperatingPoint& op, const Device& device,
                                 double delta_prime, Complex a_minus);

TransmissionPoint transmission_rsb(const OperatingPoint& op, const Device& device,
                                   double delta_prime);

/// Weak-coupling Lorentzian form:
///   t_p  = 1 - 2 eta + 2 eta Omega_c^2 / (Omega_c^2 + gamma_m kappa - 2 i Delta' kappa)
///   t_p' = Omega_c^2 / (Omega_c^2 + gamma_m kappa - 2 i Delta' kappa)
TransmissionPoint transmission_weak_coupling(const OperatingPoint& op, const Device& device,
                                             double delta_prime);

/// Dispatches on the model variant; the probe position is always Delta'.
TransmissionPoint transmission(ModelVariant variant, const OperatingPoint& op,
                               const Device& device, double delta_prime);

/// Residual on-resonance transmission t_r = t_p(Delta' = 0, Omega_c = 0) of the
/// given variant.
Complex residual_transmission(ModelVariant variant, const OperatingPoint& op,
                              const Device& device);

/// Gamma_OMIT = gamma_m (1 + C).
double omit_width(const OperatingPoint& op, const Device& device);

/// (C / (1 + C))^2.
double peak_transparency(double cooperativity);

struct GroupDelayOptions {
  // Central-difference step in rad/s; <= 0 selects Gamma_OMIT / 1e4.
  double step = 0.0;
  // Differentiate the phase of t_p' instead of t_p.
  bool normalized = false;
};

/// Group delay d(arg t)/d(omega_p) by central finite difference of the chosen
/// model's transmission phase, in seconds. With the e^{-i Omega t} convention
/// used throughout, a positive value is a delay.
///
/// Throws SolverError when the step underflows against the probe frequency.
double group_delay(ModelVariant variant, const OperatingPoint& op, const Device& device,
                   double delta_prime, const GroupDelayOptions& options = {});

/// Weak-coupling group delay at the window center: 2 kappa / (Omega_c^2 + gamma_m kappa).
double group_delay_closed_form(const OperatingPoint& op, const Device& device);

/// Unwraps a phase sequence sampled on a monotone grid by removing 2 pi jumps.
std::vector<double> unwrap_phase(std::span<const double> phase);

}  // namespace omit
