#pragma once

#include <vector>

namespace omit {

/// Optical mode of the cavity. Rates are energy decay rates in rad/s.
struct CavityParams {
  double kappa0 = 0.0;      // intrinsic loss rate
  double kappa_ex = 0.0;    // coupling rate to the waveguide
  double wavelength = 0.0;  // control-laser vacuum wavelength, m

  double kappa() const noexcept { return kappa0 + kappa_ex; }
  /// Coupling parameter kappa_ex / kappa, in [0, 1).
  double eta_c() const noexcept { return kappa_ex / kappa(); }
  /// Angular frequency of the control carrier, rad/s.
  double carrier_frequency() const;

  void validate() const;
};

struct MechanicalParams {
  double m_eff = 0.0;    // kg
  double omega_m = 0.0;  // rad/s
  double gamma_m = 0.0;  // rad/s

  double quality_factor() const noexcept { return omega_m / gamma_m; }

  void validate() const;
};

struct CouplingParams {
  // d(omega_c)/dx in rad/s per m. Zero means a bare cavity.
  double g0 = 0.0;
};

struct DriveParams {
  double input_power = 0.0;       // W, at the cavity input
  double detuning = 0.0;          // effective control detuning (post static shift), rad/s
  double probe_offset = 0.0;      // omega_p - omega_l, rad/s
  double modulation_depth = 0.0;  // phase-modulation depth, dimensionless

  void validate() const;
};

struct Device {
  CavityParams cavity;
  MechanicalParams mechanics;
  CouplingParams coupling;

  void validate() const;
};

/// Static solution of the driven cavity around which the probe response is
/// linearized.
struct OperatingPoint {
  double a_bar = 0.0;         // intracavity amplitude, sqrt(photons), real >= 0
  double x_bar = 0.0;         // static displacement, m
  double delta_bar = 0.0;     // effective detuning, rad/s
  double omega_c_rate = 0.0;  // |2 g0 a_bar x_zpf|, rad/s
  double cooperativity = 0.0; // omega_c^2 / (gamma_m kappa)
  double x_zpf = 0.0;         // m
};

struct SteadyStateRoot {
  OperatingPoint point;
  bool stable = true;
  double residual = 0.0;  // relative residual of the force balance
};

/// Photon flux |s_in|^2 carried by `power` watts at `wavelength`.
double photon_flux(double power, double wavelength);

double zero_point_fluctuation(const MechanicalParams& mech);

/// All static solutions of the radiation-pressure problem for a bare laser
/// detuning Delta = omega_l - omega_c (before the static shift).
///
/// The force balance is reduced to a cubic in the frequency shift u = g0 x:
///
///   u ((Delta - u)^2 + kappa^2/4) + P = 0,   P = hbar g0^2 eta kappa flux / (m Omega_m^2)
///
/// which is solved in closed form and polished with Newton steps. Between one
/// and three roots are returned, sorted by |x_bar|. A root is stable when the
/// net restoring force increases with displacement, which is the sign of the
/// cubic's derivative at the root.
///
/// Throws SolverError when a root cannot be polished to a relative residual of
/// 1e-10.
std::vector<SteadyStateRoot> solve_steady_state(const Device& device, double laser_detuning,
                                                double flux);

/// Operating point for a drive whose detuning is already the effective one.
/// No cubic is needed: a_bar follows directly from the effective detuning.
OperatingPoint operating_point(const Device& device, const DriveParams& drive);

/// Operating point built from a known intracavity amplitude.
OperatingPoint operating_point_from_amplitude(const Device& device, double delta_bar,
                                              double a_bar);

/// Laser detuning Delta that places the cavity at effective detuning
/// `delta_bar` for the given drive, i.e. Delta = delta_bar + g0 x_bar.
double laser_detuning_for(const Device& device, const OperatingPoint& op);

/// Inverse of (C/(1+C))^2 on the branch C >= 0.
double cooperativity_from_peak_transmission(double peak_power_transmission);

/// Inverse of gamma_m (1 + C).
double cooperativity_from_window_width(double window_width, double gamma_m);

/// Input power that yields `cooperativity` at effective detuning `delta_bar`.
/// C is linear in power at fixed effective detuning.
double power_for_cooperativity(const Device& device, double delta_bar, double cooperativity);

}  // namespace omit
