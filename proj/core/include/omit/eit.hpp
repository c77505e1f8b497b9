#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string_view>

#include "omit/linear_response.hpp"

namespace omit {

/// Three-level Lambda system: ground states |1>, |2>, excited |3>. The probe
/// drives 1-3, the control drives 2-3.
struct LambdaSystemParams {
  double omega21 = 0.0;        // ground-state splitting, rad/s
  double omega31 = 0.0;        // probe transition, rad/s
  double mu13 = 0.0;           // dipole moments, C m
  double mu23 = 0.0;
  double gamma12 = 0.0;        // ground-state coherence damping, rad/s
  double gamma13 = 0.0;        // optical coherence damping, rad/s
  double field_c = 0.0;        // control field amplitude, V/m
  double field_p = 0.0;        // probe field amplitude, V/m
  double omega_c_laser = 0.0;  // control optical frequency, rad/s
  double omega_p_laser = 0.0;  // probe optical frequency, rad/s

  double omega32() const noexcept { return omega31 - omega21; }
  /// Control Rabi frequency mu23 E_c / hbar.
  double rabi() const noexcept;
  /// omega_c_laser - omega32.
  double control_detuning() const noexcept { return omega_c_laser - omega32(); }
  /// Delta' = omega_p_laser - omega31 of the stored probe.
  double probe_detuning() const noexcept { return omega_p_laser - omega31; }

  void validate() const;
};

/// Steady-state optical coherence S13 for probe detuning Delta' = omega_p - omega31
/// with weak-probe populations (sigma11 = 1).
std::complex<double> eit_coherence(const LambdaSystemParams& p, double delta_prime);

/// Ground-state coherence S12, the counterpart of the mechanical amplitude.
std::complex<double> eit_ground_coherence(const LambdaSystemParams& p, double delta_prime);

/// alpha = mu13 S13 / (E_p / 2).
std::complex<double> eit_polarizability(const LambdaSystemParams& p, double delta_prime);

/// Omega_R^2 / (gamma12 gamma13).
double eit_cooperativity(const LambdaSystemParams& p);

/// The pairs of corresponding entities in the two pictures. counterpart() maps
/// a name to its partner and is its own inverse.
struct EitMapping {
  struct Entry {
    std::string_view eit;
    std::string_view omit;
  };
  static constexpr std::array<Entry, 4> entries{{
      {"S13", "A-"},
      {"S12", "X"},
      {"hbar*omega21", "hbar*Omega_m"},
      {"mu23*E_c/hbar", "2*g0*a_bar*x_zpf"},
  }};

  static std::optional<std::string_view> counterpart(std::string_view name);
};

/// The rates that enter both responses, named from the optomechanical side.
struct OmitRates {
  double kappa = 0.0;           // <-> gamma13
  double gamma_m = 0.0;         // <-> gamma12
  double omega_m = 0.0;         // <-> omega21
  double omega_c_rate = 0.0;    // <-> Rabi frequency
  double control_offset = 0.0;  // Delta_bar + Omega_m <-> omega_c - omega32
};

OmitRates omit_rates(const OperatingPoint& op, const Device& device);

struct DipoleReference {
  double mu13 = 8.478353625e-30;  // e a0
  double mu23 = 8.478353625e-30;
  double field_p = 1.0;           // V/m
  double omega31 = 0.0;           // 0 selects the device carrier frequency
};

struct LambdaMapping {
  LambdaSystemParams lambda;
  /// S13(Delta') = scale * A-(Delta') with A- per unit probe amplitude.
  std::complex<double> scale;
};

/// Lambda system whose S13 is proportional to the resolved-sideband A-.
LambdaMapping map_omit_to_eit(const OperatingPoint& op, const Device& device,
                              const DipoleReference& reference = {});
LambdaSystemParams map_omit_to_eit(const OmitRates& rates, const DipoleReference& reference);

/// Inverse of map_omit_to_eit on the shared rates.
OmitRates map_eit_to_omit(const LambdaSystemParams& p);

}  // namespace omit
