#include "omit/eit.hpp"

#include <cmath>

#include "omit/errors.hpp"
#include "omit/units.hpp"

namespace omit {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

std::complex<double> optical_denominator(const LambdaSystemParams& p, double delta_prime) {
  const double rabi = p.rabi();
  const std::complex<double> ground{0.5 * p.gamma12, -delta_prime};
  const std::complex<double> optical{0.5 * p.gamma13, -(delta_prime + p.control_detuning())};
  return optical + 0.25 * rabi * rabi / ground;
}

}  // namespace

double LambdaSystemParams::rabi() const noexcept { return mu23 * field_c / kHbar; }

void LambdaSystemParams::validate() const {
  if (!(gamma12 > 0.0) || !(gamma13 > 0.0)) {
    throw ParameterError("Lambda system requires gamma12 > 0 and gamma13 > 0");
  }
  for (double v : {omega21, omega31, mu13, mu23, field_c, field_p, omega_c_laser, omega_p_laser}) {
    if (!std::isfinite(v)) throw ParameterError("Lambda system parameters must be finite");
  }
}

std::complex<double> eit_coherence(const LambdaSystemParams& p, double delta_prime) {
  p.validate();
  const std::complex<double> drive = kI * p.mu13 * p.field_p / (2.0 * kHbar);
  return drive / optical_denominator(p, delta_prime);
}

std::complex<double> eit_ground_coherence(const LambdaSystemParams& p, double delta_prime) {
  const std::complex<double> s13 = eit_coherence(p, delta_prime);
  return 0.5 * kI * p.rabi() * s13 / std::complex<double>(0.5 * p.gamma12, -delta_prime);
}

std::complex<double> eit_polarizability(const LambdaSystemParams& p, double delta_prime) {
  p.validate();
  // mu13 S13 / (E_p / 2) with E_p cancelled analytically, so a zero probe
  // field still has a well-defined polarizability.
  return kI * p.mu13 * p.mu13 / kHbar / optical_denominator(p, delta_prime);
}

double eit_cooperativity(const LambdaSystemParams& p) {
  p.validate();
  const double rabi = p.rabi();
  return rabi * rabi / (p.gamma12 * p.gamma13);
}

std::optional<std::string_view> EitMapping::counterpart(std::string_view name) {
  for (const auto& entry : entries) {
    if (entry.eit == name) return entry.omit;
    if (entry.omit == name) return entry.eit;
  }
  return std::nullopt;
}

OmitRates omit_rates(const OperatingPoint& op, const Device& device) {
  return {device.cavity.kappa(), device.mechanics.gamma_m, device.mechanics.omega_m,
          op.omega_c_rate, op.delta_bar + device.mechanics.omega_m};
}

LambdaSystemParams map_omit_to_eit(const OmitRates& rates, const DipoleReference& reference) {
  if (!(reference.mu23 != 0.0)) throw ParameterError("reference mu23 must be nonzero");
  LambdaSystemParams p;
  p.omega21 = rates.omega_m;
  p.omega31 = reference.omega31 > 0.0 ? reference.omega31 : 1e6 * rates.omega_m;
  p.mu13 = reference.mu13;
  p.mu23 = reference.mu23;
  p.gamma13 = rates.kappa;
  p.gamma12 = rates.gamma_m;
  p.field_c = kHbar * rates.omega_c_rate / reference.mu23;
  p.field_p = reference.field_p;
  // Optical frequencies are ~1e6 times the rates, so a detuned control is only
  // resolved to ulp(omega31).
  p.omega_c_laser = p.omega32() + rates.control_offset;
  p.omega_p_laser = p.omega31;
  return p;
}

LambdaMapping map_omit_to_eit(const OperatingPoint& op, const Device& device,
                              const DipoleReference& reference) {
  device.validate();
  DipoleReference ref = reference;
  if (!(ref.omega31 > 0.0) && device.cavity.wavelength > 0.0) {
    ref.omega31 = device.cavity.carrier_frequency();
  }
  LambdaMapping mapping;
  mapping.lambda = map_omit_to_eit(omit_rates(op, device), ref);
  const double coupling = std::sqrt(device.cavity.eta_c() * device.cavity.kappa());
  if (coupling == 0.0) throw DegenerateInputError("kappa_ex = 0: probe does not reach the cavity");
  mapping.scale = kI * ref.mu13 * ref.field_p / (2.0 * kHbar) / coupling;
  return mapping;
}

OmitRates map_eit_to_omit(const LambdaSystemParams& p) {
  return {p.gamma13, p.gamma12, p.omega21, p.rabi(), p.control_detuning()};
}

}  // namespace omit
