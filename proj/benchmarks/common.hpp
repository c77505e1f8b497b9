#pragma once

#include "omit/model.hpp"
#include "omit/units.hpp"

namespace omit::bench {

inline Device device() {
  Device d;
  d.cavity.kappa0 = hz_to_rad(7.5e6);
  d.cavity.kappa_ex = hz_to_rad(7.5e6);
  d.cavity.wavelength = 775e-9;
  d.mechanics.m_eff = 20e-12;
  d.mechanics.omega_m = hz_to_rad(51.8e6);
  d.mechanics.gamma_m = hz_to_rad(41e3);
  d.coupling.g0 = hz_to_rad(-12e18);
  return d;
}

inline OperatingPoint operating_point_at(const Device& d, double power) {
  DriveParams drive;
  drive.input_power = power;
  drive.detuning = -d.mechanics.omega_m;
  return operating_point(d, drive);
}

}  // namespace omit::bench
