#include "omit/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "omit/errors.hpp"
#include "omit/units.hpp"

namespace omit {

namespace {

bool finite(double v) { return std::isfinite(v); }

[[noreturn]] void bad_parameter(const char* name, double value, const char* requirement) {
  std::ostringstream os;
  os << name << " = " << value << " violates " << requirement;
  throw ParameterError(os.str());
}

constexpr double kRootTolerance = 1e-10;
constexpr int kMaxPolishSteps = 8;

// Real roots of the monic cubic v^3 + b v^2 + c v + d.
std::vector<double> real_cubic_roots(double b, double c, double d) {
  const double shift = b / 3.0;
  const double p = c - b * shift;
  const double q = 2.0 * shift * shift * shift - shift * c + d;
  const double disc = 0.25 * q * q + p * p * p / 27.0;

  std::vector<double> roots;
  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    // Pick the cube root without cancellation and recover the other term from
    // the product of the two Cardano terms, which is -p/3.
    const double a = -std::copysign(std::cbrt(std::abs(q) * 0.5 + s), q);
    const double t = a == 0.0 ? 0.0 : a - p / (3.0 * a);
    roots.push_back(t - shift);
  } else {
    // Three real roots (two coincide when disc == 0).
    const double r = std::sqrt(std::max(-p / 3.0, 0.0));
    double arg = r == 0.0 ? 0.0 : (-0.5 * q) / (r * r * r);
    arg = std::clamp(arg, -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      roots.push_back(2.0 * r * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - shift);
    }
  }
  return roots;
}

}  // namespace

double CavityParams::carrier_frequency() const {
  if (!(wavelength > 0.0) || !finite(wavelength)) {
    bad_parameter("wavelength", wavelength, "wavelength > 0");
  }
  return kTwoPi * kSpeedOfLight / wavelength;
}

void CavityParams::validate() const {
  if (!(kappa0 > 0.0) || !finite(kappa0)) bad_parameter("kappa0", kappa0, "kappa0 > 0");
  if (!(kappa_ex >= 0.0) || !finite(kappa_ex)) bad_parameter("kappa_ex", kappa_ex, "kappa_ex >= 0");
}

void MechanicalParams::validate() const {
  if (!(m_eff > 0.0) || !finite(m_eff)) bad_parameter("m_eff", m_eff, "m_eff > 0");
  if (!(omega_m > 0.0) || !finite(omega_m)) bad_parameter("omega_m", omega_m, "omega_m > 0");
  if (gamma_m == 0.0) {
    throw DegenerateInputError("gamma_m = 0: the mechanical susceptibility is singular at omega_m");
  }
  if (!(gamma_m > 0.0) || !finite(gamma_m)) bad_parameter("gamma_m", gamma_m, "gamma_m > 0");
}

void DriveParams::validate() const {
  if (!(input_power >= 0.0) || !finite(input_power)) {
    bad_parameter("input_power", input_power, "input_power >= 0");
  }
  if (!finite(detuning)) bad_parameter("detuning", detuning, "finite detuning");
  if (!finite(probe_offset)) bad_parameter("probe_offset", probe_offset, "finite probe offset");
  if (!(modulation_depth >= 0.0) || !finite(modulation_depth)) {
    bad_parameter("modulation_depth", modulation_depth, "modulation_depth >= 0");
  }
}

void Device::validate() const {
  cavity.validate();
  mechanics.validate();
  if (!finite(coupling.g0)) bad_parameter("g0", coupling.g0, "finite g0");
}

double photon_flux(double power, double wavelength) {
  if (!(wavelength > 0.0) || !finite(wavelength)) {
    bad_parameter("wavelength", wavelength, "wavelength > 0");
  }
  if (!(power >= 0.0) || !finite(power)) bad_parameter("power", power, "power >= 0");
  const double photon_energy = kHbar * kTwoPi * kSpeedOfLight / wavelength;
  return power / photon_energy;
}

double zero_point_fluctuation(const MechanicalParams& mech) {
  mech.validate();
  return std::sqrt(kHbar / (2.0 * mech.m_eff * mech.omega_m));
}

OperatingPoint operating_point_from_amplitude(const Device& device, double delta_bar,
                                              double a_bar) {
  device.validate();
  if (!(a_bar >= 0.0) || !finite(a_bar)) bad_parameter("a_bar", a_bar, "a_bar >= 0");
  const auto& mech = device.mechanics;
  const double g0 = device.coupling.g0;

  OperatingPoint op;
  op.a_bar = a_bar;
  op.delta_bar = delta_bar;
  op.x_zpf = zero_point_fluctuation(mech);
  op.x_bar = -kHbar * g0 * a_bar * a_bar / (mech.m_eff * mech.omega_m * mech.omega_m);
  op.omega_c_rate = std::abs(2.0 * g0 * a_bar * op.x_zpf);
  op.cooperativity =
      op.omega_c_rate * op.omega_c_rate / (mech.gamma_m * device.cavity.kappa());
  return op;
}

OperatingPoint operating_point(const Device& device, const DriveParams& drive) {
  device.validate();
  drive.validate();
  const double kappa = device.cavity.kappa();
  const double flux = photon_flux(drive.input_power, device.cavity.wavelength);
  const double denom = drive.detuning * drive.detuning + 0.25 * kappa * kappa;
  const double a_bar = std::sqrt(device.cavity.eta_c() * kappa * flux / denom);
  return operating_point_from_amplitude(device, drive.detuning, a_bar);
}

double laser_detuning_for(const Device& device, const OperatingPoint& op) {
  return op.delta_bar + device.coupling.g0 * op.x_bar;
}

std::vector<SteadyStateRoot> solve_steady_state(const Device& device, double laser_detuning,
                                                double flux) {
  device.validate();
  if (!(flux >= 0.0) || !finite(flux)) bad_parameter("flux", flux, "flux >= 0");
  if (!finite(laser_detuning)) bad_parameter("laser_detuning", laser_detuning, "finite detuning");

  const auto& mech = device.mechanics;
  const double kappa = device.cavity.kappa();
  const double quarter_kappa_sq = 0.25 * kappa * kappa;
  const double drive = device.cavity.eta_c() * kappa * flux;  // photons/s^2 scale
  const double g0 = device.coupling.g0;
  const double pull = kHbar * g0 * g0 * drive / (mech.m_eff * mech.omega_m * mech.omega_m);

  auto amplitude_at = [&](double delta) {
    return std::sqrt(drive / (delta * delta + quarter_kappa_sq));
  };

  if (pull == 0.0) {
    SteadyStateRoot root;
    root.point = operating_point_from_amplitude(device, laser_detuning, amplitude_at(laser_detuning));
    return {root};
  }

  // Work in v = u / scale so that all cubic coefficients are O(1).
  const double scale =
      std::max({std::abs(laser_detuning), 0.5 * kappa, std::cbrt(pull)});
  const double b = -2.0 * laser_detuning / scale;
  const double c = (laser_detuning * laser_detuning + quarter_kappa_sq) / (scale * scale);
  const double d = pull / (scale * scale * scale);

  auto cubic = [&](double v) { return ((v + b) * v + c) * v + d; };
  auto slope = [&](double v) { return (3.0 * v + 2.0 * b) * v + c; };
  // |u + P/D(u)| / (|u| + P/D(u)), i.e. the force-balance mismatch relative to
  // the size of the two forces.
  auto relative_residual = [&](double v) {
    const double lhs = v * ((v + b) * v + c);  // u D(u) / scale^3
    return std::abs(lhs + d) / (std::abs(lhs) + d);
  };

  std::vector<double> candidates = real_cubic_roots(b, c, d);
  for (double& v : candidates) {
    for (int step = 0; step < kMaxPolishSteps; ++step) {
      if (relative_residual(v) <= 1e-3 * kRootTolerance) break;
      const double df = slope(v);
      if (df == 0.0) break;
      const double next = v - cubic(v) / df;
      if (!(std::abs(cubic(next)) < std::abs(cubic(v)))) break;
      v = next;
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end(),
                               [](double lhs, double rhs) {
                                 return std::abs(lhs - rhs) <=
                                        1e-12 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
                               }),
                   candidates.end());

  std::vector<SteadyStateRoot> roots;
  roots.reserve(candidates.size());
  for (double v : candidates) {
    const double residual = relative_residual(v);
    if (!(residual <= kRootTolerance)) {
      std::ostringstream os;
      os << "steady state root did not converge: relative residual " << residual;
      throw SolverError(os.str(), residual);
    }
    const double delta = laser_detuning - v * scale;
    SteadyStateRoot root;
    root.point = operating_point_from_amplitude(device, delta, amplitude_at(delta));
    root.stable = slope(v) > 0.0;
    root.residual = residual;
    roots.push_back(root);
  }
  std::sort(roots.begin(), roots.end(), [](const SteadyStateRoot& lhs, const SteadyStateRoot& rhs) {
    return std::abs(lhs.point.x_bar) < std::abs(rhs.point.x_bar);
  });
  return roots;
}

double cooperativity_from_peak_transmission(double peak_power_transmission) {
  if (!(peak_power_transmission >= 0.0 && peak_power_transmission < 1.0)) {
    bad_parameter("peak_power_transmission", peak_power_transmission, "0 <= T < 1");
  }
  const double s = std::sqrt(peak_power_transmission);
  return s / (1.0 - s);
}

double cooperativity_from_window_width(double window_width, double gamma_m) {
  if (!(gamma_m > 0.0)) bad_parameter("gamma_m", gamma_m, "gamma_m > 0");
  if (!(window_width >= gamma_m)) bad_parameter("window_width", window_width, "width >= gamma_m");
  return window_width / gamma_m - 1.0;
}

double power_for_cooperativity(const Device& device, double delta_bar, double cooperativity) {
  if (!(cooperativity >= 0.0) || !finite(cooperativity)) {
    bad_parameter("cooperativity", cooperativity, "C >= 0");
  }
  DriveParams unit;
  unit.input_power = 1.0;
  unit.detuning = delta_bar;
  const double per_watt = operating_point(device, unit).cooperativity;
  if (!(per_watt > 0.0)) {
    throw DegenerateInputError("device has no optomechanical coupling (g0 = 0 or kappa_ex = 0)");
  }
  return cooperativity / per_watt;
}

}  // namespace omit
