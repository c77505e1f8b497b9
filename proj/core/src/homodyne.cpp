#include "omit/homodyne.hpp"

#include <cmath>
#include <limits>

namespace omit {

ThreeToneTransmission ThreeToneTransmission::make(Complex t_c, Complex t_us, Complex t_ls,
                                                  double phi) {
  return {t_c, t_us, t_ls, std::polar(1.0, -phi)};
}

DemodulatedQuadratures demodulate(const ThreeToneTransmission& tones) {
  const double p_re = tones.lo_phase.real();
  const double p_im = tones.lo_phase.imag();
  const Complex sum = tones.t_us + tones.t_ls;
  const Complex diff = tones.t_us - tones.t_ls;

  DemodulatedQuadratures q;
  q.cos_term = -2.0 * p_re * tones.t_c.real() + 2.0 * p_im * tones.t_c.imag() +
               sum.real() * p_re - sum.imag() * p_im;
  q.sin_term = -diff.imag() * p_re - diff.real() * p_im;
  return q;
}

HomodyneSignal quadratures_full(const ThreeToneTransmission& tones, Complex t_r) {
  const DemodulatedQuadratures raw = demodulate(tones);
  HomodyneSignal signal;
  signal.in_phase = -raw.cos_term;
  signal.quadrature = raw.sin_term;
  signal.t_hom = {signal.in_phase, signal.quadrature};
  const Complex span = 1.0 - t_r;
  signal.t_hom_norm = span == 0.0
                          ? Complex{std::numeric_limits<double>::quiet_NaN(), 0.0}
                          : signal.t_hom / span;
  return signal;
}

Complex bare_cavity_transmission(const Device& device, double delta_bar, double offset) {
  const double kappa = device.cavity.kappa();
  const double eta = device.cavity.eta_c();
  return 1.0 - eta * kappa / Complex(0.5 * kappa, -(delta_bar + offset));
}

ThreeToneTransmission three_tones(const Device& device, double delta_bar, double omega,
                                  Complex t_us, double lo_phase) {
  return ThreeToneTransmission::make(bare_cavity_transmission(device, delta_bar, 0.0), t_us,
                                     bare_cavity_transmission(device, delta_bar, -omega),
                                     lo_phase);
}

Complex homodyne_rsb(Complex t_p) { return 1.0 - t_p; }

double homodyne_dip(const OperatingPoint& op, const Device& device, double delta_prime) {
  const double kappa = device.cavity.kappa();
  const double gamma_m = device.mechanics.gamma_m;
  const double load = op.omega_c_rate * op.omega_c_rate / kappa;  // Omega_c^2 / kappa
  const double width = gamma_m + load;
  return 1.0 - load * (load + 2.0 * gamma_m) /
                   (width * width + 4.0 * delta_prime * delta_prime);
}

}  // namespace omit
