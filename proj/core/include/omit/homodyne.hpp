#pragma once

#include <complex>

#include "omit/linear_response.hpp"

namespace omit {

/// Transmissions of the three phase-modulation tones and the local-oscillator
/// phase factor e^{-i Phi}.
struct ThreeToneTransmission {
  Complex t_c{1.0, 0.0};
  Complex t_us{1.0, 0.0};
  Complex t_ls{1.0, 0.0};
  Complex lo_phase{1.0, 0.0};

  static ThreeToneTransmission make(Complex t_c, Complex t_us, Complex t_ls, double phi);
};

/// Coefficients of cos(Omega t) and sin(Omega t) in the balanced-detector cross
/// term, prefactor beta E_cav E_LO dropped.
struct DemodulatedQuadratures {
  double cos_term = 0.0;
  double sin_term = 0.0;
};

struct HomodyneSignal {
  double in_phase = 0.0;    // A
  double quadrature = 0.0;  // B
  Complex t_hom;            // A + i B
  Complex t_hom_norm;       // t_hom / (1 - t_r)
};

/// Raw demodulated coefficients of the beat signal
///   Re[e^{-i Phi} (-2 t_c cos(Omega t) + t_us e^{i Omega t} + t_ls e^{-i Omega t})].
DemodulatedQuadratures demodulate(const ThreeToneTransmission& tones);

/// Homodyne response. The receiver output is reported as t_hom = -(cos - i sin)
/// of the raw coefficients, which fixes the overall sign and demodulation
/// convention so that t_hom = 1 - t_us when carrier and lower sideband pass
/// unchanged and Phi = 0.
HomodyneSignal quadratures_full(const ThreeToneTransmission& tones, Complex t_r = {0.0, 0.0});

/// Bare-cavity transmission of a tone at `offset` from the control laser.
Complex bare_cavity_transmission(const Device& device, double delta_bar, double offset);

/// Three-tone set for a modulation at probe offset `omega`: carrier and lower
/// sideband from the bare cavity, upper sideband given by the caller.
ThreeToneTransmission three_tones(const Device& device, double delta_bar, double omega,
                                  Complex t_us, double lo_phase = 0.0);

/// Resolved-sideband limit of the receiver: t_hom = 1 - t_p.
Complex homodyne_rsb(Complex t_p);

/// Normalized homodyne power |t'_hom|^2 of the weak-coupling model.
double homodyne_dip(const OperatingPoint& op, const Device& device, double delta_prime);

}  // namespace omit
