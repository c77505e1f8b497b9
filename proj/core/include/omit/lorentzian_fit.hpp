#pragma once

#include <span>

namespace omit {

/// y = baseline - depth * (w/2)^2 / ((x - center)^2 + (w/2)^2).
/// depth > 0 is a dip, depth < 0 a peak.
double lorentzian(double x, double center, double fwhm, double depth, double baseline);

struct LorentzianFit {
  double center = 0.0;
  double fwhm = 0.0;
  double depth = 0.0;
  double baseline = 0.0;
  double rms_residual = 0.0;
  bool converged = false;
  int iterations = 0;
  // Set when the fitted depth vanishes, so center and fwhm carry no information.
  bool fwhm_unconstrained = false;

  double operator()(double x) const { return lorentzian(x, center, fwhm, depth, baseline); }
  /// Model value at the center (minimum of a dip, maximum of a peak).
  double extremum() const { return baseline - depth; }
};

struct FitOptions {
  int max_iterations = 200;
  double tolerance = 1e-10;  // relative parameter change
};

/// Damped least-squares (Levenberg-Marquardt) fit with an analytic Jacobian.
/// Initialization is deterministic: center at the extremum farthest from the
/// baseline, baseline = median of the outer 10% of points, fwhm = distance
/// between the half-maximum crossings around the extremum (half the x span if
/// the data never falls that far). Requires at least 5 finite points.
///
/// On non-convergence the best parameters found are returned with
/// converged = false.
LorentzianFit fit_lorentzian(std::span<const double> x, std::span<const double> y,
                             const FitOptions& options = {});

}  // namespace omit
