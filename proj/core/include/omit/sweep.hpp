#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "omit/lorentzian_fit.hpp"
#include "omit/linear_response.hpp"
#include "omit/mode_splitting.hpp"

namespace omit {

enum class SweepAxis {
  probe_offset,      // Delta' = Omega - Omega_m, rad/s
  control_power,     // W at the cavity input
  control_detuning,  // effective detuning Delta_bar, rad/s
};

enum class Observable {
  anti_stokes_power,              // |A-|^2 per unit probe flux, s
  oscillation_amplitude,          // |X| per unit probe amplitude
  power_transmission,             // |t_p|^2
  normalized_power_transmission,  // |t_p'|^2
  homodyne_power,                 // |t_hom|^2
  normalized_homodyne_power,      // |t_hom'|^2
  phase,                          // arg t_p, unwrapped along the probe axis
  group_delay,                    // s
};

std::string_view to_string(SweepAxis axis);
std::string_view to_string(Observable observable);
std::string_view to_string(ModelVariant variant);
std::string_view unit_of(SweepAxis axis);
std::string_view unit_of(Observable observable);
std::optional<SweepAxis> parse_axis(std::string_view name);
std::optional<Observable> parse_observable(std::string_view name);
std::optional<ModelVariant> parse_model(std::string_view name);

/// Everything held fixed during a sweep. The device is the nominal one; the
/// split-mode and taper-loss corrections are applied on top of it.
struct ExperimentContext {
  Device device;
  DriveParams drive;         // drive.probe_offset is Omega, not Delta'
  double lo_phase = 0.0;     // homodyne local-oscillator phase, rad
  double taper_loss_factor = 1.0;
  double split_rate = 0.0;   // backscattering rate gamma, rad/s

  /// Device seen by the probe: with a resolved doublet the near-resonant
  /// stationary mode, coupling parameter halved.
  Device effective_device() const;
  OperatingPoint operating_point() const;
};

struct SweepSpec {
  SweepAxis axis = SweepAxis::probe_offset;
  std::vector<double> grid;  // internal units, strictly monotone
  ExperimentContext fixed;
  std::vector<Observable> observables;
  ModelVariant model = ModelVariant::full;
  // Divide |A-|^2 and |X| by their maximum over the sweep.
  bool normalize_to_max = false;

  void validate() const;
};

struct SweepRecord {
  double axis_value = 0.0;
  std::vector<double> values;  // aligned with SweepSpec::observables
};

struct SweepResult {
  SweepAxis axis = SweepAxis::probe_offset;
  ModelVariant model = ModelVariant::full;
  std::vector<Observable> observables;
  std::vector<SweepRecord> records;
  std::vector<std::string> warnings;

  /// Values of one observable in grid order. Throws ParameterError when the
  /// observable was not requested.
  std::vector<double> column(Observable observable) const;
  std::vector<double> axis_values() const;
};

/// Evaluates every grid point, in parallel when `threads` > 1. Records are in
/// grid order and bitwise independent of the thread count. Regime violations
/// of the chosen model become warnings, not errors.
SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 1);

/// `count` evenly spaced points from start to stop inclusive.
std::vector<double> linear_grid(double start, double stop, std::size_t count);

/// Delta' in [-5, 5] Gamma_OMIT around the two-photon resonance.
std::vector<double> window_grid(const ExperimentContext& context, std::size_t count = 2001);

/// Delta' covering +-3 kappa around the cavity resonance, which sits at
/// Delta' = -Delta_bar - Omega_m.
std::vector<double> cavity_grid(const ExperimentContext& context, std::size_t count = 2001);

LorentzianFit fit_lorentzian(const SweepResult& result, Observable observable,
                             const FitOptions& options = {});

struct PowerSeriesRow {
  double power = 0.0;  // W
  double cooperativity = 0.0;
  double fitted_width = 0.0;  // rad/s
  double fitted_peak = 0.0;   // fitted |t_p'(0)|^2
  double theory_width = 0.0;  // gamma_m (1 + C)
  double theory_peak = 0.0;   // (C / (1 + C))^2
  bool fit_converged = false;
  std::string status;  // "ok" or the reason the fit is not trusted
};

/// One window sweep of |t_p'|^2 per power, each fitted with a Lorentzian.
std::vector<PowerSeriesRow> power_series_analysis(const std::vector<double>& powers,
                                                  const ExperimentContext& context,
                                                  ModelVariant model = ModelVariant::weak_coupling,
                                                  std::size_t points = 2001,
                                                  unsigned threads = 1);

struct DetuningTrace {
  double detuning = 0.0;  // Delta_bar, rad/s
  SweepResult result;
};

/// A cavity-wide probe sweep for each control detuning.
std::vector<DetuningTrace> detuning_series(const std::vector<double>& detunings,
                                           const ExperimentContext& context,
                                           const std::vector<Observable>& observables,
                                           ModelVariant model = ModelVariant::full,
                                           std::size_t points = 2001, unsigned threads = 1);

}  // namespace omit
