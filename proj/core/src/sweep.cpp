#include "omit/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <thread>

#include "omit/errors.hpp"
#include "omit/homodyne.hpp"

namespace omit {

namespace {

struct AxisInfo {
  SweepAxis axis;
  std::string_view name;
  std::string_view unit;
};

constexpr std::array<AxisInfo, 3> kAxes{{
    {SweepAxis::probe_offset, "probe_offset", "rad/s"},
    {SweepAxis::control_power, "control_power", "W"},
    {SweepAxis::control_detuning, "control_detuning", "rad/s"},
}};

struct ObservableInfo {
  Observable observable;
  std::string_view name;
  std::string_view unit;
};

constexpr std::array<ObservableInfo, 8> kObservables{{
    {Observable::anti_stokes_power, "anti_stokes_power", "s"},
    {Observable::oscillation_amplitude, "oscillation_amplitude", "m*s^0.5"},
    {Observable::power_transmission, "power_transmission", "1"},
    {Observable::normalized_power_transmission, "normalized_power_transmission", "1"},
    {Observable::homodyne_power, "homodyne_power", "1"},
    {Observable::normalized_homodyne_power, "normalized_homodyne_power", "1"},
    {Observable::phase, "phase", "rad"},
    {Observable::group_delay, "group_delay", "s"},
}};

struct ModelInfo {
  ModelVariant model;
  std::string_view name;
};

constexpr std::array<ModelInfo, 3> kModels{{
    {ModelVariant::full, "full"},
    {ModelVariant::rsb, "rsb"},
    {ModelVariant::weak_coupling, "weak"},
}};

std::string format(const char* pattern, double a, double b = 0.0) {
  char buffer[160];
  std::snprintf(buffer, sizeof buffer, pattern, a, b);
  return buffer;
}

void add_warning(std::vector<std::string>& warnings, std::string message) {
  if (std::find(warnings.begin(), warnings.end(), message) == warnings.end()) {
    warnings.push_back(std::move(message));
  }
}

void regime_warnings(ModelVariant model, const ExperimentContext& context,
                     const OperatingPoint& op, std::vector<std::string>& warnings) {
  const Device device = context.effective_device();
  const double kappa = device.cavity.kappa();
  const double omega_m = device.mechanics.omega_m;
  if (model != ModelVariant::full) {
    if (kappa > 0.1 * omega_m) {
      add_warning(warnings, format("kappa/Omega_m = %.3g: resolved-sideband model is approximate",
                                   kappa / omega_m));
    }
    if (std::abs(op.delta_bar + omega_m) > kappa) {
      add_warning(warnings, "control detuned from the lower motional sideband by more than kappa");
    }
  }
  if (model == ModelVariant::weak_coupling &&
      (op.omega_c_rate > 0.1 * kappa || device.mechanics.gamma_m > 0.1 * kappa)) {
    add_warning(warnings, format("Omega_c/kappa = %.3g: weak-coupling model is approximate",
                                 op.omega_c_rate / kappa));
  }
  if (op.delta_bar > 0.0) {
    add_warning(warnings, "blue-detuned control: the static solution may be dynamically unstable");
  }
  if (context.split_rate > 0.0 && context.split_rate < 10.0 * context.device.cavity.kappa()) {
    add_warning(warnings, format("split_rate/kappa = %.3g: doublet not resolved, treated as a "
                                 "single mode",
                                 context.split_rate / context.device.cavity.kappa()));
  }
}

Complex normalized(Complex value, Complex t_r) {
  const Complex span = 1.0 - t_r;
  if (span == 0.0) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
  return value / span;
}

// All requested observables at one probe position Delta'.
std::vector<double> evaluate_point(const SweepSpec& spec, const Device& device,
                                   const OperatingPoint& op, double delta_prime) {
  const ModelVariant model = spec.model;
  const double omega = device.mechanics.omega_m + delta_prime;
  const TransmissionPoint point = transmission(model, op, device, delta_prime);

  std::vector<double> values;
  values.reserve(spec.observables.size());
  for (const Observable observable : spec.observables) {
    switch (observable) {
      case Observable::anti_stokes_power:
      case Observable::oscillation_amplitude: {
        Complex a_minus;
        Complex x_amp;
        if (model == ModelVariant::full) {
          const LinearResponse response = response_direct_solve(op, device, omega);
          a_minus = response.a_minus;
          x_amp = response.x_amp;
        } else {
          a_minus = response_rsb(op, device, delta_prime);
          x_amp = mechanical_amplitude_rsb(op, device, delta_prime, a_minus);
        }
        values.push_back(observable == Observable::anti_stokes_power ? std::norm(a_minus)
                                                                     : std::abs(x_amp));
        break;
      }
      case Observable::power_transmission:
        values.push_back(point.power_transmission);
        break;
      case Observable::normalized_power_transmission:
        values.push_back(std::norm(point.t_p_norm));
        break;
      case Observable::homodyne_power:
      case Observable::normalized_homodyne_power: {
        Complex t_hom;
        if (model == ModelVariant::full) {
          t_hom = quadratures_full(three_tones(device, op.delta_bar, omega, point.t_p,
                                               spec.fixed.lo_phase))
                      .t_hom;
        } else {
          t_hom = homodyne_rsb(point.t_p);
        }
        if (observable == Observable::normalized_homodyne_power) {
          t_hom = normalized(t_hom, residual_transmission(model, op, device));
        }
        values.push_back(std::norm(t_hom));
        break;
      }
      case Observable::phase:
        values.push_back(point.phase);
        break;
      case Observable::group_delay:
        values.push_back(group_delay(model, op, device, delta_prime));
        break;
    }
  }
  return values;
}

}  // namespace

std::string_view to_string(SweepAxis axis) {
  for (const auto& info : kAxes) {
    if (info.axis == axis) return info.name;
  }
  return "unknown";
}

std::string_view to_string(Observable observable) {
  for (const auto& info : kObservables) {
    if (info.observable == observable) return info.name;
  }
  return "unknown";
}

std::string_view to_string(ModelVariant variant) {
  for (const auto& info : kModels) {
    if (info.model == variant) return info.name;
  }
  return "unknown";
}

std::string_view unit_of(SweepAxis axis) {
  for (const auto& info : kAxes) {
    if (info.axis == axis) return info.unit;
  }
  return "";
}

std::string_view unit_of(Observable observable) {
  for (const auto& info : kObservables) {
    if (info.observable == observable) return info.unit;
  }
  return "";
}

std::optional<SweepAxis> parse_axis(std::string_view name) {
  for (const auto& info : kAxes) {
    if (info.name == name) return info.axis;
  }
  return std::nullopt;
}

std::optional<Observable> parse_observable(std::string_view name) {
  for (const auto& info : kObservables) {
    if (info.name == name) return info.observable;
  }
  return std::nullopt;
}

std::optional<ModelVariant> parse_model(std::string_view name) {
  for (const auto& info : kModels) {
    if (info.name == name) return info.model;
  }
  if (name == "weak_coupling") return ModelVariant::weak_coupling;
  return std::nullopt;
}

Device ExperimentContext::effective_device() const {
  Device effective = device;
  SplitModeParams split{split_rate, device.cavity};
  if (split.resolved()) effective.cavity = effective_cavity(split);
  return effective;
}

OperatingPoint ExperimentContext::operating_point() const {
  const Device effective = effective_device();
  return apply_taper_loss(omit::operating_point(effective, drive), effective, taper_loss_factor);
}

void SweepSpec::validate() const {
  if (grid.size() < 2) throw ParameterError("sweep grid needs at least 2 points");
  const bool increasing = grid[1] > grid[0];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw ParameterError("sweep grid contains a non-finite value");
    if (i > 0 && (increasing ? !(grid[i] > grid[i - 1]) : !(grid[i] < grid[i - 1]))) {
      throw ParameterError("sweep grid must be strictly monotone");
    }
  }
  if (observables.empty()) throw ParameterError("sweep requests no observables");
  if (axis == SweepAxis::control_power && std::min(grid.front(), grid.back()) < 0.0) {
    throw ParameterError("control power grid must be nonnegative");
  }
  fixed.device.validate();
  fixed.drive.validate();
}

std::vector<double> SweepResult::column(Observable observable) const {
  const auto it = std::find(observables.begin(), observables.end(), observable);
  if (it == observables.end()) {
    throw ParameterError(std::string("observable not in sweep: ") +
                         std::string(to_string(observable)));
  }
  const auto index = static_cast<std::size_t>(it - observables.begin());
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& record : records) out.push_back(record.values[index]);
  return out;
}

std::vector<double> SweepResult::axis_values() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& record : records) out.push_back(record.axis_value);
  return out;
}

SweepResult run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();

  SweepResult result;
  result.axis = spec.axis;
  result.model = spec.model;
  result.observables = spec.observables;
  result.records.resize(spec.grid.size());

  const Device device = spec.fixed.effective_device();
  const OperatingPoint fixed_op = spec.fixed.operating_point();
  const double fixed_delta_prime = spec.fixed.drive.probe_offset - device.mechanics.omega_m;

  auto evaluate = [&](std::size_t i) {
    const double value = spec.grid[i];
    SweepRecord& record = result.records[i];
    record.axis_value = value;
    if (spec.axis == SweepAxis::probe_offset) {
      record.values = evaluate_point(spec, device, fixed_op, value);
      return;
    }
    ExperimentContext context = spec.fixed;
    if (spec.axis == SweepAxis::control_power) {
      context.drive.input_power = value;
    } else {
      context.drive.detuning = value;
    }
    record.values = evaluate_point(spec, device, context.operating_point(), fixed_delta_prime);
  };

  const std::size_t n = spec.grid.size();
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, n);
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) evaluate(i);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < n; i += workers) evaluate(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Post-processing runs in grid order so the result does not depend on the
  // thread count.
  for (std::size_t k = 0; k < spec.observables.size(); ++k) {
    const Observable observable = spec.observables[k];
    if (observable == Observable::phase && spec.axis == SweepAxis::probe_offset) {
      std::vector<double> phase = result.column(observable);
      phase = unwrap_phase(phase);
      for (std::size_t i = 0; i < n; ++i) result.records[i].values[k] = phase[i];
    }
    if (spec.normalize_to_max && (observable == Observable::anti_stokes_power ||
                                  observable == Observable::oscillation_amplitude)) {
      double peak = 0.0;
      for (const auto& record : result.records) peak = std::max(peak, record.values[k]);
      if (peak > 0.0) {
        for (auto& record : result.records) record.values[k] /= peak;
      }
    }
  }

  if (spec.axis == SweepAxis::probe_offset) {
    regime_warnings(spec.model, spec.fixed, fixed_op, result.warnings);
  } else {
    for (const double value : spec.grid) {
      ExperimentContext context = spec.fixed;
      if (spec.axis == SweepAxis::control_power) {
        context.drive.input_power = value;
      } else {
        context.drive.detuning = value;
      }
      regime_warnings(spec.model, context, context.operating_point(), result.warnings);
    }
  }
  return result;
}

std::vector<double> linear_grid(double start, double stop, std::size_t count) {
  if (count < 2) throw ParameterError("grid count must be at least 2");
  if (!std::isfinite(start) || !std::isfinite(stop) || start == stop) {
    throw ParameterError("grid needs finite, distinct endpoints");
  }
  std::vector<double> grid(count);
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid[i] = start + step * static_cast<double>(i);
  grid.back() = stop;
  return grid;
}

std::vector<double> window_grid(const ExperimentContext& context, std::size_t count) {
  const double width = omit_width(context.operating_point(), context.effective_device());
  return linear_grid(-5.0 * width, 5.0 * width, count);
}

std::vector<double> cavity_grid(const ExperimentContext& context, std::size_t count) {
  const Device device = context.effective_device();
  const double center = -context.drive.detuning - device.mechanics.omega_m;
  const double half_span = 3.0 * device.cavity.kappa();
  return linear_grid(center - half_span, center + half_span, count);
}

LorentzianFit fit_lorentzian(const SweepResult& result, Observable observable,
                             const FitOptions& options) {
  const std::vector<double> x = result.axis_values();
  const std::vector<double> y = result.column(observable);
  return fit_lorentzian(std::span<const double>(x), std::span<const double>(y), options);
}

std::vector<PowerSeriesRow> power_series_analysis(const std::vector<double>& powers,
                                                  const ExperimentContext& context,
                                                  ModelVariant model, std::size_t points,
                                                  unsigned threads) {
  std::vector<PowerSeriesRow> rows;
  rows.reserve(powers.size());
  for (const double power : powers) {
    SweepSpec spec;
    spec.axis = SweepAxis::probe_offset;
    spec.fixed = context;
    spec.fixed.drive.input_power = power;
    spec.observables = {Observable::normalized_power_transmission};
    spec.model = model;

    const OperatingPoint op = spec.fixed.operating_point();
    const Device device = spec.fixed.effective_device();
    PowerSeriesRow row;
    row.power = power;
    row.cooperativity = op.cooperativity;
    row.theory_width = omit_width(op, device);
    row.theory_peak = peak_transparency(op.cooperativity);

    if (!(op.cooperativity > 0.0)) {
      row.status = "no_window";
      rows.push_back(row);
      continue;
    }
    spec.grid = window_grid(spec.fixed, points);
    const SweepResult result = run_sweep(spec, threads);
    const LorentzianFit fit = fit_lorentzian(result, Observable::normalized_power_transmission);
    row.fitted_width = fit.fwhm;
    row.fitted_peak = fit.extremum();
    row.fit_converged = fit.converged;
    if (!fit.converged) {
      row.status = "fit_not_converged";
    } else if (fit.fwhm_unconstrained) {
      row.status = "fit_flat";
    } else {
      row.status = "ok";
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<DetuningTrace> detuning_series(const std::vector<double>& detunings,
                                           const ExperimentContext& context,
                                           const std::vector<Observable>& observables,
                                           ModelVariant model, std::size_t points,
                                           unsigned threads) {
  std::vector<DetuningTrace> traces;
  traces.reserve(detunings.size());
  for (const double detuning : detunings) {
    SweepSpec spec;
    spec.axis = SweepAxis::probe_offset;
    spec.fixed = context;
    spec.fixed.drive.detuning = detuning;
    spec.observables = observables;
    spec.model = model;
    spec.grid = cavity_grid(spec.fixed, points);
    traces.push_back({detuning, run_sweep(spec, threads)});
  }
  return traces;
}

}  // namespace omit
