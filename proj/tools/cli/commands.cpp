#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "omit/eit.hpp"
#include "omit/errors.hpp"
#include "omit/units.hpp"

namespace omit::cli {

namespace {

std::string format_double(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

Column column_for(Observable observable) {
  return {std::string(to_string(observable)), std::string(unit_of(observable))};
}

Column column_for(SweepAxis axis) {
  return {std::string(to_string(axis)), std::string(unit_of(axis))};
}

ResultEnvelope make_envelope(std::string command, const RunConfig& config) {
  ResultEnvelope envelope;
  envelope.command = std::move(command);
  envelope.config_echo = echo_config(config);
  envelope.derived = derived_scalars(config);
  return envelope;
}

void append_warnings(ResultEnvelope& envelope, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) {
    if (std::find(envelope.warnings.begin(), envelope.warnings.end(), w) ==
        envelope.warnings.end()) {
      envelope.warnings.push_back(w);
    }
  }
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const auto comma = line.find(',', begin);
    fields.push_back(trim(line.substr(begin, comma - begin)));
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return fields;
}

}  // namespace

std::vector<DerivedScalar> derived_scalars(const RunConfig& config) {
  const ExperimentContext context = to_context(config);
  const Device device = context.effective_device();
  const OperatingPoint op = context.operating_point();
  const double tau = op.omega_c_rate > 0.0 || device.mechanics.gamma_m > 0.0
                         ? group_delay_closed_form(op, device)
                         : 0.0;
  return {
      {"eta_c", context.device.cavity.eta_c(), "1"},
      {"eta_c_effective", device.cavity.eta_c(), "1"},
      {"kappa", device.cavity.kappa(), "rad/s"},
      {"q_m", device.mechanics.quality_factor(), "1"},
      {"x_zpf", op.x_zpf, "m"},
      {"omega_c", op.omega_c_rate, "rad/s"},
      {"cooperativity", op.cooperativity, "1"},
      {"gamma_omit", omit_width(op, device), "rad/s"},
      {"group_delay_0", tau, "s"},
  };
}

ResultEnvelope cmd_steady_state(const RunConfig& config) {
  ResultEnvelope envelope = make_envelope("steady-state", config);
  const ExperimentContext context = to_context(config);
  const Device device = context.effective_device();

  // Taper loss reduces the intracavity amplitude by f, i.e. the flux by f^2.
  const double loss = context.taper_loss_factor;
  const double flux =
      photon_flux(context.drive.input_power, device.cavity.wavelength) / (loss * loss);
  const double laser_detuning = config.drive.laser_detuning
                                    ? hz_to_rad(*config.drive.laser_detuning)
                                    : laser_detuning_for(device, context.operating_point());

  const auto roots = solve_steady_state(device, laser_detuning, flux);
  envelope.table.columns = {{"a_bar", "sqrt(photons)"}, {"x_bar", "m"},
                            {"delta_bar", "rad/s"},     {"omega_c", "rad/s"},
                            {"cooperativity", "1"},     {"stable", "bool"},
                            {"residual", "1"}};
  for (const auto& root : roots) {
    const auto& p = root.point;
    envelope.table.rows.push_back({p.a_bar, p.x_bar, p.delta_bar, p.omega_c_rate, p.cooperativity,
                                   root.stable ? 1.0 : 0.0, root.residual});
  }
  envelope.report = {{"laser_detuning", laser_detuning}, {"root_count", roots.size()}};
  if (roots.size() > 1) envelope.warnings.push_back("bistable: several static solutions");
  return envelope;
}

ResultEnvelope cmd_sweep(const RunConfig& config, unsigned threads) {
  ResultEnvelope envelope = make_envelope("sweep", config);
  const SweepSpec spec = to_sweep_spec(config);
  const SweepResult result = run_sweep(spec, threads);

  envelope.table.columns.push_back(column_for(result.axis));
  for (const auto observable : result.observables) {
    envelope.table.columns.push_back(column_for(observable));
  }
  for (const auto& record : result.records) {
    std::vector<Cell> row{record.axis_value};
    row.insert(row.end(), record.values.begin(), record.values.end());
    envelope.table.rows.push_back(std::move(row));
  }
  append_warnings(envelope, result.warnings);
  return envelope;
}

ResultEnvelope cmd_power_series(const RunConfig& config, unsigned threads) {
  if (config.sweep.powers.empty()) {
    throw ConfigError("sweep.powers: power-series needs a power list", "sweep.powers", 0);
  }
  ResultEnvelope envelope = make_envelope("power-series", config);
  const ExperimentContext context = to_context(config);
  const auto rows = power_series_analysis(config.sweep.powers, context, config.sweep.model,
                                          config.sweep.count, threads);
  envelope.table.columns = {{"power", "W"},          {"cooperativity", "1"},
                            {"fitted_width", "rad/s"}, {"fitted_peak", "1"},
                            {"theory_width", "rad/s"}, {"theory_peak", "1"},
                            {"status", ""}};
  for (const auto& row : rows) {
    envelope.table.rows.push_back({row.power, row.cooperativity, row.fitted_width, row.fitted_peak,
                                   row.theory_width, row.theory_peak, row.status});
  }
  return envelope;
}

ResultEnvelope cmd_detuning_series(const RunConfig& config, unsigned threads) {
  if (config.sweep.detunings.empty()) {
    throw ConfigError("sweep.detunings: detuning-series needs a detuning list", "sweep.detunings",
                      0);
  }
  ResultEnvelope envelope = make_envelope("detuning-series", config);
  const ExperimentContext context = to_context(config);
  std::vector<double> detunings;
  for (const double d : config.sweep.detunings) detunings.push_back(hz_to_rad(d));
  const auto traces = detuning_series(detunings, context, config.sweep.observables,
                                      config.sweep.model, config.sweep.count, threads);

  envelope.table.columns = {column_for(SweepAxis::control_detuning),
                            column_for(SweepAxis::probe_offset)};
  for (const auto observable : config.sweep.observables) {
    envelope.table.columns.push_back(column_for(observable));
  }
  for (const auto& trace : traces) {
    for (const auto& record : trace.result.records) {
      std::vector<Cell> row{trace.detuning, record.axis_value};
      row.insert(row.end(), record.values.begin(), record.values.end());
      envelope.table.rows.push_back(std::move(row));
    }
    append_warnings(envelope, trace.result.warnings);
  }
  return envelope;
}

EitComparison cmd_eit_compare(const RunConfig& config, double tolerance, bool break_mapping) {
  EitComparison comparison;
  comparison.envelope = make_envelope("eit-compare", config);
  const ExperimentContext context = to_context(config);
  const Device device = context.effective_device();
  const OperatingPoint op = context.operating_point();

  LambdaMapping mapping = map_omit_to_eit(op, device);
  if (break_mapping) mapping.lambda.gamma12 *= 2.0;

  const std::vector<double> grid = window_grid(context, 1001);
  double worst = 0.0;
  auto& table = comparison.envelope.table;
  table.columns = {{"probe_offset", "rad/s"},
                   {"relative_deviation", "1"}};
  for (const double dp : grid) {
    const Complex expected = mapping.scale * response_rsb(op, device, dp);
    const Complex actual = eit_coherence(mapping.lambda, dp);
    const double deviation = std::abs(actual - expected) / std::abs(expected);
    worst = std::max(worst, std::isnan(deviation) ? INFINITY : deviation);
    table.rows.push_back({dp, deviation});
  }
  comparison.max_relative_deviation = worst;
  comparison.passed = worst <= tolerance;

  const auto& l = mapping.lambda;
  comparison.envelope.report = {
      {"max_relative_deviation", worst},
      {"tolerance", tolerance},
      {"passed", comparison.passed},
      {"grid_points", grid.size()},
      {"lambda_system",
       {{"omega21", l.omega21},
        {"omega31", l.omega31},
        {"mu13", l.mu13},
        {"mu23", l.mu23},
        {"gamma12", l.gamma12},
        {"gamma13", l.gamma13},
        {"field_c", l.field_c},
        {"field_p", l.field_p},
        {"omega_c_laser", l.omega_c_laser},
        {"omega_p_laser", l.omega_p_laser},
        {"rabi", l.rabi()},
        {"cooperativity", eit_cooperativity(l)}}},
      {"scale", {mapping.scale.real(), mapping.scale.imag()}},
  };
  if (std::abs(op.delta_bar + device.mechanics.omega_m) > 0.0) {
    comparison.envelope.warnings.push_back(
        "control off the lower sideband: the mapped control frequency is resolved only to "
        "ulp(omega31), limiting agreement to ~1e-8");
  }
  return comparison;
}

CsvData read_csv(std::istream& in) {
  CsvData data;
  std::string line;
  bool header = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto fields = split_commas(view);
    if (!header) {
      for (const auto field : fields) {
        const auto open = field.find('[');
        if (open != std::string_view::npos && field.back() == ']') {
          data.names.emplace_back(trim(field.substr(0, open)));
          data.units.emplace_back(field.substr(open + 1, field.size() - open - 2));
        } else {
          data.names.emplace_back(field);
          data.units.emplace_back();
        }
      }
      data.columns.resize(fields.size());
      header = true;
      continue;
    }
    if (fields.size() != data.names.size()) {
      throw IoError("csv line " + std::to_string(line_no) + ": expected " +
                    std::to_string(data.names.size()) + " fields");
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      double value = NAN;
      const auto field = fields[i];
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
      if (ec != std::errc() || ptr != field.data() + field.size()) value = NAN;
      data.columns[i].push_back(value);
    }
  }
  if (!header) throw IoError("csv has no header row");
  return data;
}

CsvData read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_csv(in);
}

ResultEnvelope cmd_fit(const std::string& csv_path, const std::string& column) {
  const CsvData data = read_csv_file(csv_path);
  const auto it = std::find(data.names.begin(), data.names.end(), column);
  if (it == data.names.end()) {
    throw ConfigError("--column: no column '" + column + "' in " + csv_path, "--column", 0);
  }
  const auto index = static_cast<std::size_t>(it - data.names.begin());
  if (index == 0) throw ConfigError("--column: cannot fit the axis column", "--column", 0);
  const auto& x = data.columns.front();
  const auto& y = data.columns[index];
  const LorentzianFit fit =
      fit_lorentzian(std::span<const double>(x), std::span<const double>(y));

  ResultEnvelope envelope;
  envelope.command = "fit";
  const std::string& x_unit = data.units.front();
  const std::string& y_unit = data.units[index];
  envelope.table.columns = {{"center", x_unit},      {"fwhm", x_unit},
                            {"depth", y_unit},       {"baseline", y_unit},
                            {"rms_residual", y_unit}, {"converged", "bool"},
                            {"iterations", "1"},     {"fwhm_unconstrained", "bool"}};
  envelope.table.rows.push_back({fit.center, fit.fwhm, fit.depth, fit.baseline, fit.rms_residual,
                                 fit.converged ? 1.0 : 0.0, static_cast<double>(fit.iterations),
                                 fit.fwhm_unconstrained ? 1.0 : 0.0});
  envelope.report = {{"source", csv_path}, {"column", column}};
  if (!fit.converged) envelope.warnings.push_back("fit did not converge");
  return envelope;
}

void write_csv(const ResultEnvelope& envelope, std::ostream& out) {
  out << "# omit-sim " << envelope.command << "\n";
  for (const auto& d : envelope.derived) {
    out << "# derived " << d.name << " = " << format_double(d.value) << " " << d.unit << "\n";
  }
  for (const auto& w : envelope.warnings) out << "# warning: " << w << "\n";
  std::istringstream echo(envelope.config_echo);
  for (std::string line; std::getline(echo, line);) out << "# config: " << line << "\n";

  const auto& columns = envelope.table.columns;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out << (i > 0 ? "," : "") << columns[i].name << "[" << columns[i].unit << "]";
  }
  out << "\n";
  for (const auto& row : envelope.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ",";
      if (const auto* v = std::get_if<double>(&row[i])) {
        out << format_double(*v);
      } else {
        out << std::get<std::string>(row[i]);
      }
    }
    out << "\n";
  }
}

nlohmann::json to_json(const ResultEnvelope& envelope) {
  nlohmann::json j;
  j["command"] = envelope.command;
  j["config"] = envelope.config_echo;
  nlohmann::json derived = nlohmann::json::object();
  for (const auto& d : envelope.derived) derived[d.name] = {{"value", d.value}, {"unit", d.unit}};
  j["derived"] = derived;
  j["warnings"] = envelope.warnings;
  nlohmann::json columns = nlohmann::json::array();
  for (const auto& c : envelope.table.columns) columns.push_back({{"name", c.name}, {"unit", c.unit}});
  j["columns"] = columns;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : envelope.table.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& cell : row) {
      std::visit([&r](const auto& v) { r.push_back(v); }, cell);
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = rows;
  if (!envelope.report.is_null()) j["report"] = envelope.report;
  return j;
}

void write_json(const ResultEnvelope& envelope, std::ostream& out) {
  out << to_json(envelope).dump(2) << "\n";
}

}  // namespace omit::cli
