#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "omit/sweep.hpp"

namespace omit::cli {

/// Malformed or incomplete configuration. Carries the offending key and line
/// (line 0 when the problem is a missing key).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, std::string key, int line);

  const std::string& key() const noexcept { return key_; }
  int line() const noexcept { return line_; }

 private:
  std::string key_;
  int line_;
};

enum class GridKind { window, cavity, linear, list };
enum class OutputFormat { csv, json };

/// Parsed configuration, in configuration units: frequencies in Hz, power in
/// W, mass in kg, length in m, g0 in Hz/m. Conversion to rad/s happens once,
/// in to_context / to_sweep_spec.
struct RunConfig {
  struct DeviceSection {
    double kappa0 = 0.0;
    double kappa_ex = 0.0;
    double wavelength = 0.0;
    double m_eff = 0.0;
    double omega_m = 0.0;
    double gamma_m = 0.0;
    double g0 = 0.0;
    double split_rate = 0.0;
    double taper_loss_factor = 1.0;
    bool operator==(const DeviceSection&) const = default;
  } device;

  struct DriveSection {
    double power = 0.0;
    double detuning = 0.0;
    std::optional<double> laser_detuning;  // bare detuning for steady-state
    std::optional<double> probe_offset;    // defaults to omega_m
    double modulation_depth = 0.0;
    double lo_phase = 0.0;  // rad
    bool operator==(const DriveSection&) const = default;
  } drive;

  struct SweepSection {
    SweepAxis axis = SweepAxis::probe_offset;
    GridKind grid = GridKind::window;
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 2001;
    std::vector<double> values;
    std::vector<Observable> observables{Observable::power_transmission};
    ModelVariant model = ModelVariant::full;
    bool normalize = false;
    std::vector<double> powers;      // W, power-series
    std::vector<double> detunings;   // Hz, detuning-series
    bool operator==(const SweepSection&) const = default;
  } sweep;

  struct OutputSection {
    std::string path;  // empty: stdout
    OutputFormat format = OutputFormat::csv;
    bool operator==(const OutputSection&) const = default;
  } output;

  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Canonical text form; parse_config(echo_config(c)) == c.
std::string echo_config(const RunConfig& config);

ExperimentContext to_context(const RunConfig& config);
SweepSpec to_sweep_spec(const RunConfig& config);

std::string_view to_string(GridKind kind);
std::string_view to_string(OutputFormat format);

/// Text for --help describing the keys and accepted units.
std::string config_reference();

}  // namespace omit::cli
