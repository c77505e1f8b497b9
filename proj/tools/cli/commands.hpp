#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "config.hpp"

namespace omit::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitSolver = 3,
  kExitIo = 4,
  kExitVerification = 5,
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Column {
  std::string name;
  std::string unit;
};

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
};

struct DerivedScalar {
  std::string name;
  double value = 0.0;
  std::string unit;
};

/// What every subcommand produces: the config it ran, scalars derived from it,
/// warnings and a table.
struct ResultEnvelope {
  std::string command;
  std::string config_echo;
  std::vector<DerivedScalar> derived;
  std::vector<std::string> warnings;
  Table table;
  nlohmann::json report;  // command-specific extras, may be null
};

std::vector<DerivedScalar> derived_scalars(const RunConfig& config);

ResultEnvelope cmd_steady_state(const RunConfig& config);
ResultEnvelope cmd_sweep(const RunConfig& config, unsigned threads);
ResultEnvelope cmd_power_series(const RunConfig& config, unsigned threads);
ResultEnvelope cmd_detuning_series(const RunConfig& config, unsigned threads);

struct EitComparison {
  ResultEnvelope envelope;
  double max_relative_deviation = 0.0;
  bool passed = false;
};

/// Compares the mapped Lambda-system coherence with the resolved-sideband
/// anti-Stokes response on a 1001-point window grid. `break_mapping` doubles
/// the ground-state damping of the mapped system, a negative control.
EitComparison cmd_eit_compare(const RunConfig& config, double tolerance = 1e-12,
                              bool break_mapping = false);

struct CsvData {
  std::vector<std::string> names;  // header names without the [unit] part
  std::vector<std::string> units;
  std::vector<std::vector<double>> columns;
};

CsvData read_csv(std::istream& in);
CsvData read_csv_file(const std::string& path);

/// Lorentzian fit of `column` against the first column of a CSV file.
ResultEnvelope cmd_fit(const std::string& csv_path, const std::string& column);

void write_csv(const ResultEnvelope& envelope, std::ostream& out);
void write_json(const ResultEnvelope& envelope, std::ostream& out);
nlohmann::json to_json(const ResultEnvelope& envelope);

}  // namespace omit::cli
