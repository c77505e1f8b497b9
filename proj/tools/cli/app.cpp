#include "app.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "omit/errors.hpp"

namespace omit::cli {

namespace {

struct Options {
  std::string config_path;
  std::string out_path;
  std::string format;
  std::string model;
  unsigned threads = 0;
  std::string csv_path;
  std::string column;
  bool break_mapping = false;
  double tolerance = 1e-12;
};

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("OMIT_SIM_THREADS")) {
    try {
      const long value = std::stol(env);
      if (value > 0) return static_cast<unsigned>(value);
    } catch (const std::exception&) {
    }
    throw ConfigError("OMIT_SIM_THREADS: not a positive integer", "OMIT_SIM_THREADS", 0);
  }
  return 1;
}

RunConfig load_with_overrides(const Options& options) {
  RunConfig config = load_config(options.config_path);
  if (!options.model.empty()) {
    const auto model = parse_model(options.model);
    if (!model) throw ConfigError("--model: unknown model '" + options.model + "'", "--model", 0);
    config.sweep.model = *model;
  }
  if (!options.format.empty()) {
    config.output.format = options.format == "json" ? OutputFormat::json : OutputFormat::csv;
  }
  if (!options.out_path.empty()) config.output.path = options.out_path;
  return config;
}

void emit(const ResultEnvelope& envelope, OutputFormat format, const std::string& path,
          std::ostream& out) {
  auto write = [&](std::ostream& stream) {
    if (format == OutputFormat::json) {
      write_json(envelope, stream);
    } else {
      write_csv(envelope, stream);
    }
  };
  if (path.empty() || path == "-") {
    write(out);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open output '" + path + "' for writing");
  write(file);
  file.flush();
  if (!file) throw IoError("write to '" + path + "' failed");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optomechanically induced transparency simulator", "omit-sim"};
  app.footer("\n" + config_reference() +
             "\nExit status: 0 ok, 2 config error, 3 solver failure, 4 I/O failure, "
             "5 verification failure.\nOMIT_SIM_THREADS sets the thread count when --threads "
             "is absent.");
  app.require_subcommand(1);

  Options options;
  auto add_common = [&options](CLI::App* sub, bool needs_config) {
    auto* config = sub->add_option("--config", options.config_path, "config file (INI)");
    if (needs_config) config->required()->check(CLI::ExistingFile);
    sub->add_option("--out", options.out_path, "output file (default: [output] path or stdout)");
    sub->add_option("--format", options.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--model", options.model, "full | rsb | weak")
        ->check(CLI::IsMember({"full", "rsb", "weak"}));
    sub->add_option("--threads", options.threads, "worker threads (0: OMIT_SIM_THREADS or 1)");
  };

  auto* steady = app.add_subcommand("steady-state", "list all static solutions");
  auto* sweep = app.add_subcommand("sweep", "evaluate observables along the [sweep] grid");
  auto* power = app.add_subcommand("power-series", "window fits for each power in sweep.powers");
  auto* detuning =
      app.add_subcommand("detuning-series", "cavity-wide probe sweeps for sweep.detunings");
  auto* eit = app.add_subcommand("eit-compare", "compare with the mapped Lambda-system response");
  auto* fit = app.add_subcommand("fit", "fit a Lorentzian to a CSV column");
  for (auto* sub : {steady, sweep, power, detuning, eit}) add_common(sub, true);
  add_common(fit, false);
  eit->add_option("--tolerance", options.tolerance, "maximum relative deviation");
  eit->add_flag("--break-mapping", options.break_mapping)->group("");
  fit->add_option("--csv", options.csv_path, "input CSV")->required();
  fit->add_option("--column", options.column, "column to fit")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; every other command-line problem is a
    // configuration error.
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
  }

  try {
    const unsigned threads = resolve_threads(options.threads);
    if (fit->parsed()) {
      const ResultEnvelope envelope = cmd_fit(options.csv_path, options.column);
      emit(envelope, options.format == "json" ? OutputFormat::json : OutputFormat::csv,
           options.out_path, out);
      return kExitOk;
    }

    const RunConfig config = load_with_overrides(options);
    const OutputFormat format = config.output.format;
    const std::string& path = config.output.path;
    if (steady->parsed()) {
      emit(cmd_steady_state(config), format, path, out);
    } else if (sweep->parsed()) {
      emit(cmd_sweep(config, threads), format, path, out);
    } else if (power->parsed()) {
      emit(cmd_power_series(config, threads), format, path, out);
    } else if (detuning->parsed()) {
      emit(cmd_detuning_series(config, threads), format, path, out);
    } else if (eit->parsed()) {
      const EitComparison comparison =
          cmd_eit_compare(config, options.tolerance, options.break_mapping);
      // The report is JSON by nature; --format csv still writes the per-point table.
      emit(comparison.envelope, options.format == "csv" ? OutputFormat::csv : OutputFormat::json,
           path, out);
      if (!comparison.passed) {
        err << "eit-compare: max relative deviation " << comparison.max_relative_deviation
            << " exceeds " << options.tolerance << "\n";
        return kExitVerification;
      }
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << " (residual " << e.residual() << ")\n";
    return kExitSolver;
  } catch (const ParameterError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace omit::cli
