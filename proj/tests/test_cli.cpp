#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "app.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "omit/units.hpp"

namespace omit::cli {
namespace {

namespace fs = std::filesystem;

constexpr const char* kBase = R"(# comment
[device]
kappa0 = 7.5 MHz
kappa_ex = 7.5 MHz   ; inline comment
wavelength = 775 nm
m_eff = 20 ng
omega_m = 51.8 MHz
gamma_m = 41 kHz
g0 = -12 GHz/nm

[drive]
power = 0.5 mW
detuning = -51.8 MHz

[sweep]
grid = window
count = 201
observables = power_transmission, phase
)";

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "omit_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path path = scratch(name);
  std::ofstream(path) << text;
  return path;
}

int invoke(std::vector<std::string> args, std::string* out_text = nullptr,
           std::string* err_text = nullptr) {
  args.insert(args.begin(), "omit-sim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

TEST(Config, UnitsConvertToBaseUnits) {
  const RunConfig c = parse_config(kBase);
  EXPECT_DOUBLE_EQ(c.device.kappa0, 7.5e6);
  EXPECT_DOUBLE_EQ(c.device.wavelength, 775e-9);
  EXPECT_DOUBLE_EQ(c.device.m_eff, 20e-12);
  EXPECT_DOUBLE_EQ(c.device.g0, -12e18);
  EXPECT_DOUBLE_EQ(c.drive.power, 0.5e-3);
  EXPECT_EQ(c.sweep.count, 201u);
  ASSERT_EQ(c.sweep.observables.size(), 2u);
  EXPECT_EQ(c.sweep.observables[1], Observable::phase);
}

TEST(Config, ConversionToRadiansHappensOnce) {
  const RunConfig c = parse_config(kBase);
  const ExperimentContext context = to_context(c);
  EXPECT_DOUBLE_EQ(context.device.mechanics.omega_m, hz_to_rad(51.8e6));
  EXPECT_DOUBLE_EQ(context.drive.detuning, hz_to_rad(-51.8e6));
  EXPECT_DOUBLE_EQ(context.drive.probe_offset, hz_to_rad(51.8e6));
  EXPECT_DOUBLE_EQ(context.device.coupling.g0, hz_to_rad(-12e18));
}

TEST(Config, EchoRoundTrips) {
  const RunConfig c = parse_config(kBase);
  EXPECT_EQ(parse_config(echo_config(c)), c);
  for (const char* name : {"fig1d_off", "fig1d_on", "fig3a", "fig3b", "fig4", "eit_compare"}) {
    const RunConfig figure = load_config(std::string(OMIT_CONFIG_DIR) + "/" + name + ".ini");
    EXPECT_EQ(parse_config(echo_config(figure)), figure) << name;
  }
}

TEST(Config, ErrorsNameKeyAndLine) {
  std::string text = kBase;
  text.replace(text.find("gamma_m = 41 kHz"), 16, "gamma_m = 41 furlongs");
  try {
    parse_config(text);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "device.gamma_m");
    EXPECT_EQ(e.line(), 8);
  }
  try {
    parse_config(std::string(kBase) + "colour = blue\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "sweep.colour");
    EXPECT_EQ(e.line(), 19);
  }
  std::string missing = kBase;
  missing.erase(missing.find("m_eff = 20 ng\n"), 14);
  try {
    parse_config(missing);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "device.m_eff");
    EXPECT_EQ(e.line(), 0);
  }
  EXPECT_THROW(parse_config(std::string(kBase) + "[sweep]\ncount = 5\n"), ConfigError);
}

TEST(Csv, SeventeenDigitRoundTrip) {
  const RunConfig c = parse_config(kBase);
  const ResultEnvelope envelope = cmd_sweep(c, 1);
  std::ostringstream os;
  write_csv(envelope, os);
  std::istringstream is(os.str());
  const CsvData data = read_csv(is);
  ASSERT_EQ(data.names.size(), 3u);
  EXPECT_EQ(data.names[0], "probe_offset");
  EXPECT_EQ(data.units[0], "rad/s");
  ASSERT_EQ(data.columns[1].size(), envelope.table.rows.size());
  for (std::size_t i = 0; i < envelope.table.rows.size(); ++i) {
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_EQ(data.columns[k][i], std::get<double>(envelope.table.rows[i][k]));
    }
  }
}

TEST(Commands, SteadyStateReportsStableBranch) {
  const ResultEnvelope envelope = cmd_steady_state(parse_config(kBase));
  ASSERT_FALSE(envelope.table.rows.empty());
  EXPECT_EQ(envelope.table.columns.front().name, "a_bar");
}

TEST(Commands, FitRecoversWindowWidth) {
  RunConfig config = parse_config(std::string(kBase) + "model = weak\n");
  config.sweep.observables = {Observable::normalized_power_transmission};
  config.sweep.count = 2001;
  const fs::path csv = scratch("window.csv");
  {
    std::ofstream out(csv);
    write_csv(cmd_sweep(config, 1), out);
  }
  const ResultEnvelope fit = cmd_fit(csv.string(), "normalized_power_transmission");
  ASSERT_EQ(fit.table.rows.size(), 1u);
  double width = 0.0;
  for (std::size_t k = 0; k < fit.table.columns.size(); ++k) {
    if (fit.table.columns[k].name == "fwhm") width = std::get<double>(fit.table.rows[0][k]);
  }
  const ExperimentContext context = to_context(config);
  EXPECT_NEAR(width, omit_width(context.operating_point(), context.effective_device()),
              1e-6 * width);
}

TEST(App, ExitCodes) {
  const fs::path good = write_config("good.ini", kBase);
  std::string out, err;
  EXPECT_EQ(invoke({"sweep", "--config", good.string()}, &out), kExitOk);
  EXPECT_NE(out.find("probe_offset[rad/s]"), std::string::npos);

  const fs::path bad = write_config("bad.ini", std::string(kBase) + "count = -3\n");
  EXPECT_EQ(invoke({"sweep", "--config", bad.string()}, nullptr, &err), kExitConfig);
  EXPECT_NE(err.find("sweep.count"), std::string::npos);

  EXPECT_EQ(invoke({"sweep", "--config", scratch("absent.ini").string()}), kExitConfig);
  EXPECT_EQ(invoke({"sweep", "--config", good.string(), "--out", "/nonexistent/dir/x.csv"}),
            kExitIo);
  EXPECT_NE(invoke({"sweep"}), kExitOk);
  EXPECT_EQ(invoke({"sweep", "--config", good.string(), "--model", "quantum"}), kExitConfig);
}

TEST(App, EitCompareAndNegativeControl) {
  const fs::path config = std::string(OMIT_CONFIG_DIR) + "/eit_compare.ini";
  std::string out;
  EXPECT_EQ(invoke({"eit-compare", "--config", config.string()}, &out), kExitOk);
  EXPECT_NE(out.find("max_relative_deviation"), std::string::npos);
  EXPECT_EQ(invoke({"eit-compare", "--config", config.string(), "--break-mapping"}),
            kExitVerification);
}

TEST(App, RerunsAreByteIdentical) {
  const fs::path config = write_config("rerun.ini", kBase);
  // Same output path both times: the path itself is part of the echoed config.
  const fs::path a = scratch("a.csv");
  const fs::path b = scratch("b.json");
  ASSERT_EQ(invoke({"sweep", "--config", config.string(), "--out", a.string(), "--threads", "1"}),
            kExitOk);
  const std::string first = read_file(a);
  ASSERT_EQ(invoke({"sweep", "--config", config.string(), "--out", a.string(), "--threads", "4"}),
            kExitOk);
  EXPECT_EQ(read_file(a), first);
  ASSERT_EQ(invoke({"sweep", "--config", config.string(), "--out", b.string(), "--format",
                    "json"}),
            kExitOk);
  EXPECT_EQ(read_file(b).front(), '{');
}

}  // namespace
}  // namespace omit::cli
