#include "config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "omit/units.hpp"

namespace omit::cli {

ConfigError::ConfigError(const std::string& message, std::string key, int line)
    : std::runtime_error(message), key_(std::move(key)), line_(line) {}

namespace {

enum class Dimension { frequency, power, mass, length, g0, angle, none };

struct UnitScale {
  std::string_view suffix;
  double factor;
};

const std::vector<UnitScale>& units_for(Dimension dim) {
  static const std::vector<UnitScale> frequency{
      {"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}};
  static const std::vector<UnitScale> power{{"W", 1.0}, {"mW", 1e-3}, {"uW", 1e-6}, {"nW", 1e-9}};
  static const std::vector<UnitScale> mass{{"kg", 1.0},   {"g", 1e-3},   {"mg", 1e-6},
                                           {"ug", 1e-9},  {"ng", 1e-12}, {"pg", 1e-15}};
  static const std::vector<UnitScale> length{{"m", 1.0}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}};
  static const std::vector<UnitScale> g0{{"Hz/m", 1.0},    {"Hz/nm", 1e9},   {"kHz/nm", 1e12},
                                         {"MHz/nm", 1e15}, {"GHz/nm", 1e18}, {"GHz/m", 1e9}};
  static const std::vector<UnitScale> angle{{"rad", 1.0}, {"deg", std::numbers::pi / 180.0}};
  static const std::vector<UnitScale> none{};
  switch (dim) {
    case Dimension::frequency: return frequency;
    case Dimension::power: return power;
    case Dimension::mass: return mass;
    case Dimension::length: return length;
    case Dimension::g0: return g0;
    case Dimension::angle: return angle;
    case Dimension::none: return none;
  }
  return none;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> items;
  if (trim(s).empty()) return items;
  std::size_t begin = 0;
  while (true) {
    const auto comma = s.find(',', begin);
    items.push_back(trim(s.substr(begin, comma - begin)));
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return items;
}

struct Context {
  std::string key;  // section.key
  int line = 0;

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << "line " << line << ": " << key << ": " << what;
    throw ConfigError(os.str(), key, line);
  }
};

double parse_quantity(std::string_view text, Dimension dim, const Context& ctx) {
  text = trim(text);
  if (text.empty()) ctx.fail("missing value");
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || !std::isfinite(value)) {
    ctx.fail("not a number: '" + std::string(text) + "'");
  }
  const std::string_view suffix = trim(std::string_view(ptr, static_cast<std::size_t>(end - ptr)));
  if (suffix.empty()) return value;
  for (const auto& unit : units_for(dim)) {
    if (unit.suffix == suffix) return value * unit.factor;
  }
  ctx.fail("unknown unit '" + std::string(suffix) + "'");
}

std::vector<double> parse_quantity_list(std::string_view text, Dimension dim, const Context& ctx) {
  std::vector<double> out;
  for (const auto item : split_list(text)) out.push_back(parse_quantity(item, dim, ctx));
  return out;
}

std::size_t parse_count(std::string_view text, const Context& ctx) {
  text = trim(text);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    ctx.fail("not a nonnegative integer: '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view text, const Context& ctx) {
  text = trim(text);
  if (text == "true" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "no" || text == "0") return false;
  ctx.fail("not a boolean: '" + std::string(text) + "'");
}

std::optional<GridKind> parse_grid_kind(std::string_view s) {
  if (s == "window") return GridKind::window;
  if (s == "cavity") return GridKind::cavity;
  if (s == "linear") return GridKind::linear;
  if (s == "list") return GridKind::list;
  return std::nullopt;
}

std::optional<OutputFormat> parse_format(std::string_view s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  return std::nullopt;
}

using Setter = std::function<void(RunConfig&, std::string_view, const Context&)>;

struct KeySpec {
  Setter set;
  bool required;
  std::string_view help;
};

Setter quantity(double RunConfig::DeviceSection::*field, Dimension dim) {
  return [field, dim](RunConfig& c, std::string_view v, const Context& ctx) {
    c.device.*field = parse_quantity(v, dim, ctx);
  };
}

Setter quantity(double RunConfig::DriveSection::*field, Dimension dim) {
  return [field, dim](RunConfig& c, std::string_view v, const Context& ctx) {
    c.drive.*field = parse_quantity(v, dim, ctx);
  };
}

Setter optional_quantity(std::optional<double> RunConfig::DriveSection::*field, Dimension dim) {
  return [field, dim](RunConfig& c, std::string_view v, const Context& ctx) {
    c.drive.*field = parse_quantity(v, dim, ctx);
  };
}

Dimension axis_dimension(SweepAxis axis) {
  return axis == SweepAxis::control_power ? Dimension::power : Dimension::frequency;
}

// Grid endpoints and values depend on the axis, which may appear later in the
// section, so they are kept as text and converted after the whole file is read.
struct Deferred {
  std::string text;
  Context ctx;
};

struct ParseState {
  std::map<std::string, Deferred> deferred;
};

const std::map<std::string, KeySpec>& key_table() {
  static const std::map<std::string, KeySpec> table{
      {"device.kappa0", {quantity(&RunConfig::DeviceSection::kappa0, Dimension::frequency), true,
                         "intrinsic loss rate, Hz"}},
      {"device.kappa_ex", {quantity(&RunConfig::DeviceSection::kappa_ex, Dimension::frequency),
                           true, "external coupling rate, Hz"}},
      {"device.wavelength", {quantity(&RunConfig::DeviceSection::wavelength, Dimension::length),
                             true, "control wavelength, m"}},
      {"device.m_eff", {quantity(&RunConfig::DeviceSection::m_eff, Dimension::mass), true,
                        "effective mass, kg"}},
      {"device.omega_m", {quantity(&RunConfig::DeviceSection::omega_m, Dimension::frequency), true,
                          "mechanical frequency, Hz"}},
      {"device.gamma_m", {quantity(&RunConfig::DeviceSection::gamma_m, Dimension::frequency), true,
                          "mechanical damping, Hz"}},
      {"device.g0", {quantity(&RunConfig::DeviceSection::g0, Dimension::g0), true,
                     "optomechanical coupling, Hz/m"}},
      {"device.split_rate", {quantity(&RunConfig::DeviceSection::split_rate, Dimension::frequency),
                             false, "cw/ccw backscattering rate, Hz (default 0)"}},
      {"device.taper_loss_factor",
       {quantity(&RunConfig::DeviceSection::taper_loss_factor, Dimension::none), false,
        "divides the coupling rate, >= 1 (default 1)"}},
      {"drive.power", {quantity(&RunConfig::DriveSection::power, Dimension::power), true,
                       "control power at the cavity input, W"}},
      {"drive.detuning", {quantity(&RunConfig::DriveSection::detuning, Dimension::frequency), true,
                          "effective control detuning, Hz"}},
      {"drive.laser_detuning",
       {optional_quantity(&RunConfig::DriveSection::laser_detuning, Dimension::frequency), false,
        "bare laser detuning for steady-state, Hz (default: derived from detuning)"}},
      {"drive.probe_offset",
       {optional_quantity(&RunConfig::DriveSection::probe_offset, Dimension::frequency), false,
        "probe modulation frequency, Hz (default omega_m)"}},
      {"drive.modulation_depth",
       {quantity(&RunConfig::DriveSection::modulation_depth, Dimension::none), false,
        "phase modulation depth (default 0)"}},
      {"drive.lo_phase", {quantity(&RunConfig::DriveSection::lo_phase, Dimension::angle), false,
                          "local oscillator phase, rad (default 0)"}},
      {"sweep.axis",
       {[](RunConfig& c, std::string_view v, const Context& ctx) {
          const auto axis = parse_axis(trim(v));
          if (!axis) ctx.fail("unknown axis '" + std::string(trim(v)) + "'");
          c.sweep.axis = *axis;
        },
        false, "probe_offset | control_power | control_detuning"}},
      {"sweep.grid",
       {[](RunConfig& c, std::string_view v, const Context& ctx) {
          const auto kind = parse_grid_kind(trim(v));
          if (!kind) ctx.fail("unknown grid '" + std::string(trim(v)) + "'");
          c.sweep.grid = *kind;
        },
        false, "window | cavity | linear | list (default window)"}},
      {"sweep.start", {nullptr, false, "linear grid start, axis units"}},
      {"sweep.stop", {nullptr, false, "linear grid stop, axis units"}},
      {"sweep.values", {nullptr, false, "explicit grid, axis units, comma separated"}},
      {"sweep.count",
       {[](RunConfig& c, std::string_view v, const Context& ctx) {
          c.sweep.count = parse_count(v, ctx);
        },
        false, "number of grid points (default 2001)"}},
      {"sweep.observables",
       {[](RunConfig& c, std::string_view v, const Context& ctx) {
          c.sweep.observables.clear();
          for (const auto item : split_list(v)) {
            const auto obs = parse_observable(item);
            if (!obs) ctx.fail("unknown observable '" + std::string(item) + "'");
            c.sweep.observables.push_back(*obs);
          }
          if (c.sweep.observables.empty()) ctx.fail("empty observable list");
        },
        false, "comma separated observable names"}},
      {"sweep.model",
       {[](RunConfig& c, std::string_view v, const Context& ctx) {
          const auto model = parse_model(trim(v));
          if (!model) ctx.fail("unknown model '" + std::string(trim(v)) + "'");
          c.sweep.model = *model;
        },
        false, "full | rsb | weak (default full)"}},
      {"sweep.normalize",
       {[](RunConfig& c, std::string_view v, const Context& ctx) {
          c.sweep.normalize = parse_bool(v, ctx);
        },
        false, "scale |A-|^2 and |X| to unit maximum (default false)"}},
      {"sweep.powers",
       {[](RunConfig& c, std::string_view v, const Context& ctx) {
          c.sweep.powers = parse_quantity_list(v, Dimension::power, ctx);
        },
        false, "power-series list, W"}},
      {"sweep.detunings",
       {[](RunConfig& c, std::string_view v, const Context& ctx) {
          c.sweep.detunings = parse_quantity_list(v, Dimension::frequency, ctx);
        },
        false, "detuning-series list, Hz"}},
      {"output.path",
       {[](RunConfig& c, std::string_view v, const Context&) { c.output.path = trim(v); }, false,
        "output file (default stdout)"}},
      {"output.format",
       {[](RunConfig& c, std::string_view v, const Context& ctx) {
          const auto format = parse_format(trim(v));
          if (!format) ctx.fail("unknown format '" + std::string(trim(v)) + "'");
          c.output.format = *format;
        },
        false, "csv | json (default csv)"}},
  };
  return table;
}

std::string number(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

std::string number_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += number(values[i]);
  }
  return out;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  ParseState state;
  std::set<std::string> seen;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const auto comment = line.find_first_of("#;");
    if (comment != std::string_view::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) + ": malformed section header",
                          std::string(line), line_no);
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section != "device" && section != "drive" && section != "sweep" && section != "output") {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" + section + "]",
                          section, line_no);
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value",
                        std::string(line), line_no);
    }
    const std::string key = std::string(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (section.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + key + ": key outside a section",
                        key, line_no);
    }
    const std::string full = section + "." + key;
    const Context ctx{full, line_no};
    const auto& table = key_table();
    const auto it = table.find(full);
    if (it == table.end()) ctx.fail("unknown key");
    if (!seen.insert(full).second) ctx.fail("duplicate key");
    if (it->second.set) {
      it->second.set(config, value, ctx);
    } else {
      state.deferred[full] = {std::string(value), ctx};
    }
  }

  for (const auto& [name, spec] : key_table()) {
    if (spec.required && !seen.count(name)) {
      throw ConfigError(name + ": required key missing", name, 0);
    }
  }

  const Dimension dim = axis_dimension(config.sweep.axis);
  if (auto it = state.deferred.find("sweep.start"); it != state.deferred.end()) {
    config.sweep.start = parse_quantity(it->second.text, dim, it->second.ctx);
  }
  if (auto it = state.deferred.find("sweep.stop"); it != state.deferred.end()) {
    config.sweep.stop = parse_quantity(it->second.text, dim, it->second.ctx);
  }
  if (auto it = state.deferred.find("sweep.values"); it != state.deferred.end()) {
    config.sweep.values = parse_quantity_list(it->second.text, dim, it->second.ctx);
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", "--config", 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string echo_config(const RunConfig& c) {
  std::ostringstream os;
  os << "[device]\n"
     << "kappa0 = " << number(c.device.kappa0) << "\n"
     << "kappa_ex = " << number(c.device.kappa_ex) << "\n"
     << "wavelength = " << number(c.device.wavelength) << "\n"
     << "m_eff = " << number(c.device.m_eff) << "\n"
     << "omega_m = " << number(c.device.omega_m) << "\n"
     << "gamma_m = " << number(c.device.gamma_m) << "\n"
     << "g0 = " << number(c.device.g0) << "\n"
     << "split_rate = " << number(c.device.split_rate) << "\n"
     << "taper_loss_factor = " << number(c.device.taper_loss_factor) << "\n"
     << "[drive]\n"
     << "power = " << number(c.drive.power) << "\n"
     << "detuning = " << number(c.drive.detuning) << "\n";
  if (c.drive.laser_detuning) os << "laser_detuning = " << number(*c.drive.laser_detuning) << "\n";
  if (c.drive.probe_offset) os << "probe_offset = " << number(*c.drive.probe_offset) << "\n";
  os << "modulation_depth = " << number(c.drive.modulation_depth) << "\n"
     << "lo_phase = " << number(c.drive.lo_phase) << "\n"
     << "[sweep]\n"
     << "axis = " << to_string(c.sweep.axis) << "\n"
     << "grid = " << to_string(c.sweep.grid) << "\n"
     << "start = " << number(c.sweep.start) << "\n"
     << "stop = " << number(c.sweep.stop) << "\n"
     << "count = " << c.sweep.count << "\n"
     << "values = " << number_list(c.sweep.values) << "\n"
     << "observables = ";
  for (std::size_t i = 0; i < c.sweep.observables.size(); ++i) {
    os << (i > 0 ? ", " : "") << to_string(c.sweep.observables[i]);
  }
  os << "\n"
     << "model = " << to_string(c.sweep.model) << "\n"
     << "normalize = " << (c.sweep.normalize ? "true" : "false") << "\n"
     << "powers = " << number_list(c.sweep.powers) << "\n"
     << "detunings = " << number_list(c.sweep.detunings) << "\n"
     << "[output]\n"
     << "path = " << c.output.path << "\n"
     << "format = " << to_string(c.output.format) << "\n";
  return os.str();
}

ExperimentContext to_context(const RunConfig& c) {
  ExperimentContext context;
  context.device.cavity.kappa0 = hz_to_rad(c.device.kappa0);
  context.device.cavity.kappa_ex = hz_to_rad(c.device.kappa_ex);
  context.device.cavity.wavelength = c.device.wavelength;
  context.device.mechanics.m_eff = c.device.m_eff;
  context.device.mechanics.omega_m = hz_to_rad(c.device.omega_m);
  context.device.mechanics.gamma_m = hz_to_rad(c.device.gamma_m);
  context.device.coupling.g0 = hz_to_rad(c.device.g0);
  context.split_rate = hz_to_rad(c.device.split_rate);
  context.taper_loss_factor = c.device.taper_loss_factor;

  context.drive.input_power = c.drive.power;
  context.drive.detuning = hz_to_rad(c.drive.detuning);
  context.drive.probe_offset = hz_to_rad(c.drive.probe_offset.value_or(c.device.omega_m));
  context.drive.modulation_depth = c.drive.modulation_depth;
  context.lo_phase = c.drive.lo_phase;
  return context;
}

SweepSpec to_sweep_spec(const RunConfig& c) {
  SweepSpec spec;
  spec.axis = c.sweep.axis;
  spec.fixed = to_context(c);
  spec.observables = c.sweep.observables;
  spec.model = c.sweep.model;
  spec.normalize_to_max = c.sweep.normalize;

  const bool frequency_axis = c.sweep.axis != SweepAxis::control_power;
  auto convert = [frequency_axis](double v) { return frequency_axis ? hz_to_rad(v) : v; };
  switch (c.sweep.grid) {
    case GridKind::window:
    case GridKind::cavity:
      if (c.sweep.axis != SweepAxis::probe_offset) {
        throw ConfigError("sweep.grid: window and cavity grids need axis = probe_offset",
                          "sweep.grid", 0);
      }
      spec.grid = c.sweep.grid == GridKind::window ? window_grid(spec.fixed, c.sweep.count)
                                                   : cavity_grid(spec.fixed, c.sweep.count);
      break;
    case GridKind::linear:
      spec.grid = linear_grid(convert(c.sweep.start), convert(c.sweep.stop), c.sweep.count);
      break;
    case GridKind::list:
      for (const double v : c.sweep.values) spec.grid.push_back(convert(v));
      break;
  }
  return spec;
}

std::string_view to_string(GridKind kind) {
  switch (kind) {
    case GridKind::window: return "window";
    case GridKind::cavity: return "cavity";
    case GridKind::linear: return "linear";
    case GridKind::list: return "list";
  }
  return "window";
}

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::json ? "json" : "csv";
}

std::string config_reference() {
  std::ostringstream os;
  os << "Config file: INI sections [device] [drive] [sweep] [output], 'key = value'.\n"
     << "Numbers may carry a unit suffix (Hz kHz MHz GHz | W mW uW nW | kg g mg ug ng pg |\n"
     << "m mm um nm | Hz/m Hz/nm kHz/nm MHz/nm GHz/nm GHz/m | rad deg). Bare numbers are\n"
     << "in the base unit. Frequencies are linear (Hz), converted to rad/s internally.\n\n";
  for (const auto& [name, spec] : key_table()) {
    os << "  " << name << (spec.required ? " (required)" : "") << ": " << spec.help << "\n";
  }
  return os.str();
}

}  // namespace omit::cli
