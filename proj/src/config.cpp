#include "kinshock/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace kinshock {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw ConfigError("key '" + key + "': '" + value + "' is not a number");
  return out;
}

long to_integer(const std::string& key, const std::string& value) {
  long out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw ConfigError("key '" + key + "': '" + value + "' is not an integer");
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError("key '" + key + "': '" + value + "' is not a boolean");
}

std::vector<double> to_list(const std::string& key, const std::string& value) {
  std::string normalized = value;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  std::vector<double> out;
  std::string item;
  while (in >> item) out.push_back(to_double(key, item));
  return out;
}

template <typename Fn>
auto wrap_errors(const std::string& key, Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("key '" + key + "': " + e.what());
  }
}

std::string fmt(double x) {
  char buf[32];
  const auto end = std::to_chars(buf, buf + sizeof buf, x).ptr;
  return std::string(buf, end);
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "flux",     "flux_params", "L",        "eps",          "m",
      "dim",      "nx",          "ny",       "length_x",     "length_y",
      "bc",       "cfl",         "scheme",   "t_final",      "initial",
      "left",     "right",       "position", "mean",         "amplitude",
      "wavenumber", "file",      "output_stride", "output_dir", "seed",
      "reference", "kinetic_snapshots", "eps_list", "front_level"};
  return keys;
}

}  // namespace

ScenarioConfig parse_config_text(std::string_view text) {
  std::map<std::string, std::string> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!known_keys().contains(key)) throw ConfigError("unknown key '" + key + "'");
    if (entries.contains(key)) throw ConfigError("duplicate key '" + key + "'");
    entries[key] = value;
  }

  auto require = [&](const char* key) -> const std::string& {
    const auto it = entries.find(key);
    if (it == entries.end()) throw ConfigError(std::string("missing required key '") + key + "'");
    return it->second;
  };
  auto has = [&](const char* key) { return entries.contains(key); };

  ScenarioConfig cfg;
  cfg.flux = require("flux");
  wrap_errors("flux", [&] { return parse_flux_family(cfg.flux); });
  if (has("flux_params")) cfg.flux_params = to_list("flux_params", entries["flux_params"]);
  if (has("L")) cfg.L = to_double("L", entries["L"]);
  cfg.eps = to_double("eps", require("eps"));
  if (has("m")) cfg.m = static_cast<int>(to_integer("m", entries["m"]));
  if (has("dim")) cfg.dim = static_cast<int>(to_integer("dim", entries["dim"]));
  cfg.extents[0] = static_cast<int>(to_integer("nx", require("nx")));
  if (cfg.dim == 2) cfg.extents[1] = static_cast<int>(to_integer("ny", require("ny")));
  if (has("length_x")) cfg.lengths[0] = to_double("length_x", entries["length_x"]);
  if (has("length_y")) cfg.lengths[1] = to_double("length_y", entries["length_y"]);
  if (has("bc"))
    cfg.bc = wrap_errors("bc", [&] { return parse_boundary_condition(entries["bc"]); });
  if (has("cfl")) cfg.cfl = to_double("cfl", entries["cfl"]);
  if (has("scheme"))
    cfg.scheme = wrap_errors("scheme", [&] { return parse_transport_scheme(entries["scheme"]); });
  cfg.t_final = to_double("t_final", require("t_final"));

  const std::string& initial = require("initial");
  if (initial == "riemann") {
    cfg.initial.kind = InitialKind::riemann;
    cfg.initial.left = to_double("left", require("left"));
    cfg.initial.right = to_double("right", require("right"));
    if (has("position")) cfg.initial.position = to_double("position", entries["position"]);
  } else if (initial == "sine") {
    cfg.initial.kind = InitialKind::sine;
    cfg.initial.mean = to_double("mean", require("mean"));
    cfg.initial.amplitude = to_double("amplitude", require("amplitude"));
    if (has("wavenumber"))
      cfg.initial.wavenumber = static_cast<int>(to_integer("wavenumber", entries["wavenumber"]));
  } else if (initial == "file") {
    cfg.initial.kind = InitialKind::file;
    cfg.initial.file = require("file");
  } else {
    throw ConfigError("key 'initial': expected riemann, sine or file, got '" + initial + "'");
  }

  if (has("output_stride"))
    cfg.output_stride = static_cast<int>(to_integer("output_stride", entries["output_stride"]));
  if (has("output_dir")) cfg.output_dir = entries["output_dir"];
  if (has("seed")) cfg.seed = static_cast<std::uint64_t>(to_integer("seed", entries["seed"]));
  if (has("reference")) cfg.reference = to_bool("reference", entries["reference"]);
  if (has("kinetic_snapshots"))
    cfg.kinetic_snapshots = to_bool("kinetic_snapshots", entries["kinetic_snapshots"]);
  if (has("eps_list")) cfg.eps_list = to_list("eps_list", entries["eps_list"]);
  if (has("front_level")) cfg.front_level = to_double("front_level", entries["front_level"]);

  validate(cfg);
  return cfg;
}

ScenarioConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  ScenarioConfig cfg = parse_config_text(buffer.str());
  if (cfg.initial.kind == InitialKind::file && cfg.initial.file.is_relative())
    cfg.initial.file = path.parent_path() / cfg.initial.file;
  return cfg;
}

void validate(const ScenarioConfig& cfg) {
  if (!(cfg.L > 0.0)) throw ConfigError("L must be positive, got " + fmt(cfg.L));
  if (!(cfg.eps > 0.0)) throw ConfigError("eps must be positive, got " + fmt(cfg.eps));
  const double bands = cfg.L / cfg.eps;
  if (std::round(bands) < 1.0 || std::abs(bands - std::round(bands)) > 1e-9 * std::max(1.0, bands))
    throw ConfigError("eps = " + fmt(cfg.eps) + " does not divide L = " + fmt(cfg.L));
  for (double e : cfg.eps_list) {
    const double b = cfg.L / e;
    if (!(e > 0.0) || std::round(b) < 1.0 || std::abs(b - std::round(b)) > 1e-9 * std::max(1.0, b))
      throw ConfigError("eps_list entry " + fmt(e) + " does not divide L = " + fmt(cfg.L));
  }
  if (cfg.m < 2) throw ConfigError("m must be at least 2");
  if (cfg.dim != 1 && cfg.dim != 2) throw ConfigError("dim must be 1 or 2");
  for (int a = 0; a < cfg.dim; ++a) {
    if (cfg.extents[a] < 3) throw ConfigError("spatial extents must be at least 3");
    if (!(cfg.lengths[a] > 0.0)) throw ConfigError("domain lengths must be positive");
  }
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  if (!(cfg.t_final > 0.0)) throw ConfigError("t_final must be positive");
  if (cfg.output_stride < 0) throw ConfigError("output_stride must be non-negative");

  auto in_range = [&](const char* what, double value) {
    if (!(value >= 0.0 && value <= cfg.L))
      throw ConfigError(std::string(what) + " = " + fmt(value) + " outside [0, L = " + fmt(cfg.L) +
                        "]");
  };
  switch (cfg.initial.kind) {
    case InitialKind::riemann:
      in_range("left state", cfg.initial.left);
      in_range("right state", cfg.initial.right);
      break;
    case InitialKind::sine:
      in_range("sine minimum", cfg.initial.mean - std::abs(cfg.initial.amplitude));
      in_range("sine maximum", cfg.initial.mean + std::abs(cfg.initial.amplitude));
      break;
    case InitialKind::file: break;
  }

  try {
    const auto flux = builtin_flux(cfg.flux, cfg.flux_params, cfg.L);
    if (flux.dim() != cfg.dim)
      throw ConfigError("flux has " + std::to_string(flux.dim()) + " components but dim = " +
                        std::to_string(cfg.dim));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("flux: ") + e.what());
  }
}

VelocityGrid velocity_grid(const ScenarioConfig& cfg) { return VelocityGrid(cfg.L, cfg.eps, cfg.m); }

SpatialGrid spatial_grid(const ScenarioConfig& cfg) {
  if (cfg.dim == 1) return SpatialGrid::line(cfg.extents[0], cfg.lengths[0], cfg.bc);
  return SpatialGrid::plane(cfg.extents[0], cfg.extents[1], cfg.lengths[0], cfg.lengths[1], cfg.bc);
}

std::vector<double> initial_density(const ScenarioConfig& cfg, const SpatialGrid& sgrid) {
  const int nx = sgrid.extent(0);
  const int ny = sgrid.dim() == 2 ? sgrid.extent(1) : 1;
  std::vector<double> rho(sgrid.n_cells(), 0.0);
  const auto& ic = cfg.initial;
  if (ic.kind == InitialKind::file) {
    std::ifstream in(ic.file);
    if (!in) throw ConfigError("cannot read initial density file " + ic.file.string());
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
      const std::string t = trim(std::string_view(line).substr(0, line.find('#')));
      if (t.empty() || std::isalpha(static_cast<unsigned char>(t[0]))) continue;
      const auto comma = t.find_last_of(", ");
      values.push_back(to_double("file", trim(comma == std::string::npos ? t : t.substr(comma + 1))));
    }
    const std::size_t base = static_cast<std::size_t>(cfg.extents[0]) *
                             (cfg.dim == 2 ? cfg.extents[1] : 1);
    if (values.size() != base)
      throw ConfigError("initial density file has " + std::to_string(values.size()) +
                        " values, expected " + std::to_string(base));
    // Piecewise-constant prolongation onto a refined grid.
    const int rx = nx / cfg.extents[0];
    const int ry = ny / (cfg.dim == 2 ? cfg.extents[1] : 1);
    for (int k = 0; k < ny; ++k)
      for (int i = 0; i < nx; ++i)
        rho[sgrid.flat(i, k)] = values[(i / rx) + static_cast<std::size_t>(cfg.extents[0]) * (k / ry)];
  } else {
    for (int k = 0; k < ny; ++k) {
      for (int i = 0; i < nx; ++i) {
        const double x = sgrid.center(0, i);
        double value = 0.0;
        if (ic.kind == InitialKind::riemann) {
          value = x < ic.position ? ic.left : ic.right;
        } else {
          value = ic.mean + ic.amplitude * std::sin(2.0 * std::numbers::pi * ic.wavenumber * x /
                                                    sgrid.length(0));
        }
        rho[sgrid.flat(i, k)] = value;
      }
    }
  }
  for (std::size_t c = 0; c < rho.size(); ++c) {
    if (!(rho[c] >= 0.0 && rho[c] <= cfg.L))
      throw ConfigError("initial density " + fmt(rho[c]) + " at cell " + std::to_string(c) +
                        " outside [0, L = " + fmt(cfg.L) + "]");
  }
  return rho;
}

}  // namespace kinshock
