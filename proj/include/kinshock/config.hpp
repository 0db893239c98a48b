#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kinshock/kinetic_state.hpp"
#include "kinshock/transport.hpp"

namespace kinshock {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InitialKind { riemann, sine, file };

struct InitialCondition {
  InitialKind kind = InitialKind::riemann;
  double left = 0.0;
  double right = 0.0;
  double position = 0.5;  // jump location along x
  double mean = 0.0;
  double amplitude = 0.0;
  int wavenumber = 1;
  std::filesystem::path file;  // one density per spatial cell, in flat order
};

// Scenario description read from `key = value` text. Lines starting with '#'
// are comments; list values are comma- or space-separated.
//
// Required: flux, eps, nx, t_final, initial (+ left/right, mean/amplitude or
// file depending on `initial`), ny when dim = 2.
// Defaults: L = 1, m = 4, dim = 1, length_x = length_y = 1, bc = periodic,
// cfl = 0.9, scheme = upwind, output_stride = 0, output_dir = out, seed = 1,
// reference = false, kinetic_snapshots = false.
struct ScenarioConfig {
  std::string flux = "burgers";
  std::vector<double> flux_params;
  double L = 1.0;
  double eps = 0.0;
  int m = 4;
  int dim = 1;
  std::array<int, 2> extents{0, 1};
  std::array<double, 2> lengths{1.0, 1.0};
  BoundaryCondition bc = BoundaryCondition::periodic;
  double cfl = 0.9;
  TransportScheme scheme = TransportScheme::upwind;
  double t_final = 0.0;
  InitialCondition initial;
  int output_stride = 0;
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 1;
  bool reference = false;
  bool kinetic_snapshots = false;
  std::vector<double> eps_list;
  double front_level = -1.0;  // negative: midpoint of the Riemann states
};

ScenarioConfig parse_config_text(std::string_view text);
ScenarioConfig parse_config_file(const std::filesystem::path& path);

/// Re-checks cross-field consistency (eps divides L, data within [0, L], ...).
/// Throws ConfigError.
void validate(const ScenarioConfig& cfg);

VelocityGrid velocity_grid(const ScenarioConfig& cfg);
SpatialGrid spatial_grid(const ScenarioConfig& cfg);

/// Initial density sampled at the cell centers of `sgrid` (which may be a
/// refinement of the configured grid for analytic data).
std::vector<double> initial_density(const ScenarioConfig& cfg, const SpatialGrid& sgrid);

}  // namespace kinshock
