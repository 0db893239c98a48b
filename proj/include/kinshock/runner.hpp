#pragma once

#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "kinshock/config.hpp"

namespace kinshock {

// One row of summary.csv. NaN marks quantities that do not apply to the
// scenario (front speed without Riemann data, reference distance when the
// reference is disabled, ...).
struct ScenarioSummary {
  double eps = 0.0;
  int nx = 0;
  int steps = 0;
  double t_final = 0.0;
  double front_speed = std::numeric_limits<double>::quiet_NaN();
  double exact_front_speed = std::numeric_limits<double>::quiet_NaN();
  double l1_to_reference = std::numeric_limits<double>::quiet_NaN();
  double l1_to_exact = std::numeric_limits<double>::quiet_NaN();
  double final_mass = 0.0;
  double defect_total = 0.0;
  double budget = 0.0;
};

/// Runs one scenario and writes into `out_dir`:
///   rho_<t>.csv     x[,y],rho,phi_1[,phi_2] at each output time
///   diagnostics.csv step,time,mass,entropy,defect,defect_total,budget
///   summary.csv     one ScenarioSummary row
///   f_<t>.csv       kinetic snapshots when enabled
/// Throws InvariantViolation from the solver and ConfigError for bad input.
ScenarioSummary run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);

/// Runs the scenario once per eps into out_root/eps_<eps>/ and writes
/// out_root/sweep_summary.csv with one row per eps.
std::vector<ScenarioSummary> run_sweep(const ScenarioConfig& cfg, const std::vector<double>& eps,
                                       const std::filesystem::path& out_root);

/// Riemann comparison: riemann_table.csv (x,rho,phi,rho_exact) and
/// riemann_summary.csv (measured front speed, flux secant, moment-ratio
/// estimate across the front). Needs 1D Riemann data with a Burgers flux.
ScenarioSummary riemann_table(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);

/// Column header of summary.csv and sweep_summary.csv.
std::string summary_header();
std::string summary_row(const ScenarioSummary& s);

/// Output root: $KINSHOCK_OUTPUT_ROOT joined with the configured directory
/// when the variable is set and the directory is relative.
std::filesystem::path resolve_output_dir(const std::filesystem::path& configured);

}  // namespace kinshock
