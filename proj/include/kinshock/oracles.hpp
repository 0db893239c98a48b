#pragma once

#include <span>
#include <vector>

#include "kinshock/flux.hpp"
#include "kinshock/kinetic_state.hpp"

// Reference solutions kept independent of the kinetic solver.
namespace kinshock::oracles {

struct GreedyMinimizer {
  std::vector<double> profile;
  double value = 0.0;
};

/// Fills velocity cells bottom-up to mass rho. Costs are non-decreasing in v,
/// so this is the exact optimum of the discrete entropy-moment problem.
GreedyMinimizer greedy_minimizer(double rho, const VelocityGrid& vgrid);

enum class WaveKind { shock, rarefaction, constant };

struct RiemannSolution {
  double left = 0.0;
  double right = 0.0;
  WaveKind kind = WaveKind::constant;
  double speed = 0.0;     // shock speed
  double fan_left = 0.0;  // rarefaction edges A'(left), A'(right)
  double fan_right = 0.0;
};

RiemannSolution classify_riemann_burgers(double left, double right);

/// Entropy solution of rho_t + (rho^2 / 2)_x = 0 at x / t.
double exact_riemann_burgers(double left, double right, double x_over_t);

/// Burgers entropy solution at time t > 0 on the periodic interval [0, length)
/// for data `left` on [0, position) and `right` on [position, length). Valid
/// while the waves from the two jumps have not met.
double periodic_riemann_burgers(double left, double right, double position, double length,
                                double x, double t);

/// First-order Godunov with exact Riemann fluxes on a 1D grid. Throws
/// std::invalid_argument for a non-convex flux or a 2D grid.
std::vector<double> godunov_reference(std::span<const double> rho0, const FluxModel& flux,
                                      const SpatialGrid& sgrid, double t_final,
                                      double cfl = 0.9);

/// Exact Godunov interface flux for convex A.
double godunov_flux(const FluxModel& flux, double left, double right);

/// Sum of |a - b| times the cell volume.
double l1_error(std::span<const double> a, std::span<const double> b,
                const SpatialGrid& sgrid);

/// Averages consecutive groups of `factor` cells of a 1D field.
std::vector<double> coarsen(std::span<const double> fine, int factor);

}  // namespace kinshock::oracles
