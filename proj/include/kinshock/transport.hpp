#pragma once

#include <string_view>

#include "kinshock/flux.hpp"
#include "kinshock/kinetic_state.hpp"

namespace kinshock {

enum class TransportScheme { upwind, exact_shift };

TransportScheme parse_transport_scheme(std::string_view name);
std::string_view to_string(TransportScheme scheme);

struct TransportConfig {
  TransportScheme scheme = TransportScheme::upwind;
  double h = 0.0;    // time step
  double cfl = 0.0;  // realized Courant number h * max_speed / min(dx)
};

/// Builds a config for step h and fills in the realized Courant number.
TransportConfig make_transport_config(TransportScheme scheme, double h, const FluxModel& flux,
                                      const SpatialGrid& sgrid);

/// Free streaming of every velocity slice with speed A'(v_j) over one step.
/// Upwind uses first-order dimensional splitting in 2D. Throws
/// std::invalid_argument on a CFL violation or a non-integer exact shift.
KineticField transport_step(const KineticField& f, const FluxModel& flux,
                            const TransportConfig& cfg);

/// Same as transport_step with a precomputed speed table and scratch buffer.
void transport_step_into(const KineticField& f, const SpeedTable& speeds,
                         const TransportConfig& cfg, KineticField& out);

/// cfl_target * min(dx) / max_speed, or `fallback` when the flux has no speed.
double max_stable_dt(const FluxModel& flux, const SpatialGrid& sgrid, double cfl_target,
                     double fallback);

}  // namespace kinshock
