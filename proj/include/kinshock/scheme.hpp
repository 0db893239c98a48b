#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kinshock/entropy_projection.hpp"
#include "kinshock/flux.hpp"
#include "kinshock/kinetic_state.hpp"
#include "kinshock/transport.hpp"

namespace kinshock {

struct DiagnosticsRow {
  int step = 0;
  double time = 0.0;
  double mass = 0.0;
  double entropy = 0.0;                  // after projection
  double entropy_after_transport = 0.0;  // before projection
  double defect = 0.0;                   // integral of |f_n - transported f_{n-1}|
  double defect_total = 0.0;
};

// Row 0 describes the initial data; row n the state after step n.
struct RunDiagnostics {
  std::vector<DiagnosticsRow> rows;
  double entropy_budget = 0.0;  // (2 / eps) * initial entropy

  std::vector<double> times() const;
  std::vector<double> mass_series() const;
  std::vector<double> entropy_series() const;
  std::vector<double> defect_series() const;
  std::vector<double> defect_total_series() const;
};

// Velocity moments per spatial cell. phi is laid out as phi[axis * n + cell].
struct Moments {
  int dim = 1;
  std::vector<double> rho;
  std::vector<double> phi;

  std::span<const double> flux_axis(int axis) const {
    return std::span<const double>(phi).subspan(axis * rho.size(), rho.size());
  }
};

Moments moments(const KineticField& f, const FluxModel& flux);
Moments moments(const KineticField& f, const SpeedTable& speeds);

struct ObserverEvent {
  int step;
  double time;
  const KineticField& field;
  const Moments& moments;
  const DiagnosticsRow& row;
};

using Observer = std::function<void(const ObserverEvent&)>;

struct RunOptions {
  double t_final = 0.0;
  // Observer is called at step 0, every `observer_stride` steps and at the final
  // step. Zero means initial and final only.
  int observer_stride = 0;
  Observer observer;
  bool check_invariants = true;
  CaseRule case_rule = CaseRule::standard;
};

struct RunResult {
  KineticField field;
  RunDiagnostics diagnostics;
};

class InvariantViolation : public std::runtime_error {
 public:
  InvariantViolation(int step, const std::string& report);
  int step() const { return step_; }

 private:
  int step_;
};

/// Iterates transport then projection until t_final. Upwind runs shorten the
/// last step to land on t_final; exact-shift runs keep h and may overshoot.
/// Throws InvariantViolation when a range, mass, entropy or budget check fails.
RunResult run(KineticField f0, const FluxModel& flux, const TransportConfig& tcfg,
              const RunOptions& options);

struct ShockSpeed {
  std::vector<double> ratio;   // (phi_a - phi_b) / (rho_a - rho_b) per axis
  std::vector<double> secant;  // (A(rho_a) - A(rho_b)) / (rho_a - rho_b) per axis
};

/// Empty when |rho_a - rho_b| < c0 * eps.
std::optional<ShockSpeed> shock_speed_estimate(double rho_a, std::span<const double> phi_a,
                                               double rho_b, std::span<const double> phi_b,
                                               const FluxModel& flux, double eps,
                                               double c0 = 2.0);

enum class CrossingDirection { descending, ascending };

struct FrontTrack {
  std::vector<double> positions;
  double speed = 0.0;  // least-squares slope of position against time
};

/// Tracks where a 1D density crosses `level`. At each time the crossing in the
/// requested direction closest to the previous position (or to `start` at the
/// first sample) is taken; periodic positions are unwrapped. Throws
/// std::runtime_error when no crossing exists.
FrontTrack front_tracker(std::span<const std::vector<double>> rho_series,
                         std::span<const double> times, const SpatialGrid& sgrid, double level,
                         double start, CrossingDirection direction = CrossingDirection::descending);

/// Test function psi(x, y, t) for the weak form with its spatial derivatives.
/// Time derivatives enter through exact differences of `value`.
struct TestFunction {
  std::function<double(double x, double y, double t)> value;
  std::function<double(double x, double y, double t)> dx;
  std::function<double(double x, double y, double t)> dy;
};

/// Accumulates | iint (rho psi_t + phi . grad psi) dx dt + int rho0 psi(., 0) dx |
/// from a run observed at every step (observer_stride = 1). rho_n and phi_n
/// are held constant on [t_n, t_{n+1}); psi must vanish by the final time.
class WeakFormResidual {
 public:
  WeakFormResidual(const SpatialGrid& sgrid, TestFunction psi);

  void observe(const ObserverEvent& event);
  double residual() const;

 private:
  SpatialGrid sgrid_;
  TestFunction psi_;
  std::optional<double> last_time_;
  std::vector<double> last_rho_;
  std::vector<double> last_phi_;
  double accumulated_ = 0.0;
};

}  // namespace kinshock
