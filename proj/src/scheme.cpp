#include "kinshock/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace kinshock {

InvariantViolation::InvariantViolation(int step, const std::string& report)
    : std::runtime_error(report), step_(step) {}

namespace {

template <typename Member>
std::vector<double> column(const std::vector<DiagnosticsRow>& rows, Member member) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.*member);
  return out;
}

}  // namespace

std::vector<double> RunDiagnostics::times() const { return column(rows, &DiagnosticsRow::time); }
std::vector<double> RunDiagnostics::mass_series() const {
  return column(rows, &DiagnosticsRow::mass);
}
std::vector<double> RunDiagnostics::entropy_series() const {
  return column(rows, &DiagnosticsRow::entropy);
}
std::vector<double> RunDiagnostics::defect_series() const {
  return column(rows, &DiagnosticsRow::defect);
}
std::vector<double> RunDiagnostics::defect_total_series() const {
  return column(rows, &DiagnosticsRow::defect_total);
}

Moments moments(const KineticField& f, const SpeedTable& speeds) {
  const std::size_t n = f.n_spatial();
  const int nv = f.n_velocity();
  const double dv = f.vgrid().dv();
  Moments out;
  out.dim = speeds.dim;
  out.rho.assign(n, 0.0);
  out.phi.assign(n * speeds.dim, 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    const auto s = f.slice(c);
    double rho = 0.0;
    for (int j = 0; j < nv; ++j) rho += s[j];
    out.rho[c] = rho * dv;
    for (int a = 0; a < speeds.dim; ++a) {
      const auto table = speeds.axis(a);
      double phi = 0.0;
      for (int j = 0; j < nv; ++j) phi += table[j] * s[j];
      out.phi[a * n + c] = phi * dv;
    }
  }
  return out;
}

Moments moments(const KineticField& f, const FluxModel& flux) {
  return moments(f, tabulate(flux, f.vgrid()));
}

namespace {

std::string describe(int step, double time) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "step " << step << " (t = " << time << "): ";
  return msg.str();
}

}  // namespace

RunResult run(KineticField f0, const FluxModel& flux, const TransportConfig& tcfg,
              const RunOptions& options) {
  if (!(options.t_final > 0.0)) throw std::invalid_argument("t_final must be positive");
  if (flux.dim() != f0.sgrid().dim())
    throw std::invalid_argument("flux dimension does not match the spatial grid");
  if (f0.range_violation() > 1e-12) throw std::invalid_argument("initial density outside [0, 1]");

  const VelocityGrid& vg = f0.vgrid();
  const SpatialGrid& sg = f0.sgrid();
  const SpeedTable speeds = tabulate(flux, vg);
  const bool periodic = sg.periodic();

  const double domain_volume = sg.cell_volume() * static_cast<double>(sg.n_cells());
  const double tol = 1e-10 * std::max(1.0, vg.kinetic_bound() * domain_volume);

  RunResult result{std::move(f0), {}};
  KineticField& f = result.field;
  KineticField transported(vg, sg);
  RunDiagnostics& diag = result.diagnostics;

  const double mass0 = mass(f);
  const double entropy0 = total_entropy(f);
  diag.entropy_budget = 2.0 / vg.eps() * entropy0;
  diag.rows.push_back(DiagnosticsRow{0, 0.0, mass0, entropy0, entropy0, 0.0, 0.0});

  auto notify = [&](int step, double time) {
    if (!options.observer) return;
    const Moments mom = moments(f, speeds);
    options.observer(ObserverEvent{step, time, f, mom, diag.rows.back()});
  };
  notify(0, 0.0);

  double t = 0.0;
  int step = 0;
  const double t_end = options.t_final;
  while (t < t_end * (1.0 - 1e-12)) {
    TransportConfig cfg = tcfg;
    if (cfg.scheme == TransportScheme::upwind && t + cfg.h > t_end) cfg.h = t_end - t;
    transport_step_into(f, speeds, cfg, transported);
    const double entropy_transported = total_entropy(transported);
    std::swap(f, transported);
    const ProjectionSummary ps = project_field_in_place(f, options.case_rule);
    ++step;
    t += cfg.h;

    const DiagnosticsRow& prev = diag.rows.back();
    DiagnosticsRow row;
    row.step = step;
    row.time = t;
    row.mass = mass(f);
    row.entropy = total_entropy(f);
    row.entropy_after_transport = entropy_transported;
    row.defect = ps.defect_l1;
    row.defect_total = prev.defect_total + ps.defect_l1;

    if (options.check_invariants) {
      const double range = f.range_violation();
      if (range > 1e-12) {
        std::ostringstream msg;
        msg << describe(step, t) << "density leaves [0, 1] by " << range;
        throw InvariantViolation(step, msg.str());
      }
      const double control = 2.0 / vg.eps() * (row.entropy_after_transport - row.entropy);
      if (row.defect > control + tol) {
        std::ostringstream msg;
        msg.precision(17);
        msg << describe(step, t) << "projection defect " << row.defect
            << " exceeds (2/eps) x entropy drop " << control;
        throw InvariantViolation(step, msg.str());
      }
      if (periodic) {
        if (std::abs(row.mass - mass0) > 1e-10 * std::max(mass0, 1e-300)) {
          std::ostringstream msg;
          msg.precision(17);
          msg << describe(step, t) << "mass " << row.mass << " drifted from " << mass0;
          throw InvariantViolation(step, msg.str());
        }
        if (row.entropy > prev.entropy + tol) {
          std::ostringstream msg;
          msg.precision(17);
          msg << describe(step, t) << "entropy increased from " << prev.entropy << " to "
              << row.entropy;
          throw InvariantViolation(step, msg.str());
        }
        if (row.defect_total > diag.entropy_budget + tol) {
          std::ostringstream msg;
          msg.precision(17);
          msg << describe(step, t) << "accumulated defect " << row.defect_total
              << " exceeds entropy budget " << diag.entropy_budget;
          throw InvariantViolation(step, msg.str());
        }
      }
    }
    diag.rows.push_back(row);

    const bool last = !(t < t_end * (1.0 - 1e-12));
    if (last || (options.observer_stride > 0 && step % options.observer_stride == 0))
      notify(step, t);
  }
  return result;
}

std::optional<ShockSpeed> shock_speed_estimate(double rho_a, std::span<const double> phi_a,
                                               double rho_b, std::span<const double> phi_b,
                                               const FluxModel& flux, double eps, double c0) {
  const double jump = rho_a - rho_b;
  if (std::abs(jump) < c0 * eps || jump == 0.0) return std::nullopt;
  ShockSpeed out;
  for (int a = 0; a < flux.dim(); ++a) {
    out.ratio.push_back((phi_a[a] - phi_b[a]) / jump);
    out.secant.push_back((flux.flux(a, rho_a) - flux.flux(a, rho_b)) / jump);
  }
  return out;
}

FrontTrack front_tracker(std::span<const std::vector<double>> rho_series,
                         std::span<const double> times, const SpatialGrid& sgrid, double level,
                         double start, CrossingDirection direction) {
  if (sgrid.dim() != 1) throw std::invalid_argument("front_tracker needs a 1D grid");
  if (rho_series.size() != times.size() || times.empty())
    throw std::invalid_argument("front_tracker needs one density field per time");
  const int nx = sgrid.extent(0);
  const double dx = sgrid.dx(0);
  const double length = sgrid.length(0);
  const bool periodic = sgrid.periodic();

  FrontTrack track;
  double reference = start;
  for (std::size_t s = 0; s < rho_series.size(); ++s) {
    const auto& rho = rho_series[s];
    if (static_cast<int>(rho.size()) != nx)
      throw std::invalid_argument("density field size does not match the grid");
    double best = std::numeric_limits<double>::quiet_NaN();
    double best_distance = std::numeric_limits<double>::infinity();
    const int pairs = periodic ? nx : nx - 1;
    for (int i = 0; i < pairs; ++i) {
      const double a = rho[i] - level;
      const double b = rho[(i + 1) % nx] - level;
      const bool hit = direction == CrossingDirection::descending ? (a > 0.0 && b <= 0.0)
                                                                  : (a < 0.0 && b >= 0.0);
      if (!hit) continue;
      const double x = sgrid.center(0, i) + a / (a - b) * dx;
      double delta = x - reference;
      if (periodic) delta -= length * std::round(delta / length);
      if (std::abs(delta) < best_distance) {
        best_distance = std::abs(delta);
        best = reference + delta;
      }
    }
    if (std::isnan(best)) {
      std::ostringstream msg;
      msg << "no crossing of level " << level << " at t = " << times[s];
      throw std::runtime_error(msg.str());
    }
    track.positions.push_back(best);
    reference = best;
  }

  const std::size_t n = times.size();
  if (n < 2) return track;
  double mt = 0.0, mx = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    mt += times[s];
    mx += track.positions[s];
  }
  mt /= n;
  mx /= n;
  double num = 0.0, den = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    num += (times[s] - mt) * (track.positions[s] - mx);
    den += (times[s] - mt) * (times[s] - mt);
  }
  track.speed = den > 0.0 ? num / den : 0.0;
  return track;
}

WeakFormResidual::WeakFormResidual(const SpatialGrid& sgrid, TestFunction psi)
    : sgrid_(sgrid), psi_(std::move(psi)) {}

void WeakFormResidual::observe(const ObserverEvent& event) {
  const int nx = sgrid_.extent(0);
  const int ny = sgrid_.dim() == 2 ? sgrid_.extent(1) : 1;
  const std::size_t n = sgrid_.n_cells();
  const double volume = sgrid_.cell_volume();
  const double t = event.time;
  double sum = 0.0;
  if (!last_time_) {
    for (int k = 0; k < ny; ++k)
      for (int i = 0; i < nx; ++i) {
        const double x = sgrid_.center(0, i);
        const double y = sgrid_.dim() == 2 ? sgrid_.center(1, k) : 0.0;
        sum += event.moments.rho[sgrid_.flat(i, k)] * psi_.value(x, y, 0.0);
      }
  } else {
    const double t0 = *last_time_;
    const double mid = 0.5 * (t0 + t);
    const double h = t - t0;
    for (int k = 0; k < ny; ++k)
      for (int i = 0; i < nx; ++i) {
        const std::size_t c = sgrid_.flat(i, k);
        const double x = sgrid_.center(0, i);
        const double y = sgrid_.dim() == 2 ? sgrid_.center(1, k) : 0.0;
        double term = last_rho_[c] * (psi_.value(x, y, t) - psi_.value(x, y, t0));
        term += h * last_phi_[c] * psi_.dx(x, y, mid);
        if (sgrid_.dim() == 2) term += h * last_phi_[n + c] * psi_.dy(x, y, mid);
        sum += term;
      }
  }
  accumulated_ += sum * volume;
  last_time_ = t;
  last_rho_ = event.moments.rho;
  last_phi_ = event.moments.phi;
}

double WeakFormResidual::residual() const { return std::abs(accumulated_); }

}  // namespace kinshock
