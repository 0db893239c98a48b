#include "kinshock/runner.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "kinshock/oracles.hpp"
#include "kinshock/scheme.hpp"

namespace kinshock {

namespace {

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

std::string time_tag(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", t);
  return buf;
}

void write_moments(const std::filesystem::path& path, const SpatialGrid& sg, const Moments& m) {
  auto out = open_csv(path);
  const int nx = sg.extent(0);
  const int ny = sg.dim() == 2 ? sg.extent(1) : 1;
  out << (sg.dim() == 2 ? "x,y,rho,phi_1,phi_2\n" : "x,rho,phi_1\n");
  const std::size_t n = sg.n_cells();
  for (int k = 0; k < ny; ++k) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t c = sg.flat(i, k);
      out << sg.center(0, i) << ',';
      if (sg.dim() == 2) out << sg.center(1, k) << ',';
      out << m.rho[c] << ',' << m.phi[c];
      if (sg.dim() == 2) out << ',' << m.phi[n + c];
      out << '\n';
    }
  }
}

bool is_unit_burgers(const ScenarioConfig& cfg) {
  return cfg.flux == "burgers" && cfg.dim == 1 &&
         (cfg.flux_params.empty() || (cfg.flux_params.size() == 1 && cfg.flux_params[0] == 1.0));
}

struct Execution {
  ScenarioSummary summary;
  SpatialGrid sgrid;
  Moments final_moments;
  FluxModel flux;
};

Execution execute(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
  validate(cfg);
  const VelocityGrid vg = velocity_grid(cfg);
  const SpatialGrid sg = spatial_grid(cfg);
  const FluxModel flux = builtin_flux(cfg.flux, cfg.flux_params, cfg.L);
  const std::vector<double> rho0 = initial_density(cfg, sg);
  const double h = max_stable_dt(flux, sg, cfg.cfl, cfg.t_final);
  const TransportConfig tcfg = make_transport_config(cfg.scheme, h, flux, sg);

  std::filesystem::create_directories(out_dir);

  const auto& ic = cfg.initial;
  const bool track = ic.kind == InitialKind::riemann && cfg.dim == 1 && ic.left != ic.right;
  std::vector<std::vector<double>> series;
  std::vector<double> times;
  Moments last;

  RunOptions options;
  options.t_final = cfg.t_final;
  options.observer_stride = track ? 1 : cfg.output_stride;
  options.observer = [&](const ObserverEvent& e) {
    const bool final = !(e.time < cfg.t_final * (1.0 - 1e-12));
    if (track) {
      series.push_back(e.moments.rho);
      times.push_back(e.time);
    }
    if (final) last = e.moments;
    const bool scheduled = cfg.output_stride > 0 && e.step % cfg.output_stride == 0;
    if (e.step == 0 || final || scheduled) {
      write_moments(out_dir / ("rho_" + time_tag(e.time) + ".csv"), sg, e.moments);
      if (cfg.kinetic_snapshots)
        write_snapshot(e.field, e.time, out_dir / ("f_" + time_tag(e.time) + ".csv"));
    }
  };

  const RunResult result = run(from_macroscopic(rho0, vg, sg), flux, tcfg, options);
  const RunDiagnostics& diag = result.diagnostics;

  {
    auto out = open_csv(out_dir / "diagnostics.csv");
    out << "step,time,mass,entropy,defect,defect_total,budget\n";
    for (const auto& r : diag.rows) {
      out << r.step << ',' << r.time << ',' << r.mass << ',' << r.entropy << ',' << r.defect << ','
          << r.defect_total << ',' << diag.entropy_budget << '\n';
    }
  }

  ScenarioSummary s;
  s.eps = cfg.eps;
  s.nx = cfg.extents[0];
  s.steps = diag.rows.back().step;
  s.t_final = diag.rows.back().time;
  s.final_mass = diag.rows.back().mass;
  s.defect_total = diag.rows.back().defect_total;
  s.budget = diag.entropy_budget;

  if (track) {
    const double level = cfg.front_level >= 0.0 ? cfg.front_level : 0.5 * (ic.left + ic.right);
    const auto direction =
        ic.left > ic.right ? CrossingDirection::descending : CrossingDirection::ascending;
    s.front_speed = front_tracker(series, times, sg, level, ic.position, direction).speed;
    const bool convex = flux.is_convex(0);
    if (convex && ic.left < ic.right) {
      s.exact_front_speed = flux.speed(0, level);
    } else {
      s.exact_front_speed = (flux.flux(0, ic.left) - flux.flux(0, ic.right)) / (ic.left - ic.right);
    }
  }

  if (cfg.reference && cfg.dim == 1 && flux.is_convex(0)) {
    constexpr int kRefinement = 4;
    const SpatialGrid fine = SpatialGrid::line(kRefinement * cfg.extents[0], cfg.lengths[0], cfg.bc);
    const auto reference = oracles::coarsen(
        oracles::godunov_reference(initial_density(cfg, fine), flux, fine, s.t_final), kRefinement);
    s.l1_to_reference = oracles::l1_error(last.rho, reference, sg);
  }

  if (ic.kind == InitialKind::riemann && is_unit_burgers(cfg)) {
    std::vector<double> exact(sg.n_cells());
    for (int i = 0; i < sg.extent(0); ++i) {
      const double x = sg.center(0, i);
      exact[i] = sg.periodic()
                     ? oracles::periodic_riemann_burgers(ic.left, ic.right, ic.position,
                                                         sg.length(0), x, s.t_final)
                     : oracles::exact_riemann_burgers(ic.left, ic.right,
                                                      (x - ic.position) / s.t_final);
    }
    s.l1_to_exact = oracles::l1_error(last.rho, exact, sg);
  }

  {
    auto out = open_csv(out_dir / "summary.csv");
    out << summary_header() << '\n' << summary_row(s) << '\n';
  }
  return Execution{s, sg, std::move(last), flux};
}

}  // namespace

std::string summary_header() {
  return "eps,nx,steps,t_final,front_speed,exact_front_speed,l1_to_reference,l1_to_exact,"
         "final_mass,defect_total,budget";
}

std::string summary_row(const ScenarioSummary& s) {
  std::ostringstream out;
  out << std::setprecision(17) << s.eps << ',' << s.nx << ',' << s.steps << ',' << s.t_final << ','
      << s.front_speed << ',' << s.exact_front_speed << ',' << s.l1_to_reference << ','
      << s.l1_to_exact << ',' << s.final_mass << ',' << s.defect_total << ',' << s.budget;
  return out.str();
}

std::filesystem::path resolve_output_dir(const std::filesystem::path& configured) {
  const char* root = std::getenv("KINSHOCK_OUTPUT_ROOT");
  if (root != nullptr && *root != '\0' && configured.is_relative())
    return std::filesystem::path(root) / configured;
  return configured;
}

ScenarioSummary run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
  return execute(cfg, out_dir).summary;
}

std::vector<ScenarioSummary> run_sweep(const ScenarioConfig& cfg, const std::vector<double>& eps,
                                       const std::filesystem::path& out_root) {
  if (eps.empty()) throw ConfigError("sweep needs at least one eps value");
  std::vector<ScenarioSummary> rows;
  for (double e : eps) {
    ScenarioConfig one = cfg;
    one.eps = e;
    std::ostringstream name;
    name << "eps_" << e;
    rows.push_back(run_scenario(one, out_root / name.str()));
  }
  std::filesystem::create_directories(out_root);
  auto out = open_csv(out_root / "sweep_summary.csv");
  out << summary_header() << '\n';
  for (const auto& r : rows) out << summary_row(r) << '\n';
  return rows;
}

ScenarioSummary riemann_table(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
  if (cfg.initial.kind != InitialKind::riemann || !is_unit_burgers(cfg))
    throw ConfigError("riemann-table needs 1D Riemann data with the unit Burgers flux");
  const Execution ex = execute(cfg, out_dir);
  const auto& ic = cfg.initial;
  const SpatialGrid& sg = ex.sgrid;
  const double t = ex.summary.t_final;

  {
    auto out = open_csv(out_dir / "riemann_table.csv");
    out << "x,rho,phi,rho_exact\n";
    for (int i = 0; i < sg.extent(0); ++i) {
      const double x = sg.center(0, i);
      const double exact = sg.periodic() ? oracles::periodic_riemann_burgers(
                                               ic.left, ic.right, ic.position, sg.length(0), x, t)
                                         : oracles::exact_riemann_burgers(ic.left, ic.right,
                                                                          (x - ic.position) / t);
      out << x << ',' << ex.final_moments.rho[i] << ',' << ex.final_moments.phi[i] << ',' << exact
          << '\n';
    }
  }

  // Moment states a tenth of the domain behind and ahead of the front.
  const double length = sg.length(0);
  const double front = std::isnan(ex.summary.front_speed)
                           ? ic.position
                           : ic.position + ex.summary.front_speed * t;
  auto cell_at = [&](double x) {
    double wrapped = std::fmod(x, length);
    if (wrapped < 0.0) wrapped += length;
    return std::min(sg.extent(0) - 1, static_cast<int>(wrapped / sg.dx(0)));
  };
  const int a = cell_at(front - 0.1 * length);
  const int b = cell_at(front + 0.1 * length);
  const double phi_a[1] = {ex.final_moments.phi[a]};
  const double phi_b[1] = {ex.final_moments.phi[b]};
  const auto estimate = shock_speed_estimate(ex.final_moments.rho[a], phi_a,
                                             ex.final_moments.rho[b], phi_b, ex.flux, cfg.eps);
  auto out = open_csv(out_dir / "riemann_summary.csv");
  out << "front_speed,exact_front_speed,rho_a,rho_b,moment_ratio,flux_secant,above_threshold\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out << ex.summary.front_speed << ',' << ex.summary.exact_front_speed << ','
      << ex.final_moments.rho[a] << ',' << ex.final_moments.rho[b] << ','
      << (estimate ? estimate->ratio[0] : nan) << ',' << (estimate ? estimate->secant[0] : nan)
      << ',' << (estimate ? 1 : 0) << '\n';
  return ex.summary;
}

}  // namespace kinshock
