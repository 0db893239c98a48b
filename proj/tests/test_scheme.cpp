#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "kinshock/entropy_projection.hpp"
#include "kinshock/scheme.hpp"

using namespace kinshock;

namespace {

FluxModel burgers() { return builtin_flux(FluxFamily::burgers, std::span<const double>{}, 1.0); }

FluxModel linear(double c) {
  const double p[] = {c};
  return builtin_flux(FluxFamily::linear, p, 1.0);
}

std::vector<double> riemann(const SpatialGrid& sg, double left, double right, double at) {
  std::vector<double> rho(sg.n_cells());
  for (int i = 0; i < sg.extent(0); ++i) rho[i] = sg.center(0, i) < at ? left : right;
  return rho;
}

}  // namespace

TEST(Run, LinearExactShiftTranslates) {
  const VelocityGrid vg(1.0, 0.1, 4);
  const auto sg = SpatialGrid::line(40, 1.0, BoundaryCondition::periodic);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> rho(40);
  for (auto& r : rho) r = unit(rng);
  const auto f0 = from_macroscopic(rho, vg, sg);
  const auto flux = linear(1.0);
  RunOptions options;
  options.t_final = 5 * sg.dx(0);
  const auto result =
      run(f0, flux, make_transport_config(TransportScheme::exact_shift, sg.dx(0), flux, sg), options);
  EXPECT_EQ(translate_distance(result.field, shifted(f0, 0, -5)), 0.0);
  const auto& rows = result.diagnostics.rows;
  ASSERT_EQ(rows.size(), 6u);
  for (const auto& r : rows) {
    EXPECT_NEAR(r.entropy, rows.front().entropy, 1e-14);
    EXPECT_EQ(r.defect_total, 0.0);
  }
}

TEST(Run, SingleBandDataNeverProjects) {
  const VelocityGrid vg(1.0, 0.1, 4);
  const auto sg = SpatialGrid::line(200, 1.0, BoundaryCondition::periodic);
  KineticField f0(vg, sg);
  for (std::size_t c = 0; c < f0.n_spatial(); ++c) {
    auto s = f0.slice(c);
    const double x = sg.center(0, static_cast<int>(c));
    for (int j = 0; j < 12; ++j) s[j] = 1.0;  // full below 3 eps
    for (int j = 12; j < 16; ++j) s[j] = 0.5 + 0.5 * std::sin(2 * std::numbers::pi * (x + 0.1 * j));
  }
  const auto flux = burgers();
  RunOptions options;
  options.t_final = 0.4;
  const auto result = run(
      f0, flux, make_transport_config(TransportScheme::upwind, max_stable_dt(flux, sg, 0.9, 1.0), flux, sg),
      options);
  EXPECT_EQ(result.diagnostics.rows.back().defect_total, 0.0);
}

TEST(Run, BurgersShockDissipatesEntropy) {
  const VelocityGrid vg(1.0, 0.05, 4);
  const auto sg = SpatialGrid::line(200, 1.0, BoundaryCondition::periodic);
  const auto flux = burgers();
  RunOptions options;
  options.t_final = 0.2;
  const auto tcfg =
      make_transport_config(TransportScheme::upwind, max_stable_dt(flux, sg, 0.9, 1.0), flux, sg);
  const auto result = run(from_macroscopic(riemann(sg, 0.8, 0.2, 0.25), vg, sg), flux, tcfg, options);
  const auto entropy = result.diagnostics.entropy_series();
  const auto defect = result.diagnostics.defect_series();
  for (std::size_t n = 1; n < entropy.size(); ++n) {
    EXPECT_LT(entropy[n], entropy[n - 1]) << n;
    EXPECT_GT(defect[n], 0.0) << n;
  }
  const auto& rows = result.diagnostics.rows;
  EXPECT_DOUBLE_EQ(rows.back().time, 0.2);
  for (const auto& r : rows) {
    EXPECT_NEAR(r.mass, rows.front().mass, 1e-12);
    EXPECT_LE(r.defect_total, result.diagnostics.entropy_budget);
  }
}

TEST(Run, OutflowMassNonIncreasing) {
  const VelocityGrid vg(1.0, 0.1, 2);
  const auto sg = SpatialGrid::line(100, 1.0, BoundaryCondition::outflow);
  const auto flux = burgers();
  RunOptions options;
  options.t_final = 0.6;
  const auto result = run(from_macroscopic(riemann(sg, 0.2, 0.9, 0.5), vg, sg), flux,
                          make_transport_config(TransportScheme::upwind, 0.005, flux, sg), options);
  const auto mass = result.diagnostics.mass_series();
  for (std::size_t n = 1; n < mass.size(); ++n) EXPECT_LE(mass[n], mass[n - 1] + 1e-14);
  EXPECT_LT(mass.back(), mass.front());
}

TEST(Run, ObserverCadence) {
  const VelocityGrid vg(1.0, 0.25, 2);
  const auto sg = SpatialGrid::line(20, 1.0, BoundaryCondition::periodic);
  const auto flux = burgers();
  std::vector<int> seen;
  RunOptions options;
  options.t_final = 0.105;
  options.observer_stride = 4;
  options.observer = [&](const ObserverEvent& e) {
    seen.push_back(e.step);
    EXPECT_EQ(e.moments.rho.size(), sg.n_cells());
    EXPECT_EQ(e.row.step, e.step);
  };
  run(from_macroscopic(riemann(sg, 0.6, 0.3, 0.5), vg, sg), flux,
      make_transport_config(TransportScheme::upwind, 0.01, flux, sg), options);
  const std::vector<int> expected{0, 4, 8, 11};
  EXPECT_EQ(seen, expected);
}

TEST(Run, FlippedRuleIsCaught) {
  const VelocityGrid vg(1.0, 0.05, 4);
  const auto sg = SpatialGrid::line(100, 1.0, BoundaryCondition::periodic);
  const auto flux = burgers();
  RunOptions options;
  options.t_final = 0.1;
  options.case_rule = CaseRule::flipped;
  EXPECT_THROW(run(from_macroscopic(riemann(sg, 0.8, 0.2, 0.25), vg, sg), flux,
                   make_transport_config(TransportScheme::upwind, 0.009, flux, sg), options),
               InvariantViolation);
}

TEST(Moments, ZeroAndIndicator) {
  const VelocityGrid vg(1.0, 0.1, 4);
  const auto sg = SpatialGrid::line(30, 1.0, BoundaryCondition::periodic);
  const auto flux = burgers();
  const auto zero = moments(KineticField(vg, sg), flux);
  for (double r : zero.rho) EXPECT_EQ(r, 0.0);
  for (double p : zero.phi) EXPECT_EQ(p, 0.0);

  std::vector<double> rho(30);
  for (int i = 0; i < 30; ++i) rho[i] = i / 29.0;
  const auto m = moments(from_macroscopic(rho, vg, sg), flux);
  const double dv = vg.dv();
  for (int i = 0; i < 30; ++i) {
    EXPECT_NEAR(m.rho[i], rho[i], 1e-14);
    EXPECT_NEAR(m.phi[i], rho[i] * rho[i] / 2, dv * dv / 8 + 1e-15) << i;
  }
}

TEST(Moments, TwoDimensionalLayout) {
  const VelocityGrid vg(1.0, 0.5, 2);
  const auto sg = SpatialGrid::plane(3, 4, 1.0, 1.0, BoundaryCondition::periodic);
  const double w[] = {1.0, -2.0};
  const auto flux = builtin_flux(FluxFamily::burgers, w, 1.0);
  const std::vector<double> full(sg.n_cells(), 1.0);
  const auto m = moments(from_macroscopic(full, vg, sg), flux);
  EXPECT_EQ(m.dim, 2);
  EXPECT_NEAR(m.flux_axis(0)[5], 0.5, 1e-15);
  EXPECT_NEAR(m.flux_axis(1)[5], -1.0, 1e-15);
}

TEST(ShockSpeedEstimate, IndicatorStates) {
  const VelocityGrid vg(1.0, 0.1, 4);
  const auto sg = SpatialGrid::line(3, 1.0, BoundaryCondition::periodic);
  const std::vector<double> rho{0.8, 0.2, 0.5};
  const auto flux = burgers();
  const auto m = moments(from_macroscopic(rho, vg, sg), flux);
  const double pa[] = {m.phi[0]};
  const double pb[] = {m.phi[1]};
  const auto s = shock_speed_estimate(m.rho[0], pa, m.rho[1], pb, flux, vg.eps());
  ASSERT_TRUE(s.has_value());
  EXPECT_NEAR(s->ratio[0], 0.5, 1e-12);
  EXPECT_NEAR(s->secant[0], 0.5, 1e-12);

  const double eps = 0.1;
  const double p[] = {0.0};
  EXPECT_FALSE(shock_speed_estimate(0.3 + 0.1 * eps, p, 0.3, p, flux, eps, 1.0).has_value());
}

TEST(FrontTracker, TravellingAndStationary) {
  const auto sg = SpatialGrid::line(200, 1.0, BoundaryCondition::periodic);
  std::vector<std::vector<double>> moving, still;
  std::vector<double> times;
  for (int n = 0; n <= 10; ++n) {
    const double t = 0.05 * n;
    times.push_back(t);
    moving.push_back(riemann(sg, 0.8, 0.2, 0.3 + 0.5 * t));
    still.push_back(riemann(sg, 0.8, 0.2, 0.4));
  }
  EXPECT_NEAR(front_tracker(moving, times, sg, 0.5, 0.3).speed, 0.5, sg.dx(0));
  EXPECT_NEAR(front_tracker(still, times, sg, 0.5, 0.4).speed, 0.0, 1e-12);

  const std::vector<std::vector<double>> flat(3, std::vector<double>(200, 0.3));
  const std::vector<double> t3{0.0, 0.1, 0.2};
  EXPECT_THROW(front_tracker(flat, t3, sg, 0.5, 0.4), std::runtime_error);
}

TEST(FrontTracker, UnwrapsAcrossPeriodicBoundary) {
  const auto sg = SpatialGrid::line(100, 1.0, BoundaryCondition::periodic);
  std::vector<std::vector<double>> series;
  std::vector<double> times;
  for (int n = 0; n <= 8; ++n) {
    const double t = 0.05 * n;
    const double at = std::fmod(0.9 + 0.5 * t, 1.0);
    std::vector<double> rho(100);
    for (int i = 0; i < 100; ++i) {
      const double d = std::fmod(sg.center(0, i) - at + 1.0, 1.0);
      rho[i] = d < 0.5 ? 0.2 : 0.8;  // descending crossing at `at`
    }
    series.push_back(rho);
    times.push_back(t);
  }
  EXPECT_NEAR(front_tracker(series, times, sg, 0.5, 0.9).speed, 0.5, sg.dx(0));
}

TEST(WeakFormResidual, ShrinksUnderRefinement) {
  const auto flux = burgers();
  const double t_final = 0.4;
  auto residual = [&](int nx) {
    const VelocityGrid vg(1.0, 0.05, 4);
    const auto sg = SpatialGrid::line(nx, 1.0, BoundaryCondition::periodic);
    std::vector<double> rho(nx);
    for (int i = 0; i < nx; ++i) rho[i] = 0.5 + 0.3 * std::sin(2 * std::numbers::pi * sg.center(0, i));
    const double pi = std::numbers::pi;
    TestFunction psi{
        [=](double x, double, double t) {
          return std::sin(2 * pi * x) * std::pow(std::cos(pi * t / (2 * t_final)), 2);
        },
        [=](double x, double, double t) {
          return 2 * pi * std::cos(2 * pi * x) * std::pow(std::cos(pi * t / (2 * t_final)), 2);
        },
        [](double, double, double) { return 0.0; }};
    WeakFormResidual w(sg, psi);
    RunOptions options;
    options.t_final = t_final;
    options.observer_stride = 1;
    options.observer = [&](const ObserverEvent& e) { w.observe(e); };
    run(from_macroscopic(rho, vg, sg), flux,
        make_transport_config(TransportScheme::upwind, max_stable_dt(flux, sg, 0.9, 1.0), flux, sg),
        options);
    return w.residual();
  };
  const double coarse = residual(50);
  const double fine = residual(200);
  EXPECT_LT(fine, coarse);
  EXPECT_LT(fine, 0.05);
}
