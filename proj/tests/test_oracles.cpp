#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <stdexcept>

#include "brute_force.hpp"
#include "kinshock/entropy_projection.hpp"
#include "kinshock/oracles.hpp"

using namespace kinshock;
using namespace kinshock::oracles;

namespace {

FluxModel burgers() { return builtin_flux(FluxFamily::burgers, std::span<const double>{}, 1.0); }

}  // namespace

TEST(GreedyMinimizer, Examples) {
  const VelocityGrid vg(1.0, 0.25, 2);
  const double eps = vg.eps();
  const auto zero = greedy_minimizer(0.0, vg);
  EXPECT_EQ(zero.value, 0.0);
  for (double x : zero.profile) EXPECT_EQ(x, 0.0);

  EXPECT_NEAR(greedy_minimizer(2.5 * eps, vg).value, 2.0 * eps, 1e-15);

  const auto full = greedy_minimizer(1.0, vg);
  for (double x : full.profile) EXPECT_EQ(x, 1.0);
  const int k = vg.n_bands();
  EXPECT_NEAR(full.value, eps * k * (k - 1) / 2.0, 1e-14);

  EXPECT_THROW(greedy_minimizer(1.1, vg), std::out_of_range);
}

TEST(GreedyMinimizer, MatchesExhaustiveHalfIntegerSearch) {
  for (int m : {2, 3, 4}) {
    for (int bands = 1; bands * m <= 9; ++bands) {
      const VelocityGrid vg(1.0, 1.0 / bands, m);
      const int n = vg.n_cells();
      const auto w = brute::band_weights(n, vg.dv(), vg.eps());
      std::map<int, double> best;  // keyed by mass in half cells
      std::vector<int> digits(n, 0);
      while (true) {
        int halves = 0;
        double value = 0.0;
        for (int j = 0; j < n; ++j) {
          halves += digits[j];
          value += w[j] * 0.5 * digits[j] * vg.dv();
        }
        auto it = best.find(halves);
        if (it == best.end() || value < it->second) best[halves] = value;
        int j = 0;
        while (j < n && digits[j] == 2) digits[j++] = 0;
        if (j == n) break;
        ++digits[j];
      }
      for (const auto& [halves, value] : best) {
        const double rho = 0.5 * halves * vg.dv();
        const auto g = greedy_minimizer(rho, vg);
        EXPECT_NEAR(g.value, value, 1e-14) << "m=" << m << " bands=" << bands << " rho=" << rho;
        EXPECT_NEAR(entropy_moment(g.profile, vg), g.value, 1e-14);
      }
    }
  }
}

TEST(Riemann, Classification) {
  const auto shock = classify_riemann_burgers(0.8, 0.2);
  EXPECT_EQ(shock.kind, WaveKind::shock);
  EXPECT_DOUBLE_EQ(shock.speed, 0.5);
  const auto fan = classify_riemann_burgers(0.2, 0.8);
  EXPECT_EQ(fan.kind, WaveKind::rarefaction);
  EXPECT_DOUBLE_EQ(fan.fan_left, 0.2);
  EXPECT_DOUBLE_EQ(fan.fan_right, 0.8);
  EXPECT_EQ(classify_riemann_burgers(0.4, 0.4).kind, WaveKind::constant);
}

TEST(Riemann, ExactValues) {
  EXPECT_EQ(exact_riemann_burgers(0.8, 0.2, 0.4), 0.8);
  EXPECT_EQ(exact_riemann_burgers(0.8, 0.2, 0.6), 0.2);
  EXPECT_DOUBLE_EQ(exact_riemann_burgers(0.2, 0.8, 0.5), 0.5);
  EXPECT_EQ(exact_riemann_burgers(0.2, 0.8, 0.1), 0.2);
  EXPECT_EQ(exact_riemann_burgers(0.2, 0.8, 0.9), 0.8);
  EXPECT_EQ(exact_riemann_burgers(0.3, 0.3, -1.0), 0.3);
}

TEST(Riemann, FanIsContinuousAndMonotone) {
  double previous = exact_riemann_burgers(0.1, 0.9, -0.1);
  for (int k = 1; k <= 100; ++k) {
    const double v = exact_riemann_burgers(0.1, 0.9, -0.1 + 0.012 * k);
    EXPECT_GE(v, previous);
    EXPECT_LE(v - previous, 0.012 + 1e-15);
    previous = v;
  }
}

TEST(Riemann, PeriodicTwoJumps) {
  // Jump up at 0.25 (fan) and down at the wrap point (shock moving right).
  const double t = 0.3;
  EXPECT_EQ(periodic_riemann_burgers(0.2, 0.8, 0.25, 1.0, 0.10, t), 0.8);
  EXPECT_EQ(periodic_riemann_burgers(0.2, 0.8, 0.25, 1.0, 0.13, t), 0.8);
  EXPECT_EQ(periodic_riemann_burgers(0.2, 0.8, 0.25, 1.0, 0.16, t), 0.2);
  EXPECT_DOUBLE_EQ(periodic_riemann_burgers(0.2, 0.8, 0.25, 1.0, 0.25 + 0.5 * t, t), 0.5);
  EXPECT_EQ(periodic_riemann_burgers(0.2, 0.8, 0.25, 1.0, 0.9, t), 0.8);
  // Shock at 0.25 moving to 0.4, fan at the wrap point spanning [0.06, 0.24].
  EXPECT_EQ(periodic_riemann_burgers(0.8, 0.2, 0.25, 1.0, 0.39, t), 0.8);
  EXPECT_EQ(periodic_riemann_burgers(0.8, 0.2, 0.25, 1.0, 0.41, t), 0.2);
  EXPECT_DOUBLE_EQ(periodic_riemann_burgers(0.8, 0.2, 0.25, 1.0, 0.15, t), 0.5);
  EXPECT_EQ(periodic_riemann_burgers(0.8, 0.2, 0.25, 1.0, 0.03, t), 0.2);
}

TEST(Godunov, ConstantDataUnchanged) {
  const auto sg = SpatialGrid::line(50, 1.0, BoundaryCondition::periodic);
  const std::vector<double> rho(50, 0.37);
  const auto out = godunov_reference(rho, burgers(), sg, 0.5);
  for (double r : out) EXPECT_NEAR(r, 0.37, 1e-15);
}

TEST(Godunov, ShockConvergesAtFirstOrder) {
  auto error = [](int nx) {
    const auto sg = SpatialGrid::line(nx, 1.0, BoundaryCondition::outflow);
    std::vector<double> rho(nx), exact(nx);
    for (int i = 0; i < nx; ++i) {
      const double x = sg.center(0, i);
      rho[i] = x < 0.3 ? 0.8 : 0.2;
      exact[i] = exact_riemann_burgers(0.8, 0.2, (x - 0.3) / 0.4);
    }
    return l1_error(godunov_reference(rho, burgers(), sg, 0.4), exact, sg);
  };
  const double e1 = error(100);
  const double e2 = error(400);
  EXPECT_LT(e1, 3.0 / 100);
  EXPECT_LT(e2, e1);
}

TEST(Godunov, RarefactionConverges) {
  auto error = [](int nx) {
    const auto sg = SpatialGrid::line(nx, 1.0, BoundaryCondition::outflow);
    std::vector<double> rho(nx), exact(nx);
    for (int i = 0; i < nx; ++i) {
      const double x = sg.center(0, i);
      rho[i] = x < 0.3 ? 0.2 : 0.8;
      exact[i] = exact_riemann_burgers(0.2, 0.8, (x - 0.3) / 0.4);
    }
    return l1_error(godunov_reference(rho, burgers(), sg, 0.4), exact, sg);
  };
  EXPECT_LT(error(400), error(100));
}

TEST(Godunov, LinearTranslation) {
  const double c[] = {1.0};
  const auto flux = builtin_flux(FluxFamily::linear, c, 1.0);
  const auto sg = SpatialGrid::line(200, 1.0, BoundaryCondition::periodic);
  std::vector<double> rho(200);
  for (int i = 0; i < 200; ++i) rho[i] = std::exp(-std::pow((sg.center(0, i) - 0.3) / 0.05, 2));
  const auto out = godunov_reference(rho, flux, sg, 0.25);
  double m0 = 0.0, m1 = 0.0, x0 = 0.0, x1 = 0.0;
  for (int i = 0; i < 200; ++i) {
    m0 += rho[i];
    m1 += out[i];
    x0 += rho[i] * sg.center(0, i);
    x1 += out[i] * sg.center(0, i);
  }
  EXPECT_NEAR(m1, m0, 1e-12);
  EXPECT_NEAR(x1 / m1 - x0 / m0, 0.25, sg.dx(0));
}

TEST(Godunov, Errors) {
  const double p[] = {1.0, 0.0, -3.0};  // A'(v) = 1 - 3 v^2 is decreasing
  const auto sg = SpatialGrid::line(10, 1.0, BoundaryCondition::periodic);
  const std::vector<double> rho(10, 0.5);
  EXPECT_THROW(godunov_reference(rho, builtin_flux(FluxFamily::custom_polynomial, p, 1.0), sg, 0.1),
               std::invalid_argument);
  const auto plane = SpatialGrid::plane(3, 3, 1.0, 1.0, BoundaryCondition::periodic);
  const std::vector<double> rho2(9, 0.5);
  EXPECT_THROW(godunov_reference(rho2, burgers(), plane, 0.1), std::invalid_argument);
}

TEST(GodunovFlux, Cases) {
  const auto flux = burgers();
  EXPECT_DOUBLE_EQ(godunov_flux(flux, 0.2, 0.8), 0.02);
  EXPECT_DOUBLE_EQ(godunov_flux(flux, 0.8, 0.2), 0.32);
}

TEST(L1Error, Examples) {
  const auto sg = SpatialGrid::line(10, 1.0, BoundaryCondition::periodic);
  std::vector<double> a(10, 0.3), b(10, 0.3);
  EXPECT_EQ(l1_error(a, b, sg), 0.0);
  for (auto& x : b) x += 0.1;
  EXPECT_NEAR(l1_error(a, b, sg), 0.1, 1e-15);
  std::vector<double> u(10, 0.0), v(10, 0.0);
  u[1] = 10.0;
  v[6] = 10.0;
  EXPECT_NEAR(l1_error(u, v, sg), 2.0, 1e-15);
  EXPECT_THROW(l1_error(std::vector<double>(9, 0.0), a, sg), std::invalid_argument);
}

TEST(Coarsen, AveragesGroups) {
  const std::vector<double> fine{1, 3, 5, 7, 0, 0, 2, 2};
  const auto coarse = coarsen(fine, 4);
  ASSERT_EQ(coarse.size(), 2u);
  EXPECT_DOUBLE_EQ(coarse[0], 4.0);
  EXPECT_DOUBLE_EQ(coarse[1], 1.0);
  EXPECT_THROW(coarsen(fine, 3), std::invalid_argument);
}
