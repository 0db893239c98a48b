#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

// Test-side oracles written without reference to the library's algorithms.
namespace kinshock::brute {

// Minimum of sum_j w_j g_j dv over g in [0, 1]^n with sum_j g_j dv = rho.
// A vertex of this polytope has at most one fractional entry, so every subset
// of full cells plus one partially filled cell is enumerated.
inline double vertex_minimum(double rho, const std::vector<double>& weights, double dv) {
  const std::size_t n = weights.size();
  const double target = rho / dv;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t full = 0; full < (1u << n); ++full) {
    double count = 0.0;
    double cost = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if ((full >> j) & 1u) {
        count += 1.0;
        cost += weights[j];
      }
    }
    const double rest = target - count;
    if (std::abs(rest) <= 1e-12) best = std::min(best, cost * dv);
    if (rest <= 0.0 || rest >= 1.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (!((full >> j) & 1u)) best = std::min(best, (cost + rest * weights[j]) * dv);
    }
  }
  return best;
}

// Staircase weight per cell center, computed directly from the definition.
inline std::vector<double> band_weights(int n_cells, double dv, double eps) {
  std::vector<double> w(n_cells);
  for (int j = 0; j < n_cells; ++j) w[j] = std::floor((j + 0.5) * dv / eps);
  return w;
}

// Composite five-point Gauss-Legendre rule.
inline double integrate(const std::function<double(double)>& g, double a, double b,
                        int panels = 64) {
  static const double nodes[] = {0.0, -0.5384693101056831, 0.5384693101056831,
                                 -0.9061798459386640, 0.9061798459386640};
  static const double weights[] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                   0.2369268850561891, 0.2369268850561891};
  const double width = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    for (int k = 0; k < 5; ++k) sum += weights[k] * g(mid + 0.5 * width * nodes[k]);
  }
  return 0.5 * width * sum;
}

}  // namespace kinshock::brute
