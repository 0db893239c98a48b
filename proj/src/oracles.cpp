#include "kinshock/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kinshock::oracles {

GreedyMinimizer greedy_minimizer(double rho, const VelocityGrid& vgrid) {
  const double L = vgrid.kinetic_bound();
  if (!(rho >= 0.0 && rho <= L * (1.0 + 1e-12))) {
    std::ostringstream msg;
    msg << "density " << rho << " outside [0, " << L << "]";
    throw std::out_of_range(msg.str());
  }
  GreedyMinimizer out;
  out.profile.assign(vgrid.n_cells(), 0.0);
  double remaining = rho / vgrid.dv();
  for (int j = 0; j < vgrid.n_cells() && remaining > 0.0; ++j) {
    const double take = std::min(1.0, remaining);
    out.profile[j] = take;
    remaining -= take;
    // Cost of a unit of mass in cell j is its band index.
    out.value += vgrid.band_of(j) * take * vgrid.dv();
  }
  return out;
}

RiemannSolution classify_riemann_burgers(double left, double right) {
  RiemannSolution sol;
  sol.left = left;
  sol.right = right;
  if (left > right) {
    sol.kind = WaveKind::shock;
    sol.speed = 0.5 * (left + right);
  } else if (left < right) {
    sol.kind = WaveKind::rarefaction;
    sol.fan_left = left;
    sol.fan_right = right;
  } else {
    sol.kind = WaveKind::constant;
    sol.speed = left;
  }
  return sol;
}

double exact_riemann_burgers(double left, double right, double x_over_t) {
  const RiemannSolution sol = classify_riemann_burgers(left, right);
  switch (sol.kind) {
    case WaveKind::shock: return x_over_t < sol.speed ? left : right;
    case WaveKind::rarefaction: return std::clamp(x_over_t, left, right);
    case WaveKind::constant: return left;
  }
  return left;
}

double periodic_riemann_burgers(double left, double right, double position, double length,
                                double x, double t) {
  x -= length * std::floor(x / length);
  const double from_jump = exact_riemann_burgers(left, right, (x - position) / t);
  if (x < position) {
    // Segment holding `left`: the wrap-around jump at 0 acts from below.
    const double from_origin = exact_riemann_burgers(right, left, x / t);
    return from_origin != left ? from_origin : from_jump;
  }
  const double from_origin = exact_riemann_burgers(right, left, (x - length) / t);
  return from_jump != right ? from_jump : from_origin;
}

double godunov_flux(const FluxModel& flux, double left, double right) {
  if (left <= right) {
    if (flux.speed(0, left) >= 0.0) return flux.flux(0, left);
    if (flux.speed(0, right) <= 0.0) return flux.flux(0, right);
    double lo = left, hi = right;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (flux.speed(0, mid) < 0.0) lo = mid; else hi = mid;
    }
    return flux.flux(0, 0.5 * (lo + hi));
  }
  return std::max(flux.flux(0, left), flux.flux(0, right));
}

std::vector<double> godunov_reference(std::span<const double> rho0, const FluxModel& flux,
                                      const SpatialGrid& sgrid, double t_final, double cfl) {
  if (sgrid.dim() != 1 || flux.dim() != 1)
    throw std::invalid_argument("godunov_reference is one-dimensional");
  if (!flux.is_convex(0)) throw std::invalid_argument("godunov_reference needs a convex flux");
  if (rho0.size() != sgrid.n_cells())
    throw std::invalid_argument("initial density does not match the grid");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("CFL must lie in (0, 1]");

  const int nx = sgrid.extent(0);
  const double dx = sgrid.dx(0);
  const bool periodic = sgrid.periodic();
  std::vector<double> rho(rho0.begin(), rho0.end());
  std::vector<double> interface(nx + 1);
  const double speed = std::max(flux.max_speed(), 1e-300);
  const double h_max = cfl * dx / speed;

  double t = 0.0;
  while (t < t_final * (1.0 - 1e-12)) {
    const double h = std::min(h_max, t_final - t);
    for (int i = 0; i <= nx; ++i) {
      const double l = i == 0 ? (periodic ? rho[nx - 1] : rho[0]) : rho[i - 1];
      const double r = i == nx ? (periodic ? rho[0] : rho[nx - 1]) : rho[i];
      interface[i] = godunov_flux(flux, l, r);
    }
    for (int i = 0; i < nx; ++i) rho[i] -= h / dx * (interface[i + 1] - interface[i]);
    t += h;
  }
  return rho;
}

double l1_error(std::span<const double> a, std::span<const double> b, const SpatialGrid& sgrid) {
  if (a.size() != b.size() || a.size() != sgrid.n_cells())
    throw std::invalid_argument("l1_error: grid mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s * sgrid.cell_volume();
}

std::vector<double> coarsen(std::span<const double> fine, int factor) {
  if (factor < 1 || fine.size() % factor != 0)
    throw std::invalid_argument("coarsen: size is not a multiple of the factor");
  std::vector<double> out(fine.size() / factor, 0.0);
  for (std::size_t i = 0; i < fine.size(); ++i) out[i / factor] += fine[i];
  for (double& x : out) x /= factor;
  return out;
}

}  // namespace kinshock::oracles
