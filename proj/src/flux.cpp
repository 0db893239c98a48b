#include "kinshock/flux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kinshock/kinetic_state.hpp"

namespace kinshock {

Polynomial::Polynomial(std::vector<double> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) coefficients_.push_back(0.0);
}

double Polynomial::operator()(double v) const {
  double acc = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * v + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<double> d;
  for (std::size_t k = 1; k < coefficients_.size(); ++k)
    d.push_back(static_cast<double>(k) * coefficients_[k]);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  std::vector<double> a(coefficients_.size() + 1, 0.0);
  for (std::size_t k = 0; k < coefficients_.size(); ++k)
    a[k + 1] = coefficients_[k] / static_cast<double>(k + 1);
  return Polynomial(std::move(a));
}

FluxFamily parse_flux_family(std::string_view name) {
  if (name == "linear") return FluxFamily::linear;
  if (name == "burgers") return FluxFamily::burgers;
  if (name == "custom_polynomial") return FluxFamily::custom_polynomial;
  throw std::invalid_argument("unknown flux family '" + std::string(name) + "'");
}

std::string_view to_string(FluxFamily family) {
  switch (family) {
    case FluxFamily::linear: return "linear";
    case FluxFamily::burgers: return "burgers";
    case FluxFamily::custom_polynomial: return "custom_polynomial";
  }
  return "?";
}

namespace {

// Extrema of p on [0, b]: endpoints plus sign changes of p' located by bisection.
double max_abs_on_interval(const Polynomial& p, double b) {
  double best = std::max(std::abs(p(0.0)), std::abs(p(b)));
  const Polynomial dp = p.derivative();
  if (dp.degree() < 1) return best;
  constexpr int kSamples = 4096;
  double a0 = 0.0;
  double d0 = dp(a0);
  for (int s = 1; s <= kSamples; ++s) {
    const double a1 = b * s / kSamples;
    const double d1 = dp(a1);
    best = std::max(best, std::abs(p(a1)));
    if ((d0 < 0.0) != (d1 < 0.0)) {
      double lo = a0, hi = a1;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((dp(mid) < 0.0) == (d0 < 0.0)) lo = mid; else hi = mid;
      }
      best = std::max(best, std::abs(p(0.5 * (lo + hi))));
    }
    a0 = a1;
    d0 = d1;
  }
  return best;
}

}  // namespace

FluxModel::FluxModel(std::vector<Polynomial> speed_components, double kinetic_bound)
    : speeds_(std::move(speed_components)), kinetic_bound_(kinetic_bound), max_speed_(0.0) {
  if (speeds_.empty()) throw std::invalid_argument("flux needs at least one component");
  if (speeds_.size() > 2) throw std::invalid_argument("flux dimension must be 1 or 2");
  if (!(kinetic_bound > 0.0)) throw std::invalid_argument("kinetic bound L must be positive");
  for (const auto& s : speeds_) {
    fluxes_.push_back(s.antiderivative());
    slopes_.push_back(s.derivative());
    max_speed_ = std::max(max_speed_, max_abs_on_interval(s, kinetic_bound_));
  }
}

bool FluxModel::is_convex(int axis) const {
  constexpr int kSamples = 4096;
  for (int s = 0; s <= kSamples; ++s) {
    const double v = kinetic_bound_ * s / kSamples;
    if (slopes_[axis](v) < -1e-12) return false;
  }
  return true;
}

FluxModel builtin_flux(FluxFamily family, std::span<const double> params, double kinetic_bound) {
  std::vector<Polynomial> components;
  switch (family) {
    case FluxFamily::linear:
      if (params.empty()) throw std::invalid_argument("linear flux needs at least one velocity");
      for (double c : params) components.emplace_back(std::vector<double>{c});
      break;
    case FluxFamily::burgers:
      if (params.empty()) {
        components.emplace_back(std::vector<double>{0.0, 1.0});
      } else {
        for (double w : params) components.emplace_back(std::vector<double>{0.0, w});
      }
      break;
    case FluxFamily::custom_polynomial:
      if (params.empty())
        throw std::invalid_argument("custom_polynomial flux needs coefficients of A'");
      components.emplace_back(std::vector<double>(params.begin(), params.end()));
      break;
  }
  return FluxModel(std::move(components), kinetic_bound);
}

FluxModel builtin_flux(std::string_view name, std::span<const double> params,
                       double kinetic_bound) {
  return builtin_flux(parse_flux_family(name), params, kinetic_bound);
}

SpeedTable tabulate(const FluxModel& flux, const VelocityGrid& vgrid) {
  SpeedTable table;
  table.dim = flux.dim();
  table.n_cells = vgrid.n_cells();
  table.speeds.resize(static_cast<std::size_t>(table.dim) * table.n_cells);
  for (int a = 0; a < table.dim; ++a)
    for (int j = 0; j < table.n_cells; ++j)
      table.speeds[a * table.n_cells + j] = flux.speed(a, vgrid.center(j));
  return table;
}

}  // namespace kinshock
