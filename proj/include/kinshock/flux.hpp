#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace kinshock {

class VelocityGrid;

/// Dense polynomial c0 + c1 v + c2 v^2 + ...
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);

  double operator()(double v) const;
  Polynomial derivative() const;
  /// Antiderivative vanishing at v = 0.
  Polynomial antiderivative() const;

  const std::vector<double>& coefficients() const { return coefficients_; }
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }

 private:
  std::vector<double> coefficients_;
};

enum class FluxFamily { linear, burgers, custom_polynomial };

FluxFamily parse_flux_family(std::string_view name);
std::string_view to_string(FluxFamily family);

// Flux A : [0, L] -> R^d with A(0) = 0. Each component is stored through its
// derivative A'_i as a polynomial, so A_i is the exact closed-form
// antiderivative. Immutable after construction.
class FluxModel {
 public:
  FluxModel(std::vector<Polynomial> speed_components, double kinetic_bound);

  int dim() const { return static_cast<int>(speeds_.size()); }
  double kinetic_bound() const { return kinetic_bound_; }

  double flux(int axis, double v) const { return fluxes_[axis](v); }
  double speed(int axis, double v) const { return speeds_[axis](v); }
  double speed_slope(int axis, double v) const { return slopes_[axis](v); }

  /// sup over v in [0, L] of max_i |A'_i(v)|.
  double max_speed() const { return max_speed_; }

  /// True when A'_axis is non-decreasing on [0, L].
  bool is_convex(int axis) const;

 private:
  std::vector<Polynomial> speeds_;
  std::vector<Polynomial> fluxes_;
  std::vector<Polynomial> slopes_;
  double kinetic_bound_;
  double max_speed_;
};

/// Built-in flux families on [0, kinetic_bound].
///   linear            A_i(v) = c_i v, params = {c_1, ..., c_d}
///   burgers           A_i(v) = w_i v^2 / 2, params = {w_1, ..., w_d} or empty (d = 1, w = 1)
///   custom_polynomial A'(v) = p0 + p1 v + ..., params = {p0, p1, ...}, d = 1
/// Throws std::invalid_argument for empty coefficient lists where required.
FluxModel builtin_flux(FluxFamily family, std::span<const double> params,
                       double kinetic_bound);
FluxModel builtin_flux(std::string_view name, std::span<const double> params,
                       double kinetic_bound);

// A'_i sampled at velocity cell centers, laid out as speeds[axis * n_cells + j].
struct SpeedTable {
  int dim = 0;
  int n_cells = 0;
  std::vector<double> speeds;

  double at(int axis, int cell) const { return speeds[axis * n_cells + cell]; }
  std::span<const double> axis(int a) const {
    return std::span<const double>(speeds).subspan(a * n_cells, n_cells);
  }
};

SpeedTable tabulate(const FluxModel& flux, const VelocityGrid& vgrid);

}  // namespace kinshock
