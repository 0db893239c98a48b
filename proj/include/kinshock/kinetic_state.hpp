#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace kinshock {

/// Uniform grid on the kinetic interval [0, L]. Each entropy band of width eps
/// holds exactly `cells_per_band` cells, so the staircase entropy weight is
/// constant on every cell.
class VelocityGrid {
 public:
  VelocityGrid(double kinetic_bound, double eps, int cells_per_band);

  double kinetic_bound() const { return kinetic_bound_; }
  double eps() const { return eps_; }
  int cells_per_band() const { return cells_per_band_; }
  int n_bands() const { return n_bands_; }
  int n_cells() const { return n_bands_ * cells_per_band_; }
  double dv() const { return dv_; }

  double lower(int cell) const { return cell * dv_; }
  double upper(int cell) const { return (cell + 1) * dv_; }
  double center(int cell) const { return (cell + 0.5) * dv_; }
  int band_of(int cell) const { return cell / cells_per_band_; }

  bool operator==(const VelocityGrid&) const = default;

 private:
  double kinetic_bound_;
  double eps_;
  int cells_per_band_;
  int n_bands_;
  double dv_;
};

enum class BoundaryCondition { periodic, outflow };

BoundaryCondition parse_boundary_condition(std::string_view name);
std::string_view to_string(BoundaryCondition bc);

// Uniform 1D or 2D cell-centred mesh. Cell (i, k) has flat index i + nx * k and
// center ((i + 1/2) dx, (k + 1/2) dy).
class SpatialGrid {
 public:
  static SpatialGrid line(int nx, double length, BoundaryCondition bc);
  static SpatialGrid plane(int nx, int ny, double length_x, double length_y,
                           BoundaryCondition bc);
  /// Explicit cell widths; dx[1] is ignored for dim = 1.
  static SpatialGrid with_spacing(int dim, std::array<int, 2> extents,
                                  std::array<double, 2> dx, BoundaryCondition bc);

  int dim() const { return dim_; }
  int extent(int axis) const { return extents_[axis]; }
  double dx(int axis) const { return dx_[axis]; }
  double min_dx() const;
  double length(int axis) const { return extents_[axis] * dx_[axis]; }
  BoundaryCondition bc() const { return bc_; }
  bool periodic() const { return bc_ == BoundaryCondition::periodic; }

  std::size_t n_cells() const;
  double cell_volume() const;
  double center(int axis, int index) const { return (index + 0.5) * dx_[axis]; }
  std::size_t flat(int i, int k = 0) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(extents_[0]) * k;
  }

  bool operator==(const SpatialGrid&) const = default;

 private:
  SpatialGrid(int dim, std::array<int, 2> extents, std::array<double, 2> dx,
              BoundaryCondition bc);

  int dim_;
  std::array<int, 2> extents_;
  std::array<double, 2> dx_;
  BoundaryCondition bc_;
};

/// Kinetic density f(x, v) in [0, 1], contiguous in v per spatial cell.
class KineticField {
 public:
  KineticField(VelocityGrid vgrid, SpatialGrid sgrid);
  KineticField(VelocityGrid vgrid, SpatialGrid sgrid, std::vector<double> values);

  const VelocityGrid& vgrid() const { return vgrid_; }
  const SpatialGrid& sgrid() const { return sgrid_; }

  std::size_t n_spatial() const { return sgrid_.n_cells(); }
  int n_velocity() const { return vgrid_.n_cells(); }

  std::span<double> slice(std::size_t cell) {
    return std::span<double>(values_).subspan(cell * n_velocity(), n_velocity());
  }
  std::span<const double> slice(std::size_t cell) const {
    return std::span<const double>(values_).subspan(cell * n_velocity(), n_velocity());
  }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  /// Largest distance of any entry outside [0, 1]; zero for a valid field.
  double range_violation() const;

 private:
  VelocityGrid vgrid_;
  SpatialGrid sgrid_;
  std::vector<double> values_;
};

/// Velocity integral of one slice.
double slice_mass(std::span<const double> slice, double dv);

/// Discretized equilibrium indicator of [0, rho0(x)] per spatial cell: full
/// cells are 1, the cell containing rho0 takes the fractional remainder.
KineticField from_macroscopic(std::span<const double> rho0, const VelocityGrid& vgrid,
                              const SpatialGrid& sgrid);

double mass(const KineticField& f);

/// L1 distance over space and velocity.
double translate_distance(const KineticField& f, const KineticField& g);

/// Periodic whole-cell shift: result(x) = f(x + cells * dx) along `axis`.
KineticField shifted(const KineticField& f, int axis, int cells);

/// Snapshot dump: `#`-prefixed header with grid metadata and time, then one
/// row per (cell, velocity index).
struct Snapshot {
  KineticField field;
  double time;
};

void write_snapshot(const KineticField& f, double time, const std::filesystem::path& path);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace kinshock
