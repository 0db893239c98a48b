#include "kinshock/kinetic_state.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

namespace kinshock {

namespace {

std::string shortest(double x) {
  char buf[32];
  const auto end = std::to_chars(buf, buf + sizeof buf, x).ptr;
  return std::string(buf, end);
}

}  // namespace

VelocityGrid::VelocityGrid(double kinetic_bound, double eps, int cells_per_band)
    : kinetic_bound_(kinetic_bound), eps_(eps), cells_per_band_(cells_per_band) {
  if (!(kinetic_bound > 0.0)) throw std::invalid_argument("L must be positive");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (cells_per_band < 2) throw std::invalid_argument("cells per band m must be at least 2");
  const double bands = kinetic_bound / eps;
  const double rounded = std::round(bands);
  if (rounded < 1.0 || std::abs(bands - rounded) > 1e-9 * std::max(1.0, bands)) {
    throw std::invalid_argument("eps = " + shortest(eps) + " does not divide L = " +
                                shortest(kinetic_bound));
  }
  n_bands_ = static_cast<int>(rounded);
  dv_ = kinetic_bound / (static_cast<double>(n_bands_) * cells_per_band);
}

BoundaryCondition parse_boundary_condition(std::string_view name) {
  if (name == "periodic") return BoundaryCondition::periodic;
  if (name == "outflow") return BoundaryCondition::outflow;
  throw std::invalid_argument("unknown boundary condition '" + std::string(name) + "'");
}

std::string_view to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::periodic ? "periodic" : "outflow";
}

SpatialGrid::SpatialGrid(int dim, std::array<int, 2> extents, std::array<double, 2> dx,
                         BoundaryCondition bc)
    : dim_(dim), extents_(extents), dx_(dx), bc_(bc) {
  for (int a = 0; a < dim_; ++a) {
    if (extents_[a] < 3) throw std::invalid_argument("spatial extents must be at least 3");
    if (!(dx_[a] > 0.0)) throw std::invalid_argument("cell widths must be positive");
  }
}

SpatialGrid SpatialGrid::line(int nx, double length, BoundaryCondition bc) {
  return SpatialGrid(1, {nx, 1}, {length / nx, 1.0}, bc);
}

SpatialGrid SpatialGrid::plane(int nx, int ny, double length_x, double length_y,
                               BoundaryCondition bc) {
  return SpatialGrid(2, {nx, ny}, {length_x / nx, length_y / ny}, bc);
}

SpatialGrid SpatialGrid::with_spacing(int dim, std::array<int, 2> extents,
                                      std::array<double, 2> dx, BoundaryCondition bc) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("spatial dimension must be 1 or 2");
  if (dim == 1) {
    extents[1] = 1;
    dx[1] = 1.0;
  }
  return SpatialGrid(dim, extents, dx, bc);
}

double SpatialGrid::min_dx() const { return dim_ == 1 ? dx_[0] : std::min(dx_[0], dx_[1]); }

std::size_t SpatialGrid::n_cells() const {
  return static_cast<std::size_t>(extents_[0]) * (dim_ == 2 ? extents_[1] : 1);
}

double SpatialGrid::cell_volume() const { return dim_ == 1 ? dx_[0] : dx_[0] * dx_[1]; }

KineticField::KineticField(VelocityGrid vgrid, SpatialGrid sgrid)
    : vgrid_(vgrid), sgrid_(sgrid), values_(sgrid.n_cells() * vgrid.n_cells(), 0.0) {}

KineticField::KineticField(VelocityGrid vgrid, SpatialGrid sgrid, std::vector<double> values)
    : vgrid_(vgrid), sgrid_(sgrid), values_(std::move(values)) {
  if (values_.size() != sgrid_.n_cells() * vgrid_.n_cells())
    throw std::invalid_argument("kinetic field size does not match its grids");
}

double KineticField::range_violation() const {
  double worst = 0.0;
  for (double x : values_) worst = std::max({worst, -x, x - 1.0});
  return worst;
}

double slice_mass(std::span<const double> slice, double dv) {
  double s = 0.0;
  for (double x : slice) s += x;
  return s * dv;
}

KineticField from_macroscopic(std::span<const double> rho0, const VelocityGrid& vgrid,
                              const SpatialGrid& sgrid) {
  if (rho0.size() != sgrid.n_cells())
    throw std::invalid_argument("macroscopic field size does not match the spatial grid");
  KineticField f(vgrid, sgrid);
  const double L = vgrid.kinetic_bound();
  const int nv = vgrid.n_cells();
  for (std::size_t c = 0; c < rho0.size(); ++c) {
    const double rho = rho0[c];
    if (!(rho >= 0.0 && rho <= L)) {
      std::ostringstream msg;
      msg << "density " << rho << " at cell " << c << " outside [0, " << L << "]";
      throw std::out_of_range(msg.str());
    }
    auto s = f.slice(c);
    // Remaining mass in units of dv.
    double units = rho / vgrid.dv();
    for (int j = 0; j < nv && units > 0.0; ++j) {
      const double take = std::min(1.0, units);
      s[j] = take;
      units -= take;
    }
  }
  return f;
}

double mass(const KineticField& f) {
  return slice_mass(f.values(), f.vgrid().dv()) * f.sgrid().cell_volume();
}

double translate_distance(const KineticField& f, const KineticField& g) {
  if (!(f.vgrid() == g.vgrid()) || !(f.sgrid() == g.sgrid()))
    throw std::invalid_argument("translate_distance: grid mismatch");
  double s = 0.0;
  const auto a = f.values();
  const auto b = g.values();
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s * f.vgrid().dv() * f.sgrid().cell_volume();
}

KineticField shifted(const KineticField& f, int axis, int cells) {
  const auto& sg = f.sgrid();
  if (axis < 0 || axis >= sg.dim()) throw std::invalid_argument("shift axis out of range");
  KineticField out(f.vgrid(), sg);
  const int nx = sg.extent(0);
  const int ny = sg.dim() == 2 ? sg.extent(1) : 1;
  const int n_axis = sg.extent(axis);
  const int offset = ((cells % n_axis) + n_axis) % n_axis;
  for (int k = 0; k < ny; ++k) {
    for (int i = 0; i < nx; ++i) {
      const int si = axis == 0 ? (i + offset) % nx : i;
      const int sk = axis == 1 ? (k + offset) % ny : k;
      const auto src = f.slice(sg.flat(si, sk));
      std::copy(src.begin(), src.end(), out.slice(sg.flat(i, k)).begin());
    }
  }
  return out;
}

void write_snapshot(const KineticField& f, double time, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write snapshot " + path.string());
  const auto& sg = f.sgrid();
  const auto& vg = f.vgrid();
  out << std::setprecision(17);
  out << "# dim=" << sg.dim() << " nx=" << sg.extent(0)
      << " ny=" << (sg.dim() == 2 ? sg.extent(1) : 1) << " dx=" << sg.dx(0)
      << " dy=" << (sg.dim() == 2 ? sg.dx(1) : 1.0) << " bc=" << to_string(sg.bc())
      << " m=" << vg.cells_per_band() << " dv=" << vg.dv() << " eps=" << vg.eps()
      << " L=" << vg.kinetic_bound() << " time=" << time << '\n';
  out << "cell,j,f\n";
  for (std::size_t c = 0; c < f.n_spatial(); ++c) {
    const auto s = f.slice(c);
    for (int j = 0; j < f.n_velocity(); ++j) out << c << ',' << j << ',' << s[j] << '\n';
  }
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read snapshot " + path.string());
  std::string line;
  std::getline(in, line);
  if (line.rfind("# ", 0) != 0) throw std::runtime_error("snapshot header missing");
  std::istringstream header(line.substr(2));
  int dim = 1, nx = 0, ny = 1, m = 0;
  double dx = 0, dy = 1, eps = 0, L = 0, time = 0;
  std::string bc = "periodic", token;
  while (header >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = token.substr(0, eq);
    const std::string val = token.substr(eq + 1);
    if (key == "dim") dim = std::stoi(val);
    else if (key == "nx") nx = std::stoi(val);
    else if (key == "ny") ny = std::stoi(val);
    else if (key == "dx") dx = std::stod(val);
    else if (key == "dy") dy = std::stod(val);
    else if (key == "bc") bc = val;
    else if (key == "m") m = std::stoi(val);
    else if (key == "eps") eps = std::stod(val);
    else if (key == "L") L = std::stod(val);
    else if (key == "time") time = std::stod(val);
  }
  const VelocityGrid vg(L, eps, m);
  const auto bcv = parse_boundary_condition(bc);
  const SpatialGrid sg = SpatialGrid::with_spacing(dim, {nx, ny}, {dx, dy}, bcv);
  std::vector<double> values(sg.n_cells() * vg.n_cells(), 0.0);
  std::getline(in, line);  // column header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::size_t c = 0;
    int j = 0;
    double v = 0;
    char comma = 0;
    row >> c >> comma >> j >> comma >> v;
    values.at(c * vg.n_cells() + j) = v;
  }
  return Snapshot{KineticField(vg, sg, std::move(values)), time};
}

}  // namespace kinshock
