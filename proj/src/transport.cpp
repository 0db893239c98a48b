#include "kinshock/transport.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kinshock {

TransportScheme parse_transport_scheme(std::string_view name) {
  if (name == "upwind") return TransportScheme::upwind;
  if (name == "exact_shift") return TransportScheme::exact_shift;
  throw std::invalid_argument("unknown transport scheme '" + std::string(name) + "'");
}

std::string_view to_string(TransportScheme scheme) {
  return scheme == TransportScheme::upwind ? "upwind" : "exact_shift";
}

TransportConfig make_transport_config(TransportScheme scheme, double h, const FluxModel& flux,
                                      const SpatialGrid& sgrid) {
  if (!(h > 0.0)) throw std::invalid_argument("time step must be positive");
  return TransportConfig{scheme, h, h * flux.max_speed() / sgrid.min_dx()};
}

namespace {

constexpr double kCflSlack = 1e-12;
constexpr double kShiftSlack = 1e-9;

// Source cell index along one axis; outflow ghosts copy the boundary cell.
int neighbour(int i, int offset, int n, bool periodic) {
  const int k = i + offset;
  if (periodic) return ((k % n) + n) % n;
  return std::clamp(k, 0, n - 1);
}

// One first-order upwind sweep along `axis`: f_i - nu (f_i - f_{i-1}) for
// nu >= 0 and the mirror image for nu < 0.
void upwind_sweep(const KineticField& in, KineticField& out, int axis,
                  std::span<const double> courant) {
  const auto& sg = in.sgrid();
  const int nv = in.n_velocity();
  const int nx = sg.extent(0);
  const int ny = sg.dim() == 2 ? sg.extent(1) : 1;
  const int n_axis = sg.extent(axis);
  const bool periodic = sg.periodic();
  for (int k = 0; k < ny; ++k) {
    for (int i = 0; i < nx; ++i) {
      const int along = axis == 0 ? i : k;
      const int up = neighbour(along, -1, n_axis, periodic);
      const int down = neighbour(along, +1, n_axis, periodic);
      const auto here = in.slice(sg.flat(i, k));
      const auto left = in.slice(axis == 0 ? sg.flat(up, k) : sg.flat(i, up));
      const auto right = in.slice(axis == 0 ? sg.flat(down, k) : sg.flat(i, down));
      auto dst = out.slice(sg.flat(i, k));
      for (int j = 0; j < nv; ++j) {
        const double nu = courant[j];
        dst[j] = nu >= 0.0 ? here[j] - nu * (here[j] - left[j])
                           : here[j] + nu * (here[j] - right[j]);
      }
    }
  }
}

// Whole-cell translation by shifts[j] cells along `axis` for every slice j.
void shift_sweep(const KineticField& in, KineticField& out, int axis,
                 std::span<const int> shifts) {
  const auto& sg = in.sgrid();
  const int nv = in.n_velocity();
  const int nx = sg.extent(0);
  const int ny = sg.dim() == 2 ? sg.extent(1) : 1;
  const int n_axis = sg.extent(axis);
  const bool periodic = sg.periodic();
  for (int k = 0; k < ny; ++k) {
    for (int i = 0; i < nx; ++i) {
      const int along = axis == 0 ? i : k;
      auto dst = out.slice(sg.flat(i, k));
      for (int j = 0; j < nv; ++j) {
        const int src = neighbour(along, -shifts[j], n_axis, periodic);
        dst[j] = in.slice(axis == 0 ? sg.flat(src, k) : sg.flat(i, src))[j];
      }
    }
  }
}

}  // namespace

void transport_step_into(const KineticField& f, const SpeedTable& speeds,
                         const TransportConfig& cfg, KineticField& out) {
  const auto& sg = f.sgrid();
  const int nv = f.n_velocity();
  if (speeds.n_cells != nv || speeds.dim != sg.dim())
    throw std::invalid_argument("speed table does not match the field");
  if (!(cfg.h > 0.0)) throw std::invalid_argument("time step must be positive");

  std::optional<KineticField> scratch;
  if (sg.dim() == 2) scratch.emplace(f.vgrid(), sg);
  const KineticField* src = &f;
  for (int axis = 0; axis < sg.dim(); ++axis) {
    KineticField& dst = (axis + 1 == sg.dim()) ? out : *scratch;
    const auto table = speeds.axis(axis);
    if (cfg.scheme == TransportScheme::upwind) {
      std::vector<double> courant(nv);
      for (int j = 0; j < nv; ++j) {
        courant[j] = table[j] * cfg.h / sg.dx(axis);
        if (std::abs(courant[j]) > 1.0 + kCflSlack) {
          std::ostringstream msg;
          msg << "CFL violation: |A'(v_" << j << ")| h / dx = " << std::abs(courant[j])
              << " > 1 on axis " << axis;
          throw std::invalid_argument(msg.str());
        }
      }
      upwind_sweep(*src, dst, axis, courant);
    } else {
      std::vector<int> shifts(nv);
      for (int j = 0; j < nv; ++j) {
        const double s = table[j] * cfg.h / sg.dx(axis);
        const double r = std::round(s);
        if (std::abs(s - r) > kShiftSlack) {
          std::ostringstream msg;
          msg << "exact_shift needs integer shifts; slice " << j << " moves " << s
              << " cells on axis " << axis;
          throw std::invalid_argument(msg.str());
        }
        shifts[j] = static_cast<int>(r);
      }
      shift_sweep(*src, dst, axis, shifts);
    }
    src = &dst;
  }
}

KineticField transport_step(const KineticField& f, const FluxModel& flux,
                            const TransportConfig& cfg) {
  if (cfg.scheme == TransportScheme::upwind &&
      cfg.h * flux.max_speed() / f.sgrid().min_dx() > 1.0 + kCflSlack) {
    std::ostringstream msg;
    msg << "CFL violation: h max_speed / min(dx) = "
        << cfg.h * flux.max_speed() / f.sgrid().min_dx() << " > 1";
    throw std::invalid_argument(msg.str());
  }
  KineticField out(f.vgrid(), f.sgrid());
  transport_step_into(f, tabulate(flux, f.vgrid()), cfg, out);
  return out;
}

double max_stable_dt(const FluxModel& flux, const SpatialGrid& sgrid, double cfl_target,
                     double fallback) {
  if (!(cfl_target > 0.0 && cfl_target <= 1.0))
    throw std::invalid_argument("CFL target must lie in (0, 1]");
  if (flux.max_speed() <= 0.0) return fallback;
  return cfl_target * sgrid.min_dx() / flux.max_speed();
}

}  // namespace kinshock
