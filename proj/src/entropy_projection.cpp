#include "kinshock/entropy_projection.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kinshock {

namespace {

// Values may overshoot [0, 1] by rounding after transport.
constexpr double kRangeSlack = 1e-12;

// Band index of a velocity integral given in units of dv, snapping values
// within 1e-12 L below a band edge up to that edge.
int band_index(double cell_units, int cells_per_band, int n_bands) {
  const double q = cell_units / cells_per_band;
  const int n = static_cast<int>(std::floor(q + 1e-12 * n_bands));
  return std::clamp(n, 0, n_bands);
}

void check_range(std::span<const double> slice) {
  for (std::size_t j = 0; j < slice.size(); ++j) {
    const double x = slice[j];
    if (!(x >= -kRangeSlack && x <= 1.0 + kRangeSlack)) {
      std::ostringstream msg;
      msg << "profile value " << x << " at velocity cell " << j << " outside [0, 1]";
      throw std::invalid_argument(msg.str());
    }
  }
}

}  // namespace

int eta_eps(double v, double eps, double kinetic_bound) {
  if (!(v >= 0.0 && v <= kinetic_bound)) {
    std::ostringstream msg;
    msg << "velocity " << v << " outside [0, " << kinetic_bound << "]";
    throw std::out_of_range(msg.str());
  }
  return static_cast<int>(std::floor(v / eps));
}

double entropy_moment(std::span<const double> slice, const VelocityGrid& vgrid) {
  const int m = vgrid.cells_per_band();
  double acc = 0.0;
  for (int k = 1; k < vgrid.n_bands(); ++k) {
    double band = 0.0;
    for (int j = k * m; j < (k + 1) * m; ++j) band += slice[j];
    acc += k * band;
  }
  return acc * vgrid.dv();
}

double minimum_value(double rho, double eps, double kinetic_bound) {
  if (!(rho >= 0.0 && rho <= kinetic_bound * (1.0 + 1e-12))) {
    std::ostringstream msg;
    msg << "density " << rho << " outside [0, " << kinetic_bound << "]";
    throw std::out_of_range(msg.str());
  }
  const int n_bands = static_cast<int>(std::round(kinetic_bound / eps));
  const int n = std::clamp(static_cast<int>(std::floor(rho / eps + 1e-12 * n_bands)), 0, n_bands);
  if (n == 0) return 0.0;
  return eps * 0.5 * n * (n - 1) + n * (rho - n * eps);
}

SliceStats project_slice_into(std::span<const double> in, std::span<double> out,
                              const VelocityGrid& vgrid, CaseRule rule) {
  const int m = vgrid.cells_per_band();
  const int n_bands = vgrid.n_bands();
  const int nv = vgrid.n_cells();
  if (static_cast<int>(in.size()) != nv || static_cast<int>(out.size()) != nv)
    throw std::invalid_argument("profile length does not match the velocity grid");
  check_range(in);

  // All bookkeeping is in units of dv until the end.
  double total = 0.0;
  for (double x : in) total += x;
  const int n = band_index(total, m, n_bands);
  const int lo = n * m;
  const int hi = std::min(lo + m, nv);

  double tail = 0.0;
  for (int j = hi; j < nv; ++j) tail += in[j];
  double holes = 0.0;
  for (int j = 0; j < lo; ++j) holes += 1.0 - in[j];
  const double band_target = std::max(0.0, total - static_cast<double>(lo));

  SliceStats st;
  st.band = n;
  st.tail = tail * vgrid.dv();
  st.holes = holes * vgrid.dv();

  const double identity_tol = 1e-12 * nv;
  const bool identity = tail <= identity_tol && holes <= identity_tol;
  bool fill_up = tail > holes;
  if (rule == CaseRule::flipped) fill_up = !fill_up;
  st.case_tag = identity ? ProjectionCase::identity
                         : (fill_up ? ProjectionCase::case1 : ProjectionCase::case2);

  double defect = 0.0;
  double drop = 0.0;
  auto emit = [&](int j, double value) {
    const double before = in[j];
    out[j] = value;
    defect += std::abs(before - value);
    drop += vgrid.band_of(j) * (before - value);
  };

  if (identity) {
    // Position where the kept band mass reaches its target, for reporting v0.
    double budget = band_target;
    double pos = 0.0;
    for (int j = lo; j < hi && budget > 0.0; ++j) {
      const double x = in[j];
      if (x <= budget) {
        budget -= x;
        pos = j - lo + 1;
      } else {
        pos = j - lo + budget / x;
        budget = 0.0;
      }
    }
    st.v0 = std::min(pos, static_cast<double>(m)) * vgrid.dv();
    if (out.data() != in.data()) std::copy(in.begin(), in.end(), out.begin());
    return st;
  }

  for (int j = 0; j < lo; ++j) emit(j, 1.0);

  double pos = 0.0;
  if (st.case_tag == ProjectionCase::case1) {
    // Fill holes from below until the tail mass is absorbed; the holes under
    // n eps take the first H of it.
    double need = std::max(0.0, tail - holes);
    int j = lo;
    for (; j < hi && need > 0.0; ++j) {
      const double deficit = 1.0 - in[j];
      if (need >= deficit) {
        need -= deficit;
        emit(j, 1.0);
        pos = j - lo + 1;
      } else {
        pos = j - lo + need / deficit;
        emit(j, in[j] + need);
        need = 0.0;
      }
    }
    for (; j < hi; ++j) emit(j, in[j]);
  } else {
    // Keep band content from below until the band holds rho - n eps.
    double budget = band_target;
    for (int j = lo; j < hi; ++j) {
      const double x = in[j];
      if (budget <= 0.0) {
        emit(j, 0.0);
      } else if (x <= budget) {
        budget -= x;
        pos = j - lo + 1;
        emit(j, x);
      } else {
        pos = j - lo + budget / x;
        emit(j, budget);
        budget = 0.0;
      }
    }
  }
  for (int j = hi; j < nv; ++j) emit(j, 0.0);

  st.v0 = std::min(pos, static_cast<double>(m)) * vgrid.dv();
  st.defect_l1 = defect * vgrid.dv();
  st.entropy_drop = drop * vgrid.dv();
  return st;
}

ProjectionOutcome project_slice(std::span<const double> slice, const VelocityGrid& vgrid,
                                CaseRule rule) {
  ProjectionOutcome outcome;
  outcome.profile.resize(slice.size());
  outcome.stats = project_slice_into(slice, outcome.profile, vgrid, rule);
  return outcome;
}

ProjectionSummary project_field_in_place(KineticField& f, CaseRule rule) {
  ProjectionSummary summary;
  const double volume = f.sgrid().cell_volume();
  for (std::size_t c = 0; c < f.n_spatial(); ++c) {
    auto s = f.slice(c);
    const SliceStats st = project_slice_into(s, s, f.vgrid(), rule);
    summary.defect_l1 += st.defect_l1 * volume;
    summary.entropy_drop += st.entropy_drop * volume;
    switch (st.case_tag) {
      case ProjectionCase::case1: ++summary.case1; break;
      case ProjectionCase::case2: ++summary.case2; break;
      case ProjectionCase::identity: ++summary.identity; break;
    }
  }
  return summary;
}

std::pair<KineticField, ProjectionSummary> project_field(const KineticField& f, CaseRule rule) {
  KineticField out = f;
  ProjectionSummary summary = project_field_in_place(out, rule);
  return {std::move(out), summary};
}

double total_entropy(const KineticField& f) {
  double acc = 0.0;
  for (std::size_t c = 0; c < f.n_spatial(); ++c) acc += entropy_moment(f.slice(c), f.vgrid());
  return acc * f.sgrid().cell_volume();
}

}  // namespace kinshock
