#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "kinshock/kinetic_state.hpp"

namespace kinshock {

/// Staircase entropy weight: k on [k eps, (k + 1) eps). Throws
/// std::out_of_range when v is outside [0, kinetic_bound].
int eta_eps(double v, double eps, double kinetic_bound);

/// Sum over cells of eta_eps(v_j) f_j dv. Exact because eta_eps is constant on
/// every velocity cell.
double entropy_moment(std::span<const double> slice, const VelocityGrid& vgrid);

/// Smallest entropy moment over profiles in [0, 1] with velocity integral rho:
/// eps n (n - 1) / 2 + n (rho - n eps) with n = floor(rho / eps).
double minimum_value(double rho, double eps, double kinetic_bound);

enum class ProjectionCase {
  // Tail above the boundary band outweighs the holes below it: holes are filled
  // up into the band.
  case1,
  // Holes dominate: band content is truncated from above.
  case2,
  // Already a minimizer; returned unchanged.
  identity,
};

/// Selects which branch handles T > H. `flipped` exists only to self-test the
/// property harness and never yields a valid minimizer.
enum class CaseRule { standard, flipped };

struct SliceStats {
  ProjectionCase case_tag = ProjectionCase::identity;
  int band = 0;        // n = floor(rho / eps)
  double v0 = 0.0;     // threshold inside the boundary band, in [0, eps]
  double tail = 0.0;   // T: mass above (n + 1) eps
  double holes = 0.0;  // H: n eps minus the mass below n eps
  double defect_l1 = 0.0;
  double entropy_drop = 0.0;
};

struct ProjectionOutcome {
  std::vector<double> profile;
  SliceStats stats;
};

/// Selected minimizer M_f of the entropy-moment problem at the slice's own
/// mass. Throws std::invalid_argument if any value lies outside [0, 1].
ProjectionOutcome project_slice(std::span<const double> slice, const VelocityGrid& vgrid,
                                CaseRule rule = CaseRule::standard);

/// Allocation-free variant; `out` may alias `in`.
SliceStats project_slice_into(std::span<const double> in, std::span<double> out,
                              const VelocityGrid& vgrid,
                              CaseRule rule = CaseRule::standard);

struct ProjectionSummary {
  double defect_l1 = 0.0;     // integral of |f - M_f| over x and v
  double entropy_drop = 0.0;  // integral of eta_eps (f - M_f) over x and v
  std::size_t case1 = 0;
  std::size_t case2 = 0;
  std::size_t identity = 0;
};

std::pair<KineticField, ProjectionSummary> project_field(const KineticField& f,
                                                         CaseRule rule = CaseRule::standard);

/// In-place projection of every spatial cell.
ProjectionSummary project_field_in_place(KineticField& f,
                                         CaseRule rule = CaseRule::standard);

/// Total entropy moment over x and v.
double total_entropy(const KineticField& f);

}  // namespace kinshock
