#include "kinshock/property_suite.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "kinshock/flux.hpp"
#include "kinshock/kinetic_state.hpp"
#include "kinshock/oracles.hpp"
#include "kinshock/scheme.hpp"
#include "kinshock/transport.hpp"

namespace kinshock {

namespace {

constexpr double kL = 1.0;
constexpr double kSlack = 1e-10;

class Tally {
 public:
  Tally(std::string suite, std::string property, double tolerance)
      : tolerance_(tolerance) {
    row_.suite = std::move(suite);
    row_.property = std::move(property);
    row_.worst_margin = std::numeric_limits<double>::infinity();
  }

  template <class Describe>
  void record(double margin, Describe&& describe) {
    ++row_.cases;
    row_.worst_margin = std::min(row_.worst_margin, margin);
    if (!(margin >= -tolerance_)) fail(describe());
  }

  void fail(const std::string& counterexample) {
    ++row_.failures;
    if (row_.counterexample.empty()) row_.counterexample = counterexample;
  }

  void error(const std::string& counterexample, const std::exception& e) {
    ++row_.cases;
    fail(counterexample + ";error=" + e.what());
  }

  PropertyRow take() && {
    if (row_.cases == 0) row_.worst_margin = 0.0;
    return std::move(row_);
  }

 private:
  PropertyRow row_;
  double tolerance_;
};

std::string format_values(std::span<const double> values) {
  std::ostringstream out;
  out << std::setprecision(17) << '[';
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? " " : "") << values[i];
  out << ']';
  return out.str();
}

std::string describe_slice(const VelocityGrid& vg, std::span<const double> f) {
  std::ostringstream out;
  out << std::setprecision(17) << "m=" << vg.cells_per_band() << ";eps=" << vg.eps()
      << ";f=" << format_values(f);
  return out.str();
}

double l1(std::span<const double> a, std::span<const double> b, double dv) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += std::abs(a[j] - b[j]);
  return s * dv;
}

// Cell averages of a random non-decreasing step function on [0, L].
std::vector<double> random_step_weight(std::mt19937_64& rng, const VelocityGrid& vg) {
  std::uniform_int_distribution<int> n_jumps(1, 6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int jumps = n_jumps(rng);
  std::vector<std::pair<double, double>> steps;
  for (int k = 0; k < jumps; ++k) steps.emplace_back(unit(rng) * kL, unit(rng));
  const double offset = unit(rng) - 0.5;
  std::vector<double> w(vg.n_cells(), offset);
  for (int j = 0; j < vg.n_cells(); ++j) {
    const double lo = vg.lower(j);
    const double hi = vg.upper(j);
    for (const auto& [at, height] : steps) {
      const double covered = std::clamp((hi - at) / (hi - lo), 0.0, 1.0);
      w[j] += height * covered;
    }
  }
  return w;
}

std::vector<double> random_profile(std::mt19937_64& rng, const VelocityGrid& vg) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = vg.n_cells();
  std::vector<double> f(n, 0.0);
  switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
    case 0:
      for (auto& x : f) x = unit(rng);
      break;
    case 1: {
      const double p = unit(rng);
      for (auto& x : f) x = unit(rng) < p ? 1.0 : 0.0;
      break;
    }
    case 2: {
      // Equilibrium indicator with a few cells disturbed.
      const double level = unit(rng) * n;
      for (int j = 0; j < n; ++j) f[j] = std::clamp(level - j, 0.0, 1.0);
      const int swaps = std::uniform_int_distribution<int>(1, std::max(1, n / 4))(rng);
      std::uniform_int_distribution<int> cell(0, n - 1);
      for (int s = 0; s < swaps; ++s) f[cell(rng)] = unit(rng);
      break;
    }
    case 3: {
      int j = 0;
      while (j < n) {
        const int len = std::uniform_int_distribution<int>(1, std::max(1, n / 3))(rng);
        const double v = unit(rng) < 0.5 ? std::round(unit(rng)) : unit(rng);
        for (int k = 0; k < len && j < n; ++k, ++j) f[j] = v;
      }
      break;
    }
    default:
      for (auto& x : f) x = 0.5 * std::uniform_int_distribution<int>(0, 2)(rng);
      break;
  }
  return f;
}

VelocityGrid random_vgrid(std::mt19937_64& rng, int max_cells) {
  static constexpr int kRatios[] = {2, 4, 8};
  std::vector<int> ratios;
  for (int m : kRatios)
    if (m <= max_cells) ratios.push_back(m);
  const int m = ratios[std::uniform_int_distribution<std::size_t>(0, ratios.size() - 1)(rng)];
  const int bands = std::uniform_int_distribution<int>(1, max_cells / m)(rng);
  return VelocityGrid(kL, kL / bands, m);
}

struct ProjectionTallies {
  Tally mass{"projection", "mass", 1e-12 * kL};
  Tally control{"projection", "control", kSlack};
  Tally convex{"projection", "convex", kSlack};
  Tally optimality{"projection", "optimality", kSlack};
  Tally oracle{"projection", "oracle_equivalence", kSlack};
  Tally idempotence{"projection", "idempotence", 0.0};
  Tally contract{"projection", "contract", kSlack};
};

struct SliceResult {
  std::vector<double> m;
  bool ok = false;
};

// Single-profile checks; returns the projection for reuse in pair checks.
SliceResult check_slice(ProjectionTallies& t, std::mt19937_64* rng, int weights,
                        std::span<const double> f, const VelocityGrid& vg, CaseRule rule) {
  const double dv = vg.dv();
  const double eps = vg.eps();
  auto describe = [&] { return describe_slice(vg, f); };
  SliceResult out;
  try {
    out.m = project_slice(f, vg, rule).profile;
  } catch (const std::exception& e) {
    t.mass.error(describe(), e);
    return out;
  }
  out.ok = true;
  const auto& m = out.m;
  const double rho = slice_mass(f, dv);
  t.mass.record(-std::abs(slice_mass(m, dv) - rho), describe);

  std::vector<double> diff(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) diff[j] = f[j] - m[j];
  const double defect = l1(f, m, dv);
  t.control.record((2.0 / eps) * entropy_moment(diff, vg) - defect, describe);

  if (rng != nullptr) {
    for (int k = 0; k < weights; ++k) {
      const auto w = random_step_weight(*rng, vg);
      double s = 0.0;
      for (std::size_t j = 0; j < f.size(); ++j) s += w[j] * diff[j];
      t.convex.record(s * dv, [&] { return describe() + ";eta=" + format_values(w); });
    }
  }

  const double value = entropy_moment(m, vg);
  const double rho_in = std::clamp(rho, 0.0, kL);
  t.optimality.record(-std::abs(value - minimum_value(rho_in, eps, kL)),
                      describe);
  t.oracle.record(-std::abs(value - oracles::greedy_minimizer(rho_in, vg).value), describe);

  try {
    const auto again = project_slice(m, vg, rule);
    const bool identity = again.stats.case_tag == ProjectionCase::identity;
    t.idempotence.record(identity ? -l1(again.profile, m, dv) : -1.0, describe);
  } catch (const std::exception& e) {
    t.idempotence.error(describe(), e);
  }
  return out;
}

void contract_pair(Tally& t, const VelocityGrid& vg, std::span<const double> f1,
                   std::span<const double> f2, std::span<const double> m1,
                   std::span<const double> m2) {
  const double dv = vg.dv();
  t.record(l1(f1, f2, dv) - l1(m1, m2, dv), [&] {
    return describe_slice(vg, f1) + ";f2=" + format_values(f2);
  });
}

void projection_random(ProjectionTallies& t, std::mt19937_64& rng, int profiles, int max_cells,
                       CaseRule rule) {
  for (int i = 0; i < profiles; ++i) {
    const VelocityGrid vg = random_vgrid(rng, max_cells);
    const auto f = random_profile(rng, vg);
    check_slice(t, &rng, 100, f, vg, rule);
  }
  // contract:1 on {0,1}-valued pairs sharing a grid.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < profiles; ++i) {
    const VelocityGrid vg = random_vgrid(rng, max_cells);
    const int n = vg.n_cells();
    std::vector<double> f1(n), f2(n);
    const double p1 = unit(rng);
    const double p2 = unit(rng);
    const double flip = unit(rng) * 0.3;
    for (int j = 0; j < n; ++j) {
      f1[j] = unit(rng) < p1 ? 1.0 : 0.0;
      f2[j] = unit(rng) < 0.5 ? (unit(rng) < flip ? 1.0 - f1[j] : f1[j])
                              : (unit(rng) < p2 ? 1.0 : 0.0);
    }
    try {
      const auto m1 = project_slice(f1, vg, rule).profile;
      const auto m2 = project_slice(f2, vg, rule).profile;
      contract_pair(t.contract, vg, f1, f2, m1, m2);
    } catch (const std::exception& e) {
      t.contract.error(describe_slice(vg, f1) + ";f2=" + format_values(f2), e);
    }
  }
}

// All {0,1} profiles on every grid with at most max_cells cells, with
// contract:1 over all pairs on each grid.
void projection_exhaustive_binary(ProjectionTallies& t, int max_cells, CaseRule rule) {
  for (int m : {2, 3, 4, 6}) {
    for (int bands = 1; bands * m <= max_cells; ++bands) {
      const VelocityGrid vg(kL, kL / bands, m);
      const int n = vg.n_cells();
      const std::uint32_t count = 1u << n;
      std::vector<double> projected(static_cast<std::size_t>(count) * n);
      std::vector<double> f(n);
      for (std::uint32_t bits = 0; bits < count; ++bits) {
        for (int j = 0; j < n; ++j) f[j] = (bits >> j) & 1u ? 1.0 : 0.0;
        const auto r = check_slice(t, nullptr, 0, f, vg, rule);
        if (r.ok) std::copy(r.m.begin(), r.m.end(), projected.begin() + bits * n);
      }
      const double dv = vg.dv();
      for (std::uint32_t a = 0; a < count; ++a) {
        const double* ma = projected.data() + static_cast<std::size_t>(a) * n;
        for (std::uint32_t b = a + 1; b < count; ++b) {
          const double* mb = projected.data() + static_cast<std::size_t>(b) * n;
          double out = 0.0;
          for (int j = 0; j < n; ++j) out += std::abs(ma[j] - mb[j]);
          const double margin = (std::popcount(a ^ b) - out) * dv;
          t.contract.record(margin, [&] {
            std::vector<double> fa(n), fb(n);
            for (int j = 0; j < n; ++j) {
              fa[j] = (a >> j) & 1u;
              fb[j] = (b >> j) & 1u;
            }
            return describe_slice(vg, fa) + ";f2=" + format_values(fb);
          });
        }
      }
    }
  }
}

// All {0, 1/2, 1} profiles on grids with at most max_cells cells, compared
// against the greedy oracle and the closed-form minimum.
void projection_exhaustive_ternary(ProjectionTallies& t, int max_cells, CaseRule rule) {
  for (int m : {2, 3, 4}) {
    for (int bands = 1; bands * m <= max_cells; ++bands) {
      const VelocityGrid vg(kL, kL / bands, m);
      const int n = vg.n_cells();
      std::vector<int> digits(n, 0);
      std::vector<double> f(n, 0.0);
      while (true) {
        for (int j = 0; j < n; ++j) f[j] = 0.5 * digits[j];
        check_slice(t, nullptr, 0, f, vg, rule);
        int j = 0;
        while (j < n && digits[j] == 2) digits[j++] = 0;
        if (j == n) break;
        ++digits[j];
      }
    }
  }
}

FluxModel random_flux(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (dim == 2) {
    const double w[] = {unit(rng) + 0.1, unit(rng) - 0.5};
    return builtin_flux(FluxFamily::burgers, w, kL);
  }
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0:
      return builtin_flux(FluxFamily::burgers, std::span<const double>{}, kL);
    case 1: {
      const double c[] = {2.0 * unit(rng) - 1.0};
      return builtin_flux(FluxFamily::linear, c, kL);
    }
    default: {
      const double c[] = {1.0, -2.0};  // A'(v) = 1 - 2v changes sign
      return builtin_flux(FluxFamily::custom_polynomial, c, kL);
    }
  }
}

SpatialGrid random_sgrid(std::mt19937_64& rng, int dim, int max_extent) {
  std::uniform_int_distribution<int> extent(3, max_extent);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (dim == 2) return SpatialGrid::plane(extent(rng), extent(rng), 0.5 + unit(rng), 0.5 + unit(rng),
                                          BoundaryCondition::periodic);
  return SpatialGrid::line(extent(rng), 0.5 + unit(rng), BoundaryCondition::periodic);
}

KineticField random_field(std::mt19937_64& rng, const VelocityGrid& vg, const SpatialGrid& sg) {
  KineticField f(vg, sg);
  for (std::size_t c = 0; c < f.n_spatial(); ++c) {
    const auto p = random_profile(rng, vg);
    std::copy(p.begin(), p.end(), f.slice(c).begin());
  }
  return f;
}

std::string describe_field(const KineticField& f) {
  std::ostringstream out;
  out << std::setprecision(17) << "dim=" << f.sgrid().dim() << ";nx=" << f.sgrid().extent(0);
  if (f.sgrid().dim() == 2) out << ";ny=" << f.sgrid().extent(1);
  out << ";m=" << f.vgrid().cells_per_band() << ";eps=" << f.vgrid().eps()
      << ";f=" << format_values(f.values());
  return out.str();
}

void transport_suite(std::vector<PropertyRow>& rows, std::mt19937_64& rng, int cases,
                     int max_extent, int max_cells) {
  Tally range("transport", "max_principle", 0.0);
  Tally conservation("transport", "conservation", 0.0);
  Tally equivariance("transport", "shift_equivariance", 1e-12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < cases; ++i) {
    const int dim = unit(rng) < 0.3 ? 2 : 1;
    const VelocityGrid vg = random_vgrid(rng, max_cells);
    const SpatialGrid sg = random_sgrid(rng, dim, max_extent);
    const FluxModel flux = random_flux(rng, dim);
    const double h = max_stable_dt(flux, sg, 0.05 + 0.95 * unit(rng), 0.1);
    const TransportConfig cfg = make_transport_config(TransportScheme::upwind, h, flux, sg);
    const KineticField f = random_field(rng, vg, sg);
    auto describe = [&] { return describe_field(f); };
    try {
      const KineticField g = transport_step(f, flux, cfg);
      range.record(-g.range_violation(), describe);

      double worst = std::numeric_limits<double>::infinity();
      const double dv = vg.dv();
      for (int j = 0; j < vg.n_cells(); ++j) {
        double before = 0.0;
        double after = 0.0;
        for (std::size_t c = 0; c < f.n_spatial(); ++c) {
          before += f.slice(c)[j];
          after += g.slice(c)[j];
        }
        const double scale = std::max(before, 1.0) * dv * sg.cell_volume();
        worst = std::min(worst, 1e-12 * scale - std::abs(after - before) * dv * sg.cell_volume());
      }
      conservation.record(worst, describe);

      const int axis = std::uniform_int_distribution<int>(0, dim - 1)(rng);
      const int cells = std::uniform_int_distribution<int>(-sg.extent(axis), sg.extent(axis))(rng);
      const double d = translate_distance(transport_step(shifted(f, axis, cells), flux, cfg),
                                          shifted(g, axis, cells));
      equivariance.record(-d, describe);
    } catch (const std::exception& e) {
      range.error(describe(), e);
    }
  }
  rows.push_back(std::move(range).take());
  rows.push_back(std::move(conservation).take());
  rows.push_back(std::move(equivariance).take());
}

void scheme_suite(std::vector<PropertyRow>& rows, std::mt19937_64& rng, int cases, int max_extent,
                  int max_cells, CaseRule rule) {
  Tally invariants("scheme", "invariants", 0.0);
  Tally translation("scheme", "translation_nonexpansion", kSlack);
  Tally comparison("scheme", "comparison", kSlack);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < cases; ++i) {
    const int dim = unit(rng) < 0.25 ? 2 : 1;
    const VelocityGrid vg = random_vgrid(rng, max_cells);
    const SpatialGrid sg = random_sgrid(rng, dim, max_extent);
    const FluxModel flux = random_flux(rng, dim);
    const double h = max_stable_dt(flux, sg, 0.3 + 0.7 * unit(rng), 0.1);
    const TransportConfig cfg = make_transport_config(TransportScheme::upwind, h, flux, sg);
    const int steps = std::uniform_int_distribution<int>(1, 20)(rng);
    RunOptions options;
    options.t_final = steps * h;
    options.case_rule = rule;

    KineticField a = random_field(rng, vg, sg);
    KineticField b = a;
    for (auto& x : b.values()) x = std::max(x, unit(rng) < 0.5 ? unit(rng) : 0.0);
    auto describe = [&] { return describe_field(a); };
    try {
      const RunResult ra = run(a, flux, cfg, options);
      invariants.record(0.0, describe);
      const int axis = std::uniform_int_distribution<int>(0, dim - 1)(rng);
      const int cells = std::uniform_int_distribution<int>(1, sg.extent(axis) - 1)(rng);
      const double before = translate_distance(shifted(a, axis, cells), a);
      const double after = translate_distance(shifted(ra.field, axis, cells), ra.field);
      translation.record(before - after, describe);

      const RunResult rb = run(b, flux, cfg, options);
      const Moments ma = moments(ra.field, flux);
      const Moments mb = moments(rb.field, flux);
      double worst = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < ma.rho.size(); ++c) worst = std::min(worst, mb.rho[c] - ma.rho[c]);
      comparison.record(worst, [&] { return describe() + ";upper=" + format_values(b.values()); });
    } catch (const InvariantViolation& e) {
      invariants.error(describe(), e);
    } catch (const std::exception& e) {
      invariants.error(describe(), e);
    }
  }
  rows.push_back(std::move(invariants).take());
  rows.push_back(std::move(translation).take());
  rows.push_back(std::move(comparison).take());
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

SuiteSize parse_suite_size(std::string_view name) {
  if (name == "tiny") return SuiteSize::tiny;
  if (name == "full") return SuiteSize::full;
  throw std::invalid_argument("unknown suite size '" + std::string(name) + "'");
}

bool PropertyReport::passed() const { return total_failures() == 0; }

std::size_t PropertyReport::total_failures() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.failures;
  return n;
}

const PropertyRow* PropertyReport::find(std::string_view suite, std::string_view property) const {
  for (const auto& r : rows)
    if (r.suite == suite && r.property == property) return &r;
  return nullptr;
}

void PropertyReport::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << std::setprecision(17) << "suite,property,cases,failures,worst_margin,counterexample\n";
  for (const auto& r : rows) {
    out << r.suite << ',' << r.property << ',' << r.cases << ',' << r.failures << ','
        << r.worst_margin << ',' << csv_field(r.counterexample) << '\n';
  }
}

PropertyReport run_property_suite(const PropertyOptions& options) {
  const bool tiny = options.sizes == SuiteSize::tiny;
  std::mt19937_64 rng(options.seed);

  ProjectionTallies t;
  projection_random(t, rng, tiny ? 500 : 10000, tiny ? 9 : 512, options.rule);
  if (options.exhaustive) {
    projection_exhaustive_binary(t, tiny ? 9 : 12, options.rule);
    projection_exhaustive_ternary(t, 9, options.rule);
  }

  PropertyReport report;
  for (Tally* tally : {&t.mass, &t.control, &t.convex, &t.contract, &t.optimality, &t.oracle,
                       &t.idempotence})
    report.rows.push_back(std::move(*tally).take());

  transport_suite(report.rows, rng, tiny ? 20 : 300, tiny ? 8 : 32, tiny ? 8 : 32);
  scheme_suite(report.rows, rng, tiny ? 6 : 60, tiny ? 8 : 24, tiny ? 8 : 16, options.rule);
  return report;
}

}  // namespace kinshock
