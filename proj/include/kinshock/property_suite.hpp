#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "kinshock/entropy_projection.hpp"

namespace kinshock {

// Per-property tally. A case passes when its margin (bound minus measured
// value) is at least -tolerance.
struct PropertyRow {
  std::string suite;
  std::string property;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double worst_margin = 0.0;
  std::string counterexample;  // first failing input, verbatim
};

struct PropertyReport {
  std::vector<PropertyRow> rows;

  bool passed() const;
  std::size_t total_failures() const;
  const PropertyRow* find(std::string_view suite, std::string_view property) const;
  /// suite,property,cases,failures,worst_margin,counterexample
  void write_csv(const std::filesystem::path& path) const;
};

enum class SuiteSize {
  tiny,  // velocity grids of at most 9 cells, few spatial cells
  full,  // 10^4 random profiles on up to 512 velocity cells
};

SuiteSize parse_suite_size(std::string_view name);

struct PropertyOptions {
  std::uint64_t seed = 1;
  SuiteSize sizes = SuiteSize::full;
  bool exhaustive = true;
  CaseRule rule = CaseRule::standard;
};

/// Randomized and exhaustive checks of the projection (mass, control:1,
/// convex:1, contract:1, optimality, oracle equivalence, idempotence), the
/// transport step (maximum principle, conservation, shift equivariance) and
/// short scheme runs (invariants, translation non-expansion, comparison).
PropertyReport run_property_suite(const PropertyOptions& options);

}  // namespace kinshock
