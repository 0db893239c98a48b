#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "kinshock/property_suite.hpp"

using namespace kinshock;

TEST(PropertySuite, TinyPasses) {
  PropertyOptions options;
  options.sizes = SuiteSize::tiny;
  const auto report = run_property_suite(options);
  EXPECT_TRUE(report.passed());
  for (const auto& row : report.rows) {
    EXPECT_GT(row.cases, 0u) << row.suite << '/' << row.property;
    EXPECT_EQ(row.failures, 0u) << row.suite << '/' << row.property << ": " << row.counterexample;
  }
  ASSERT_NE(report.find("projection", "contract"), nullptr);
}

TEST(PropertySuite, InjectedBugIsReportedWithCounterexample) {
  PropertyOptions options;
  options.sizes = SuiteSize::tiny;
  options.rule = CaseRule::flipped;
  const auto report = run_property_suite(options);
  EXPECT_FALSE(report.passed());
  const auto* mass = report.find("projection", "mass");
  const auto* contract = report.find("projection", "contract");
  ASSERT_NE(mass, nullptr);
  ASSERT_NE(contract, nullptr);
  EXPECT_TRUE(mass->failures > 0 || contract->failures > 0);
  EXPECT_NE(mass->counterexample.find("f=["), std::string::npos);
}

TEST(PropertySuite, SeedDeterminesReport) {
  PropertyOptions options;
  options.sizes = SuiteSize::tiny;
  options.exhaustive = false;
  options.seed = 42;
  const auto a = run_property_suite(options);
  const auto b = run_property_suite(options);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].cases, b.rows[i].cases);
    EXPECT_EQ(a.rows[i].worst_margin, b.rows[i].worst_margin);
  }
}

TEST(PropertySuite, CsvReport) {
  PropertyOptions options;
  options.sizes = SuiteSize::tiny;
  options.exhaustive = false;
  options.rule = CaseRule::flipped;
  const auto path = std::filesystem::temp_directory_path() / "kinshock_property_report.csv";
  run_property_suite(options).write_csv(path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "suite,property,cases,failures,worst_margin,counterexample");
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 13);
  std::filesystem::remove(path);
  EXPECT_THROW(parse_suite_size("huge"), std::invalid_argument);
}
