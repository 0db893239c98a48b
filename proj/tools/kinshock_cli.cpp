#include <CLI11.hpp>

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "kinshock/config.hpp"
#include "kinshock/property_suite.hpp"
#include "kinshock/runner.hpp"
#include "kinshock/scheme.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInvariant = 2;

std::filesystem::path output_for(const kinshock::ScenarioConfig& cfg,
                                 const std::string& override_dir) {
  return kinshock::resolve_output_dir(override_dir.empty() ? cfg.output_dir
                                                           : std::filesystem::path(override_dir));
}

void print_summary(const std::vector<kinshock::ScenarioSummary>& rows) {
  std::cout << kinshock::summary_header() << '\n';
  for (const auto& r : rows) std::cout << kinshock::summary_row(r) << '\n';
}

int print_report(const kinshock::PropertyReport& report) {
  std::cout << std::left << std::setw(12) << "suite" << std::setw(28) << "property"
            << std::setw(12) << "cases" << std::setw(10) << "failures" << "worst_margin\n";
  for (const auto& r : report.rows) {
    std::cout << std::setw(12) << r.suite << std::setw(28) << r.property << std::setw(12)
              << r.cases << std::setw(10) << r.failures << r.worst_margin << '\n';
    if (r.failures > 0) std::cout << "  counterexample: " << r.counterexample << '\n';
  }
  return report.passed() ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kinshock: transport-projection kinetic solver for scalar conservation laws"};
  app.require_subcommand(1);
  app.footer("Output directories are resolved under $KINSHOCK_OUTPUT_ROOT when it is set.");

  std::string config_path;
  std::string output_dir;

  auto* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("config", config_path, "Scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--output", output_dir, "Output directory (overrides output_dir)");

  std::vector<double> eps_list;
  auto* sweep = app.add_subcommand("sweep", "Run a scenario for a list of eps values");
  sweep->add_option("config", config_path, "Scenario file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--eps", eps_list, "Comma-separated eps values (default: eps_list)")
      ->delimiter(',');
  sweep->add_option("-o,--output", output_dir, "Output root");

  kinshock::PropertyOptions verify_options;
  verify_options.exhaustive = false;
  bool inject_bug = false;
  std::string sizes = "full";
  std::string report_path;
  auto* verify = app.add_subcommand("verify", "Run the randomized and exhaustive property suites");
  verify->add_option("--seed", verify_options.seed, "Random seed");
  verify->add_flag("--exhaustive", verify_options.exhaustive, "Add exhaustive enumerations");
  verify->add_flag("--inject-bug", inject_bug, "Flip the projection case rule (harness self-test)");
  verify->add_option("--sizes", sizes, "tiny or full")->check(CLI::IsMember({"tiny", "full"}));
  verify->add_option("-o,--output", report_path, "CSV report path");

  auto* table = app.add_subcommand("riemann-table", "Compare a Burgers Riemann run to the exact solution");
  table->add_option("config", config_path, "Scenario file")->required()->check(CLI::ExistingFile);
  table->add_option("-o,--output", output_dir, "Output directory (overrides output_dir)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run) {
      const auto cfg = kinshock::parse_config_file(config_path);
      print_summary({kinshock::run_scenario(cfg, output_for(cfg, output_dir))});
    } else if (*sweep) {
      const auto cfg = kinshock::parse_config_file(config_path);
      const auto& eps = eps_list.empty() ? cfg.eps_list : eps_list;
      print_summary(kinshock::run_sweep(cfg, eps, output_for(cfg, output_dir)));
    } else if (*verify) {
      verify_options.sizes = kinshock::parse_suite_size(sizes);
      if (inject_bug) verify_options.rule = kinshock::CaseRule::flipped;
      const auto report = kinshock::run_property_suite(verify_options);
      if (!report_path.empty()) {
        const auto path = kinshock::resolve_output_dir(report_path);
        if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
        report.write_csv(path);
      }
      return print_report(report);
    } else if (*table) {
      const auto cfg = kinshock::parse_config_file(config_path);
      print_summary({kinshock::riemann_table(cfg, output_for(cfg, output_dir))});
    }
  } catch (const kinshock::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
