#pragma once

// Command-line front end.  Exit codes: 0 verification passed, 1 a check
// failed, 2 usage error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qweyl/report.hpp"

namespace qweyl {

enum ExitCode { exit_pass = 0, exit_failure = 1, exit_usage = 2 };

/// Relative output paths resolve against QWEYL_OUTPUT_DIR when it is set.
inline std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative())
    if (const char* dir = std::getenv("QWEYL_OUTPUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
  return p;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  std::string q_special;
  CLI::App app{"Exact and truncated computations for the q-deformed Weyl realization"};
  app.name("qweyl");
  app.fallthrough();
  app.require_subcommand(1, 1);
  app.add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "latex"}))
      ->capture_default_str();
  app.add_option("--output", c.output, "Write the report to this file instead of stdout");

  auto* verify = app.add_subcommand("verify-aq", "Check the defining relations on the realized operators");
  verify->add_option("--mode", c.mode, "series, numeric or both")
      ->check(CLI::IsMember({"series", "numeric", "both"}))
      ->capture_default_str();
  verify->add_option("--order", c.order, "Truncation order in theta")->capture_default_str();
  verify->add_option("--theta", c.thetas, "Numeric theta value (repeatable)");
  verify->add_option("--cutoff", c.cutoff, "Maximum exponent of the test monomials")->capture_default_str();
  verify->add_option("--tol", c.tol, "Relative tolerance for numeric checks")->capture_default_str();

  auto* expand = app.add_subcommand("expand", "Expand a building block as a truncated theta series");
  expand->add_option("target", c.target, "beta, qpower, X, dX or P")
      ->required()
      ->check(CLI::IsMember({"beta", "qpower", "X", "dX", "P"}));
  expand->add_option("--coord", c.coord, "Coordinate index 1-3")->capture_default_str();
  expand->add_option("--order", c.order, "Truncation order in theta")->capture_default_str();
  expand->add_option("--denominator", c.denominator, "exact or first-order")
      ->check(CLI::IsMember({"exact", "first-order"}))
      ->capture_default_str();

  auto* derive = app.add_subcommand("derive", "Free-particle momentum, gauge potential or magnetic field");
  derive->add_option("stage", c.target, "momentum, gauge or bfield")
      ->required()
      ->check(CLI::IsMember({"momentum", "gauge", "bfield"}));
  derive->add_option("--order", c.order, "Truncation order in theta")->capture_default_str();
  derive->add_option("--denominator", c.denominator, "exact or first-order")
      ->check(CLI::IsMember({"exact", "first-order"}))
      ->capture_default_str();

  auto* spq6 = app.add_subcommand("check-spq6", "Check the Sp_q(6) covariance relations");
  spq6->add_flag("--mutate-r", c.mutate_r, "Perturb one R-matrix entry");
  auto* special_opt = spq6->add_option("--q-special", q_special, "Also evaluate residuals at this q");

  auto* conv = app.add_subcommand("oracle-convergence", "Log-log slopes of truncation error against the exact action");
  conv->add_option("--order", c.orders, "Truncation order (repeatable, default 1 2 3)");
  conv->add_option("--theta", c.thetas, "Theta samples (repeatable, default 0.1 0.01 0.001)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_usage;
  }
  c.command = app.get_subcommands().front()->get_name();
  if (special_opt->count() > 0) c.q_special = q_special;

  Json report;
  std::string text;
  try {
    report = run_command(c);
    text = render_report(report, c.format);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  }
  if (c.output.empty()) {
    out << text;
  } else {
    const auto path = resolve_output(c.output);
    std::ofstream file(path);
    if (!file) {
      err << "cannot write " << path.string() << "\n";
      return exit_usage;
    }
    file << text;
  }
  return report["pass"].get<bool>() ? exit_pass : exit_failure;
}

}  // namespace qweyl
