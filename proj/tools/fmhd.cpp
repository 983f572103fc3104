// Command-line entry point: run, sweep, check, resume, report.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fmhd/errors.hpp"
#include "fmhd/harness/config.hpp"
#include "fmhd/harness/driver.hpp"
#include "fmhd/harness/identity_suite.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kBlowUp = 3;
constexpr int kIdentityFailure = 4;

void print_spec(const fmhd::RunSpec& spec) {
  std::cout << "variant = " << fmhd::variant_name(spec.system.variant) << ", alpha = " << spec.system.alpha
            << ", beta = " << spec.system.beta << ", gamma = " << spec.system.gamma
            << ", g = " << (spec.system.g ? spec.system.g->name() : "none") << ", n = " << spec.grid_n << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularized MHD pseudo-spectral solver"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Run one simulation");
  run_cmd->add_option("config", config_path, "Config file")->required();

  std::vector<std::string> axes;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep_cmd->add_option("config", config_path, "Base config file")->required();
  sweep_cmd->add_option("--axis", axes, "name=lo:hi:step or name=v1,v2,... (alpha, beta, gamma)")->required();

  auto* check_cmd = app.add_subcommand("check", "Evaluate the identity and property suite");
  check_cmd->add_option("config", config_path, "Config file")->required();

  std::string checkpoint;
  double t_end = 0.0;
  std::string resume_config, resume_out;
  auto* resume_cmd = app.add_subcommand("resume", "Continue a run from a checkpoint");
  resume_cmd->add_option("checkpoint", checkpoint, "Checkpoint file")->required();
  resume_cmd->add_option("--t-end", t_end, "Final time")->required();
  resume_cmd->add_option("--config", resume_config, "Config of the original run");
  resume_cmd->add_option("--out", resume_out, "Output directory (default: <checkpoint dir>/resumed)");

  std::string report_dir;
  auto* report_cmd = app.add_subcommand("report", "Aggregate the time series under a directory");
  report_cmd->add_option("dir", report_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  const fmhd::RunOptions options{true, &std::cout};
  try {
    if (*run_cmd) {
      const auto spec = fmhd::load_config(config_path);
      print_spec(spec);
      const auto outcome = fmhd::run_simulation(spec, options);
      std::cout << "output: " << spec.output_dir.string() << '\n';
      return outcome.summary.blowup ? kBlowUp : 0;
    }
    if (*sweep_cmd) {
      const auto spec = fmhd::load_config(config_path);
      std::vector<fmhd::SweepAxis> parsed;
      for (const auto& a : axes) parsed.push_back(fmhd::parse_axis(a));
      print_spec(spec);
      const auto cells = fmhd::sweep(spec, parsed, options);
      int blowups = 0, errors = 0;
      for (const auto& c : cells) {
        blowups += c.status == "blowup";
        errors += c.status == "error";
      }
      std::cout << cells.size() << " cells, " << blowups << " blow-ups, " << errors << " errors; summary in "
                << (spec.output_dir / "sweep_summary.csv").string() << '\n';
      return blowups ? kBlowUp : 0;
    }
    if (*check_cmd) {
      const auto spec = fmhd::load_config(config_path);
      print_spec(spec);
      std::cout << "covered_regime = " << (spec.system.covered_regime() ? "true" : "false") << " ("
                << spec.system.regime_condition() << ")\n";
      bool ok = true;
      for (const auto& r : fmhd::run_identity_suite(spec)) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        ok = ok && r.pass;
      }
      return ok ? 0 : kIdentityFailure;
    }
    if (*resume_cmd) {
      std::optional<std::filesystem::path> cfg, out;
      if (!resume_config.empty()) cfg = resume_config;
      if (!resume_out.empty()) out = resume_out;
      const auto outcome = fmhd::resume_simulation(checkpoint, t_end, cfg, out, options);
      return outcome.summary.blowup ? kBlowUp : 0;
    }
    if (*report_cmd) {
      std::cout << fmhd::report_directory(report_dir);
      return 0;
    }
  } catch (const fmhd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const fmhd::BlowUpError& e) {
    std::cerr << "blow-up at t = " << e.time() << ": " << e.what() << '\n';
    return kBlowUp;
  } catch (const fmhd::CheckpointError& e) {
    std::cerr << "checkpoint error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
