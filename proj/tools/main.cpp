// SPDX-License-Identifier: Apache-2.0
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "runner.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  bool have_seed = false;
  std::uint64_t seed = 0;
  bool have_trials = false;
  std::size_t trials = 0;
  std::string regime;
  swmimo::runner::RunOptions run;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "scenario config file (INI)");
  cmd->add_option("--set", args.overrides, "override, section.key=value (repeatable)");
  cmd->add_option("--seed", args.seed, "master seed")->each([&](const std::string&) {
    args.have_seed = true;
  });
  cmd->add_option("--trials", args.trials, "Monte Carlo trials")
      ->each([&](const std::string&) { args.have_trials = true; });
  cmd->add_option("--regime", args.regime, "coupling regime: tight|weak|decoupled");
  cmd->add_option("--out", args.run.out_dir, "output directory");
  cmd->add_flag("--svg", args.run.svg, "also render SVG plots");
}

swmimo::ScenarioConfig resolve_config(const CommonArgs& args) {
  swmimo::ScenarioConfig cfg;
  if (!args.config_path.empty()) cfg = swmimo::load_config(args.config_path);
  for (const std::string& assignment : args.overrides)
    swmimo::apply_override(cfg, assignment);
  if (args.have_seed) cfg.seed = args.seed;
  if (args.have_trials) cfg.trials = args.trials;
  if (!args.regime.empty()) cfg.regime = swmimo::parse_regime(args.regime);
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"super-wideband coupled-array channel simulator"};
  app.require_subcommand(0, 1);
  bool print_schema = false;
  app.add_flag("--schema", print_schema, "print the CSV column contract and exit");

  CommonArgs snr_args, cdf_args, steer_args, corr_args, val_args;
  CLI::App* snr = app.add_subcommand("snr", "eigenmode SNR vs frequency");
  add_common(snr, snr_args);
  CLI::App* cdf = app.add_subcommand("power-cdf", "scattered power CDFs");
  add_common(cdf, cdf_args);
  std::vector<double> cdf_freqs;
  cdf->add_option("--freq", cdf_freqs, "probe frequency in Hz (repeatable)");
  CLI::App* steer = app.add_subcommand("steering", "equivalent steering profile");
  add_common(steer, steer_args);
  double steer_freq = 1e8;
  steer->add_option("--freq", steer_freq, "probe frequency in Hz");
  CLI::App* corr = app.add_subcommand("corr-row", "equivalent correlation first row");
  add_common(corr, corr_args);
  std::vector<double> corr_freqs;
  corr->add_option("--freq", corr_freqs, "probe frequency in Hz (repeatable)");
  CLI::App* val = app.add_subcommand("validate", "run the invariant suite");
  add_common(val, val_args);

  CLI11_PARSE(app, argc, argv);

  if (print_schema) {
    std::cout << swmimo::runner::schema_text();
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  }

  try {
    if (snr->parsed()) {
      swmimo::runner::run_snr(resolve_config(snr_args), snr_args.run);
    } else if (cdf->parsed()) {
      const swmimo::ScenarioConfig cfg = resolve_config(cdf_args);
      if (cdf_freqs.empty()) cdf_freqs = {5e9, cfg.f_stop_hz};
      swmimo::runner::run_power_cdf(cfg, cdf_freqs, cdf_args.run);
    } else if (steer->parsed()) {
      swmimo::runner::run_steering(resolve_config(steer_args), steer_freq, steer_args.run);
    } else if (corr->parsed()) {
      const swmimo::ScenarioConfig cfg = resolve_config(corr_args);
      if (corr_freqs.empty()) corr_freqs = {5e9, cfg.f_stop_hz};
      swmimo::runner::run_corr_row(cfg, corr_freqs, corr_args.run);
    } else if (val->parsed()) {
      const int failures = swmimo::runner::validate(resolve_config(val_args), std::cout);
      if (failures > 0) {
        std::cerr << failures << " invariant check(s) failed\n";
        return 2;
      }
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
