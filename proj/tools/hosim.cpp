#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hosim/config.hpp"
#include "hosim/experiment.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::string> out;
};

void add_common_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path,
                  "Experiment config file (key = value lines)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", opts.seed,
                  "Master seed (overrides HOSIM_SEED and the config file)");
  cmd->add_option("--trials", opts.trials, "Trials per sweep point");
  cmd->add_option("--out", opts.out, "Output CSV path, '-' for stdout");
}

int run(hosim::ExperimentKind kind, const CommonOptions& opts) {
  hosim::ExperimentConfig cfg;
  if (!opts.config_path.empty()) {
    cfg = hosim::load_config(opts.config_path);
    if (cfg.experiment_from_file && cfg.experiment != kind) {
      throw hosim::ConfigError(
          std::string("config file selects experiment '") +
          hosim::experiment_name(cfg.experiment) +
          "' but the subcommand is '" + hosim::experiment_name(kind) + "'");
    }
  }
  cfg.experiment = kind;

  std::optional<std::string> env_seed;
  if (const char* env = std::getenv("HOSIM_SEED")) env_seed = std::string(env);
  hosim::apply_seed_overrides(cfg, env_seed, opts.seed);

  if (opts.trials) cfg.trials = *opts.trials;
  if (opts.out) cfg.out = *opts.out;

  hosim::validate_config(cfg);
  hosim::run_experiment(cfg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "hosim - handover performance models and simulations for multicast "
      "mobility schemes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", hosim::kToolVersion);

  CommonOptions analytic_opts, handover_opts, mobility_opts;
  CLI::App* analytic =
      app.add_subcommand("analytic", "Closed-form tables over a rho/k grid");
  add_common_options(analytic, analytic_opts);
  CLI::App* handover = app.add_subcommand(
      "handover", "Single-handover packet-loss sweep over router distance");
  add_common_options(handover, handover_opts);
  CLI::App* mobility = app.add_subcommand(
      "mobility", "Honeycomb random-walk prediction outcomes and handover counts");
  add_common_options(mobility, mobility_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analytic->parsed())
      return run(hosim::ExperimentKind::analytic, analytic_opts);
    if (handover->parsed())
      return run(hosim::ExperimentKind::handover, handover_opts);
    if (mobility->parsed())
      return run(hosim::ExperimentKind::mobility, mobility_opts);
  } catch (const std::exception& e) {
    std::cerr << "hosim: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
