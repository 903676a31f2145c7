#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hosim/handover.hpp"

namespace hosim {

enum class ExperimentKind { analytic, handover, mobility };

const char* experiment_name(ExperimentKind kind);
std::optional<ExperimentKind> experiment_from_name(const std::string& name);

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SweepRange {
  std::string variable = "timers.router_distance.mean";
  double start = 0.0;
  double stop = 40.0;
  double step = 5.0;

  std::vector<double> values() const;
};

struct MobilityConfig {
  std::vector<double> rho{0.1, 0.5, 1.0, 2.0, 5.0};
  std::vector<double> k{1.0, 4.0, 9.0};
  double cell_radius = 1.0;
  double speed = 1.0;
};

// Experiment description: line-oriented `key = value` files with dotted
// section names (e.g. `timers.anticipation.mean = 50`), `#` comments.
// Every key has a shipped default, so an empty file is a valid experiment.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::handover;
  std::uint64_t master_seed = 1;
  std::size_t trials = 10000;
  std::string out = "-";
  SweepRange sweep;
  engine::TimerSet timers;
  engine::StreamConfig stream;
  std::vector<engine::Scheme> schemes{engine::Scheme::bt,
                                      engine::Scheme::reactive,
                                      engine::Scheme::predictive};
  MobilityConfig mobility;
  // Set when the file itself named the experiment (must then match the
  // subcommand).
  bool experiment_from_file = false;
};

ExperimentConfig parse_config(std::string_view text,
                              std::string_view source_name = "<config>");
ExperimentConfig load_config(const std::string& path);
void validate_config(const ExperimentConfig& cfg);

// Seed precedence: command-line flag over environment over config file.
void apply_seed_overrides(ExperimentConfig& cfg,
                          const std::optional<std::string>& env_value,
                          const std::optional<std::uint64_t>& flag_value);

// Effective configuration as `key = value` pairs in canonical order (the
// output path is excluded; it is not part of the experiment's identity).
std::vector<std::pair<std::string, std::string>> canonical_items(
    const ExperimentConfig& cfg);

}  // namespace hosim
