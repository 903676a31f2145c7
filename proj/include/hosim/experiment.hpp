#pragma once

#include <cstdint>
#include <ostream>

#include "hosim/config.hpp"

namespace hosim {

inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a hash of the canonical configuration dump; recorded in every CSV
// header so outputs are traceable to the exact experiment that produced them.
std::uint64_t config_hash(const ExperimentConfig& cfg);

// Runs the configured experiment and streams the CSV to `os`.
void run_experiment(const ExperimentConfig& cfg, std::ostream& os);

// Same, writing to cfg.out ("-" selects standard output). A partially
// written file is removed when the run fails.
void run_experiment(const ExperimentConfig& cfg);

}  // namespace hosim
