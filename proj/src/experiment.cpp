#include "hosim/experiment.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "hosim/analytic.hpp"
#include "hosim/handover.hpp"
#include "hosim/mobility.hpp"

namespace hosim {

namespace {

// Sub-stream tags for the top-level experiment stages.
constexpr std::uint64_t kResidenceStream = 1;
constexpr std::uint64_t kPredictionStream = 2;
constexpr std::uint64_t kHandoverCountStream = 3;
constexpr std::uint64_t kSweepStream = 4;

constexpr std::size_t kResidenceTrajectories = 4096;

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// RFC-4180-style quoting; only needed when a field contains , " or newline.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void write_header(const ExperimentConfig& cfg, std::ostream& os) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(config_hash(cfg)));
  os << "# hosim " << kToolVersion << "\n";
  os << "# config_hash = " << hash << "\n";
  for (const auto& [key, value] : canonical_items(cfg))
    os << "# " << key << " = " << value << "\n";
}

void run_analytic(const ExperimentConfig& cfg, std::ostream& os) {
  os << "rho,k,handover_prob,handover_prob_map,expected_handovers\n";
  for (double rho : cfg.mobility.rho) {
    for (double k : cfg.mobility.k) {
      const auto params = analytic::MobilityParams::from_rho(rho, k);
      os << format_value(rho) << ',' << format_value(k) << ','
         << format_value(analytic::handover_probability(params, false)) << ','
         << format_value(analytic::handover_probability(params, true)) << ','
         << format_value(analytic::expected_handovers(params)) << "\n";
    }
  }
}

void run_handover(const ExperimentConfig& cfg, std::ostream& os) {
  engine::SweepSpec spec;
  spec.base.timers = cfg.timers;
  spec.base.stream = cfg.stream;
  spec.schemes = cfg.schemes;
  spec.distances_ms = cfg.sweep.values();
  spec.trials = cfg.trials;
  spec.master_seed = derive_seed(cfg.master_seed, kSweepStream);

  os << "distance_ms,scheme,mean_loss_packets,mean_loss_window_ms,"
        "mean_delay_ms,completion_prob,ci_halfwidth,trials\n";
  for (const engine::SweepRow& row : engine::sweep(spec)) {
    os << format_value(row.distance_ms) << ','
       << csv_field(engine::scheme_name(row.scheme)) << ','
       << format_value(row.mean_loss_packets) << ','
       << format_value(row.mean_loss_window_ms) << ','
       << format_value(row.mean_added_delay_ms) << ',';
    if (row.completion) {
      os << format_value(row.completion->probability) << ','
         << format_value(row.completion->ci_halfwidth);
    } else {
      os << ',';
    }
    os << ',' << row.trials << "\n";
  }
}

void run_mobility(const ExperimentConfig& cfg, std::ostream& os) {
  const mobility::CellGrid grid(cfg.mobility.cell_radius);
  const double mean_residence = mobility::measure_residence_time(
      grid, cfg.mobility.speed, kResidenceTrajectories,
      derive_seed(cfg.master_seed, kResidenceStream));

  os << "rho,k,correct_rate,wrong_cell_rate,terminated_rate,"
        "empirical_E_HO,analytic_E_HO\n";
  for (std::size_t ri = 0; ri < cfg.mobility.rho.size(); ++ri) {
    const double rho = cfg.mobility.rho[ri];
    mobility::PredictionSimParams sim;
    sim.rho = rho;
    sim.grid = grid;
    sim.speed = cfg.mobility.speed;
    sim.mean_residence_ms = mean_residence;
    sim.trials = cfg.trials;
    sim.master_seed =
        derive_seed(derive_seed(cfg.master_seed, kPredictionStream), ri);
    const mobility::OutcomeRates rates =
        mobility::simulate_prediction_outcomes(sim);

    for (std::size_t ki = 0; ki < cfg.mobility.k.size(); ++ki) {
      const double k = cfg.mobility.k[ki];
      const auto params = analytic::MobilityParams::from_rho(rho, k);
      const std::uint64_t count_seed = derive_seed(
          derive_seed(derive_seed(cfg.master_seed, kHandoverCountStream), ri),
          ki);
      const double empirical =
          mobility::count_handovers(params, cfg.trials, count_seed);
      os << format_value(rho) << ',' << format_value(k) << ','
         << format_value(rates.correct) << ','
         << format_value(rates.wrong_cell) << ','
         << format_value(rates.call_terminated) << ','
         << format_value(empirical) << ','
         << format_value(analytic::expected_handovers(params)) << "\n";
    }
  }
}

}  // namespace

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  std::string dump;
  for (const auto& [key, value] : canonical_items(cfg)) {
    dump += key;
    dump += " = ";
    dump += value;
    dump += '\n';
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void run_experiment(const ExperimentConfig& cfg, std::ostream& os) {
  validate_config(cfg);
  write_header(cfg, os);
  switch (cfg.experiment) {
    case ExperimentKind::analytic:
      run_analytic(cfg, os);
      break;
    case ExperimentKind::handover:
      run_handover(cfg, os);
      break;
    case ExperimentKind::mobility:
      run_mobility(cfg, os);
      break;
  }
  os.flush();
  if (!os) throw std::runtime_error("error while writing experiment output");
}

void run_experiment(const ExperimentConfig& cfg) {
  if (cfg.out == "-") {
    run_experiment(cfg, std::cout);
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file)
    throw std::runtime_error("cannot open output file '" + cfg.out + "'");
  try {
    run_experiment(cfg, file);
  } catch (...) {
    file.close();
    std::remove(cfg.out.c_str());
    throw;
  }
  file.close();
  if (!file) {
    std::remove(cfg.out.c_str());
    throw std::runtime_error("error while writing '" + cfg.out + "'");
  }
}

}  // namespace hosim
