#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hosim/analytic.hpp"
#include "hosim/experiment.hpp"

using namespace hosim;

namespace {

std::string run_to_string(const ExperimentConfig& cfg) {
  std::ostringstream os;
  run_experiment(cfg, os);
  return os.str();
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> lines;
  std::istringstream is(csv);
  std::string line;
  while (std::getline(is, line))
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

ExperimentConfig small_config(ExperimentKind kind) {
  ExperimentConfig cfg = parse_config(
      "trials = 200\n"
      "sweep.stop = 10\n"
      "mobility.rho = 0.5, 2\n"
      "mobility.k = 1, 4\n");
  cfg.experiment = kind;
  return cfg;
}

}  // namespace

TEST_CASE("experiment output is byte-identical across runs") {
  for (ExperimentKind kind : {ExperimentKind::analytic, ExperimentKind::handover,
                              ExperimentKind::mobility}) {
    const ExperimentConfig cfg = small_config(kind);
    CHECK(run_to_string(cfg) == run_to_string(cfg));
  }
}

TEST_CASE("changing the seed changes stochastic output") {
  ExperimentConfig cfg = small_config(ExperimentKind::handover);
  const std::string a = run_to_string(cfg);
  cfg.master_seed = 999;
  CHECK(a != run_to_string(cfg));
}

TEST_CASE("handover CSV has one row per sweep point and scheme") {
  ExperimentConfig cfg = small_config(ExperimentKind::handover);
  const auto lines = data_lines(run_to_string(cfg));
  REQUIRE(!lines.empty());
  CHECK(lines[0] ==
        "distance_ms,scheme,mean_loss_packets,mean_loss_window_ms,"
        "mean_delay_ms,completion_prob,ci_halfwidth,trials");
  // 3 sweep points (0, 5, 10) x 3 schemes + header.
  CHECK(lines.size() == 1 + 3 * 3);
  // Completion column only holds values on predictive rows.
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i]);
    REQUIRE(fields.size() == 8);
    if (fields[1] == "predictive") {
      CHECK(!fields[5].empty());
    } else {
      CHECK(fields[5].empty());
      CHECK(fields[6].empty());
    }
  }
}

TEST_CASE("analytic CSV matches independently recomputed closed forms") {
  const ExperimentConfig cfg = small_config(ExperimentKind::analytic);
  const auto lines = data_lines(run_to_string(cfg));
  REQUIRE(lines.size() == 1 + 2 * 2);
  CHECK(lines[0] == "rho,k,handover_prob,handover_prob_map,expected_handovers");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i]);
    REQUIRE(fields.size() == 5);
    const double rho = std::stod(fields[0]);
    const double k = std::stod(fields[1]);
    const double expected = 1.0 / (k * rho * rho) + 1.0 / (std::sqrt(k) * rho);
    CHECK(std::stod(fields[4]) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::stod(fields[2]) == doctest::Approx(1.0 / (1.0 + rho)));
    CHECK(std::stod(fields[3]) ==
          doctest::Approx(1.0 / (1.0 + std::sqrt(k) * rho)));
  }
}

TEST_CASE("mobility CSV carries outcome rates and both handover figures") {
  ExperimentConfig cfg = small_config(ExperimentKind::mobility);
  cfg.trials = 400;
  const auto lines = data_lines(run_to_string(cfg));
  REQUIRE(lines.size() == 1 + 2 * 2);
  CHECK(lines[0] ==
        "rho,k,correct_rate,wrong_cell_rate,terminated_rate,"
        "empirical_E_HO,analytic_E_HO");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i]);
    REQUIRE(fields.size() == 7);
    const double correct = std::stod(fields[2]);
    const double wrong = std::stod(fields[3]);
    const double terminated = std::stod(fields[4]);
    CHECK(correct + wrong + terminated == doctest::Approx(1.0).epsilon(1e-9));
    const auto params = analytic::MobilityParams::from_rho(
        std::stod(fields[0]), std::stod(fields[1]));
    CHECK(std::stod(fields[6]) ==
          doctest::Approx(analytic::expected_handovers(params)).epsilon(1e-12));
  }
}

TEST_CASE("header records version, seed, hash and the effective config") {
  ExperimentConfig cfg = small_config(ExperimentKind::analytic);
  cfg.trials = 1;
  cfg.master_seed = 4242;
  const std::string csv = run_to_string(cfg);
  CHECK(csv.find("# hosim 0.1.0\n") != std::string::npos);
  CHECK(csv.find("# seed = 4242\n") != std::string::npos);
  CHECK(csv.find("# trials = 1\n") != std::string::npos);
  CHECK(csv.find("# config_hash = ") != std::string::npos);

  char expected_hash[64];
  std::snprintf(expected_hash, sizeof expected_hash, "# config_hash = %016llx",
                static_cast<unsigned long long>(config_hash(cfg)));
  CHECK(csv.find(expected_hash) != std::string::npos);
}

TEST_CASE("config hash ignores the output path but not the seed") {
  ExperimentConfig a = small_config(ExperimentKind::handover);
  ExperimentConfig b = a;
  b.out = "elsewhere.csv";
  CHECK(config_hash(a) == config_hash(b));
  b.master_seed = a.master_seed + 1;
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("file output matches stream output and is reproducible") {
  ExperimentConfig cfg = small_config(ExperimentKind::handover);
  cfg.out = "/tmp/hosim_test_out.csv";
  run_experiment(cfg);
  std::ifstream in(cfg.out, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream contents;
  contents << in.rdbuf();
  CHECK(contents.str() == run_to_string(cfg));
  std::remove(cfg.out.c_str());
}

TEST_CASE("unwritable output paths raise and leave nothing behind") {
  ExperimentConfig cfg = small_config(ExperimentKind::analytic);
  cfg.out = "/nonexistent-dir/impossible.csv";
  CHECK_THROWS(run_experiment(cfg));
  CHECK(!std::ifstream(cfg.out).good());
}
