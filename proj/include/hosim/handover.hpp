#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hosim/analytic.hpp"
#include "hosim/rng.hpp"
#include "hosim/timers.hpp"

namespace hosim::engine {

enum class Scheme { bt, reactive, predictive };

const char* scheme_name(Scheme s);
std::optional<Scheme> scheme_from_name(const std::string& name);

// CN -> MN constant-bit-rate stream, one packet per period.
struct StreamConfig {
  double packet_period_ms = 10.0;
};

// Per-trial timer models. Defaults follow the simulation setup: anticipation
// 50+-30 ms, L2 handoff 50+-10 ms, access links 2+-1 ms, router distance
// jitter +-2.5 ms. The HA/CN links default to 20 ms fixed and local IP
// reconfiguration to zero; both only matter for the BT baseline.
struct TimerSet {
  PerturbedTimer anticipation{50.0, 30.0};
  PerturbedTimer l2_handoff{50.0, 10.0};
  PerturbedTimer local_ip{0.0, 0.0};
  PerturbedTimer mn_ar1{2.0, 1.0};
  PerturbedTimer mn_ar2{2.0, 1.0};
  PerturbedTimer router_distance{10.0, 2.5};
  PerturbedTimer ar1_ha{20.0, 0.0};
  PerturbedTimer ar2_ha{20.0, 0.0};
};

// One value per timer, drawn once per trial.
struct TimerDraws {
  double anticipation = 0.0;
  double l2_handoff = 0.0;
  double local_ip = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  double l3 = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
};

struct TrialConfig {
  Scheme scheme = Scheme::reactive;
  TimerSet timers;
  StreamConfig stream;
};

struct SchemeOutcome {
  long lost_packets = 0;
  double loss_window_ms = 0.0;
  double added_delay_ms = 0.0;
  bool prediction_completed = false;  // predictive scheme only
  TimerDraws draws;
};

// Single-handover trials. Each samples every timer once, replays the scheme's
// event sequence against the CBR stream (emitted at a uniformly random phase
// within one period) and counts the packets that fall into the undeliverable
// window. With zero perturbations the loss window equals the corresponding
// closed form from hosim::analytic exactly.
SchemeOutcome run_bt_trial(const TrialConfig& cfg, RandomSource& rng);
SchemeOutcome run_reactive_trial(const TrialConfig& cfg, RandomSource& rng);
SchemeOutcome run_predictive_trial(const TrialConfig& cfg, RandomSource& rng);
SchemeOutcome run_trial(const TrialConfig& cfg, RandomSource& rng);

struct CompletionEstimate {
  double probability = 0.0;
  double ci_halfwidth = 0.0;  // normal-approximation 95% half-width
};

// Fraction of predictive trials whose forwarding negotiation finishes before
// the anticipation period elapses.
CompletionEstimate completion_probability(const TrialConfig& cfg,
                                          std::uint64_t master_seed,
                                          std::size_t trials);

struct SweepRow {
  double distance_ms = 0.0;
  Scheme scheme = Scheme::bt;
  double mean_loss_packets = 0.0;
  double mean_loss_window_ms = 0.0;
  double mean_added_delay_ms = 0.0;
  std::optional<CompletionEstimate> completion;  // predictive rows only
  std::size_t trials = 0;
};

struct SweepSpec {
  TrialConfig base;
  std::vector<Scheme> schemes{Scheme::bt, Scheme::reactive, Scheme::predictive};
  std::vector<double> distances_ms;  // router-distance means to sweep
  std::size_t trials = 10000;
  std::uint64_t master_seed = 1;
};

// Sweeps the router-distance mean. Every (point, scheme, trial) triple gets
// its own sub-stream, so results are independent of execution order; rows are
// emitted in sweep order, schemes in the order given.
std::vector<SweepRow> sweep(const SweepSpec& spec);

}  // namespace hosim::engine
