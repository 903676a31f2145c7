#include "hosim/handover.hpp"

#include <cmath>
#include <stdexcept>

namespace hosim::engine {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::bt:
      return "bt";
    case Scheme::reactive:
      return "reactive";
    case Scheme::predictive:
      return "predictive";
  }
  return "?";
}

std::optional<Scheme> scheme_from_name(const std::string& name) {
  if (name == "bt") return Scheme::bt;
  if (name == "reactive") return Scheme::reactive;
  if (name == "predictive") return Scheme::predictive;
  return std::nullopt;
}

namespace {

// Fixed draw order; every scheme consumes the same sequence.
TimerDraws sample_all(const TimerSet& timers, RandomSource& rng) {
  TimerDraws d;
  d.anticipation = timers.anticipation.sample(rng);
  d.l2_handoff = timers.l2_handoff.sample(rng);
  d.local_ip = timers.local_ip.sample(rng);
  d.m1 = timers.mn_ar1.sample(rng);
  d.m2 = timers.mn_ar2.sample(rng);
  d.l3 = timers.router_distance.sample(rng);
  d.l1 = timers.ar1_ha.sample(rng);
  d.l2 = timers.ar2_ha.sample(rng);
  return d;
}

// Packets arrive at phase + k * period (k integer); counts arrivals in
// [lo, hi). Off by at most one packet from (hi - lo) / period.
long count_cbr_arrivals(double lo, double hi, double period, double phase) {
  if (hi <= lo) return 0;
  const long upper = static_cast<long>(std::ceil((hi - phase) / period));
  const long lower = static_cast<long>(std::ceil((lo - phase) / period));
  return upper - lower;
}

SchemeOutcome finish_trial(double window_start, double window_end,
                           double added_delay, bool completed,
                           const TimerDraws& draws, const StreamConfig& stream,
                           RandomSource& rng) {
  if (!(stream.packet_period_ms > 0.0))
    throw std::invalid_argument("packet period must be > 0");
  SchemeOutcome out;
  out.loss_window_ms = window_end - window_start;
  out.added_delay_ms = added_delay;
  out.prediction_completed = completed;
  out.draws = draws;
  const double phase = rng.uniform(0.0, stream.packet_period_ms);
  out.lost_packets = count_cbr_arrivals(window_start, window_end,
                                        stream.packet_period_ms, phase);
  return out;
}

}  // namespace

SchemeOutcome run_bt_trial(const TrialConfig& cfg, RandomSource& rng) {
  const TimerDraws d = sample_all(cfg.timers, rng);
  // Disconnect at 0; the BU reaches the HA via AR2 after reattachment.
  // Stream packets tunneled towards AR1 until then are lost.
  const double bu_at_ha = d.l2_handoff + d.local_ip + d.m2 + d.l2;
  const double delay = (d.l2 - d.l1) + (d.m2 - d.m1);
  return finish_trial(0.0, bu_at_ha, delay, false, d, cfg.stream, rng);
}

SchemeOutcome run_reactive_trial(const TrialConfig& cfg, RandomSource& rng) {
  const TimerDraws d = sample_all(cfg.timers, rng);
  // Disconnect at 0, reattach after the L2 handoff (+ local IP), then the BU
  // travels MN -> AR2 -> AR1. AR1 forwards everything arriving later.
  const double bu_at_ar1 = d.l2_handoff + d.local_ip + d.m2 + d.l3;
  const double delay = d.l3 + d.m2 - d.m1;
  return finish_trial(0.0, bu_at_ar1, delay, false, d, cfg.stream, rng);
}

SchemeOutcome run_predictive_trial(const TrialConfig& cfg, RandomSource& rng) {
  const TimerDraws d = sample_all(cfg.timers, rng);
  // Prediction at 0: the FBU reaches AR1 after m1, the AR1<->AR2 negotiation
  // adds 2*l3. AR1 switches from direct delivery to forwarding once the
  // negotiation completes; the MN leaves the old link when the anticipation
  // timer fires and is reachable at AR2 after the L2 handoff (+ local IP).
  // Forwarded packets reaching AR2 earlier than that find no binding and are
  // dropped; later ones are delivered with the forwarding detour.
  const double forwarding_starts = d.m1 + 2.0 * d.l3;
  const double reattached = d.anticipation + d.l2_handoff + d.local_ip;
  const double window_start = std::min(forwarding_starts, d.anticipation);
  const double window_end = std::max(forwarding_starts, reattached - d.l3);
  const bool completed = forwarding_starts < d.anticipation;
  const double delay = d.l3 + d.m2 - d.m1;
  return finish_trial(window_start, window_end, delay, completed, d,
                      cfg.stream, rng);
}

SchemeOutcome run_trial(const TrialConfig& cfg, RandomSource& rng) {
  switch (cfg.scheme) {
    case Scheme::bt:
      return run_bt_trial(cfg, rng);
    case Scheme::reactive:
      return run_reactive_trial(cfg, rng);
    case Scheme::predictive:
      return run_predictive_trial(cfg, rng);
  }
  throw std::invalid_argument("unknown scheme");
}

CompletionEstimate completion_probability(const TrialConfig& cfg,
                                          std::uint64_t master_seed,
                                          std::size_t trials) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  std::size_t completed = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    RandomSource rng = RandomSource::substream(master_seed, i);
    if (run_predictive_trial(cfg, rng).prediction_completed) ++completed;
  }
  CompletionEstimate est;
  est.probability = static_cast<double>(completed) / static_cast<double>(trials);
  est.ci_halfwidth = 1.96 * std::sqrt(est.probability *
                                      (1.0 - est.probability) /
                                      static_cast<double>(trials));
  return est;
}

std::vector<SweepRow> sweep(const SweepSpec& spec) {
  if (spec.distances_ms.empty())
    throw std::invalid_argument("sweep needs at least one distance");
  if (spec.trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (spec.schemes.empty())
    throw std::invalid_argument("sweep needs at least one scheme");

  std::vector<SweepRow> rows;
  rows.reserve(spec.distances_ms.size() * spec.schemes.size());

  for (std::size_t pi = 0; pi < spec.distances_ms.size(); ++pi) {
    const double distance = spec.distances_ms[pi];
    for (std::size_t si = 0; si < spec.schemes.size(); ++si) {
      TrialConfig cfg = spec.base;
      cfg.scheme = spec.schemes[si];
      cfg.timers.router_distance = PerturbedTimer(
          distance, spec.base.timers.router_distance.perturbation_ms);

      const std::uint64_t point_seed =
          derive_seed(derive_seed(spec.master_seed, pi), si);

      double sum_packets = 0.0;
      double sum_window = 0.0;
      double sum_delay = 0.0;
      std::size_t completed = 0;
      for (std::size_t ti = 0; ti < spec.trials; ++ti) {
        RandomSource rng = RandomSource::substream(point_seed, ti);
        const SchemeOutcome out = run_trial(cfg, rng);
        sum_packets += static_cast<double>(out.lost_packets);
        sum_window += out.loss_window_ms;
        sum_delay += out.added_delay_ms;
        if (out.prediction_completed) ++completed;
      }

      SweepRow row;
      row.distance_ms = distance;
      row.scheme = cfg.scheme;
      row.trials = spec.trials;
      const double n = static_cast<double>(spec.trials);
      row.mean_loss_packets = sum_packets / n;
      row.mean_loss_window_ms = sum_window / n;
      row.mean_added_delay_ms = sum_delay / n;
      if (cfg.scheme == Scheme::predictive) {
        CompletionEstimate est;
        est.probability = static_cast<double>(completed) / n;
        est.ci_halfwidth =
            1.96 * std::sqrt(est.probability * (1.0 - est.probability) / n);
        row.completion = est;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace hosim::engine
