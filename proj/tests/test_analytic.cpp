#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hosim/analytic.hpp"
#include "hosim/rng.hpp"
#include "hosim/timers.hpp"

using namespace hosim::analytic;
using hosim::RandomSource;

namespace {

// Direct summation of sum_{i>=1} i * q^i with q = 1/(1 + sqrt(k) rho).
double handover_series(double rho, double k) {
  const double q = 1.0 / (1.0 + std::sqrt(k) * rho);
  long double sum = 0.0, power = 1.0;
  for (int i = 1; i < 100000000; ++i) {
    power *= q;
    const long double term = static_cast<long double>(i) * power;
    sum += term;
    if (term < sum * 1e-15L && i > 8) break;
  }
  return static_cast<double>(sum);
}

NetworkGeometry random_geometry(RandomSource& rng) {
  NetworkGeometry g;
  g.t_m1 = rng.uniform(0.0, 5.0);
  g.t_m2 = rng.uniform(0.0, 5.0);
  g.t_l1 = rng.uniform(0.0, 40.0);
  g.t_l2 = rng.uniform(0.0, 40.0);
  g.t_l3 = rng.uniform(0.0, 40.0);
  g.t_l2_handoff = rng.uniform(0.0, 80.0);
  g.t_local_ip = rng.uniform(0.0, 10.0);
  g.t_anticipation = rng.uniform(0.0, 80.0);
  return g;
}

}  // namespace

TEST_CASE("handoff decomposition sums its three parts") {
  NetworkGeometry g;
  g.t_l2_handoff = 50.0;
  g.t_local_ip = 0.0;
  CHECK(handoff_decomposition(g, 22.0) == 72.0);
  CHECK(handoff_decomposition(NetworkGeometry{}, 0.0) == 0.0);
  g.t_local_ip = 10.0;
  CHECK(handoff_decomposition(g, 0.0) == 60.0);
  CHECK_THROWS_AS(handoff_decomposition(g, -1.0), std::invalid_argument);
}

TEST_CASE("bi-directional tunneling window") {
  NetworkGeometry g;
  g.t_l2_handoff = 50.0;
  g.t_m2 = 2.0;
  g.t_l2 = 20.0;
  g.t_l1 = 20.0;
  g.t_m1 = 2.0;
  const LossDelayWindow w = bt_window(g);
  CHECK(w.loss_window == 72.0);
  CHECK(w.added_delay == 0.0);

  const LossDelayWindow zero = bt_window(NetworkGeometry{});
  CHECK(zero.loss_window == 0.0);
  CHECK(zero.added_delay == 0.0);

  NetworkGeometry asym;
  asym.t_l2 = 30.0;
  asym.t_l1 = 10.0;
  asym.t_m1 = asym.t_m2 = 3.0;
  CHECK(bt_window(asym).added_delay == 20.0);
}

TEST_CASE("reactive window") {
  NetworkGeometry g;
  g.t_l2_handoff = 50.0;
  g.t_m2 = 2.0;
  g.t_l3 = 10.0;
  g.t_m1 = 2.0;
  const LossDelayWindow w = reactive_window(g);
  CHECK(w.loss_window == 62.0);
  CHECK(w.added_delay == 10.0);

  CHECK(reactive_window(NetworkGeometry{}).loss_window == 0.0);

  // Loss grows by exactly the router-distance increment.
  NetworkGeometry g2 = g;
  g2.t_l3 = g.t_l3 + 7.5;
  CHECK(reactive_window(g2).loss_window == w.loss_window + 7.5);
}

TEST_CASE("predictive window, successful prediction") {
  NetworkGeometry g;
  g.t_anticipation = 50.0;
  g.t_l3 = 10.0;
  g.t_m1 = 2.0;
  g.t_l2_handoff = 50.0;
  LossDelayWindow w = predictive_window(g, true);
  CHECK(w.delta_plus == 28.0);
  CHECK(w.delta_minus == 0.0);
  CHECK(w.loss_window == 68.0);

  g.t_l3 = 25.0;
  w = predictive_window(g, true);
  CHECK(w.delta_plus == 0.0);
  CHECK(w.delta_minus == 2.0);
  CHECK(w.loss_window == 25.0);

  // Without anticipation the whole negotiation overruns the disconnect.
  g.t_anticipation = 0.0;
  g.t_l3 = 10.0;
  w = predictive_window(g, true);
  CHECK(w.delta_plus == 0.0);
  CHECK(w.delta_minus == 22.0);
}

TEST_CASE("predictive loss is minimized at (t_Ant - t_m1 + t_L2)/3") {
  NetworkGeometry g;
  g.t_anticipation = 50.0;
  g.t_m1 = 2.0;
  g.t_l2_handoff = 50.0;
  const double predicted_min = (50.0 - 2.0 + 50.0) / 3.0;

  double best_x = 0.0, best_loss = 1e300;
  for (double x = 0.0; x <= 60.0; x += 0.005) {
    g.t_l3 = x;
    const double loss = predictive_window(g, true).loss_window;
    if (loss < best_loss) {
      best_loss = loss;
      best_x = x;
    }
  }
  CHECK(best_x == doctest::Approx(predicted_min).epsilon(0.001));
  g.t_l3 = predicted_min;
  CHECK(predictive_window(g, true).loss_window ==
        doctest::Approx(best_loss).epsilon(1e-9));
}

TEST_CASE("predictive loss is continuous and piecewise linear in t_l3") {
  NetworkGeometry g;
  g.t_anticipation = 50.0;
  g.t_m1 = 2.0;
  g.t_l2_handoff = 50.0;
  const double step = 0.001;
  double previous = -1.0;
  for (double x = 0.0; x <= 80.0; x += step) {
    g.t_l3 = x;
    const double loss = predictive_window(g, true).loss_window;
    if (previous >= 0.0) CHECK(std::abs(loss - previous) <= 3.0 * step + 1e-9);
    previous = loss;
  }
}

TEST_CASE("exactly one delta is nonzero away from the balance point") {
  RandomSource rng(11);
  for (int i = 0; i < 1000; ++i) {
    const NetworkGeometry g = random_geometry(rng);
    const LossDelayWindow w = predictive_window(g, true);
    CHECK(w.delta_plus >= 0.0);
    CHECK(w.delta_minus >= 0.0);
    if (g.t_l3 != (g.t_anticipation - g.t_m1) / 2.0)
      CHECK((w.delta_plus == 0.0) != (w.delta_minus == 0.0));
  }
}

TEST_CASE("erroneous prediction pays delta_plus on top of the reactive loss") {
  RandomSource rng(12);
  for (int i = 0; i < 1000; ++i) {
    const NetworkGeometry g = random_geometry(rng);
    const LossDelayWindow err = predictive_window(g, false);
    const LossDelayWindow reactive = reactive_window(g);
    CHECK(err.loss_window ==
          doctest::Approx(err.delta_plus + reactive.loss_window));
    CHECK(err.added_delay == reactive.added_delay);
  }
}

TEST_CASE("reactive never loses more than BT while routers are closer than the HA") {
  RandomSource rng(13);
  for (int i = 0; i < 2000; ++i) {
    NetworkGeometry g = random_geometry(rng);
    if (g.t_l3 >= g.t_l2) g.t_l3 = g.t_l2 * 0.5;
    CHECK(reactive_window(g).loss_window <= bt_window(g).loss_window);
  }
}

TEST_CASE("handover probability") {
  CHECK(handover_probability(MobilityParams::from_rho(1.0, 1.0), false) == 0.5);
  CHECK(handover_probability(MobilityParams::from_rho(0.0, 1.0), false) == 1.0);
  CHECK(handover_probability(MobilityParams::from_rho(1.0, 4.0), true) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  // MAP form with k = 1 is the plain form.
  for (double rho : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const auto p = MobilityParams::from_rho(rho, 1.0);
    CHECK(handover_probability(p, true) == handover_probability(p, false));
  }
}

TEST_CASE("MAP handover probability agrees with an exponential race") {
  // Residence at MAP granularity (rate eta/sqrt(k)) races the call holding
  // time; the fraction of lost races estimates the handover probability.
  const auto params = MobilityParams::from_rho(1.0, 4.0, 0.1);
  const double residence_rate = map_residence_scaling(params.eta, params.k);
  hosim::ExponentialTimer residence(residence_rate), holding(params.alpha);
  RandomSource rng(14);
  const int n = 4000000;
  int handovers = 0;
  for (int i = 0; i < n; ++i) {
    const double r = residence.sample(rng);
    const double h = holding.sample(rng);
    if (r < h) ++handovers;
  }
  const double estimate = static_cast<double>(handovers) / n;
  CHECK(estimate == doctest::Approx(1.0 / 3.0).epsilon(0.005));
}

TEST_CASE("expected handovers: closed form against the summed series") {
  CHECK(expected_handovers(MobilityParams::from_rho(1.0, 1.0)) == 2.0);
  CHECK(expected_handovers(MobilityParams::from_rho(0.5, 4.0)) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(expected_handovers(MobilityParams::from_rho(2.0, 1.0)) ==
        doctest::Approx(0.75).epsilon(1e-12));
  for (double rho : {0.25, 0.5, 1.0, 2.0, 5.0}) {
    for (double k : {1.0, 4.0, 9.0, 16.0}) {
      const double closed = expected_handovers(MobilityParams::from_rho(rho, k));
      const double series = handover_series(rho, k);
      CHECK(std::abs(closed - series) / closed < 1e-6);
    }
  }
}

TEST_CASE("expected handovers decrease in rho and in k") {
  const double rhos[] = {0.25, 0.5, 1.0, 2.0, 5.0};
  const double ks[] = {1.0, 4.0, 9.0, 16.0};
  for (double k : ks)
    for (std::size_t i = 0; i + 1 < 5; ++i)
      CHECK(expected_handovers(MobilityParams::from_rho(rhos[i + 1], k)) <
            expected_handovers(MobilityParams::from_rho(rhos[i], k)));
  for (double rho : rhos)
    for (std::size_t i = 0; i + 1 < 4; ++i)
      CHECK(expected_handovers(MobilityParams::from_rho(rho, ks[i + 1])) <
            expected_handovers(MobilityParams::from_rho(rho, ks[i])));
}

TEST_CASE("expected handovers reject the rho = 0 singularity") {
  CHECK_THROWS_AS(expected_handovers(MobilityParams::from_rho(0.0, 1.0)),
                  std::domain_error);
}

TEST_CASE("MAP residence scaling") {
  CHECK(map_residence_scaling(0.1, 1.0) == 0.1);
  CHECK(map_residence_scaling(0.1, 4.0) == 0.05);
  CHECK(map_residence_scaling(0.1, 9.0) == doctest::Approx(0.1 / 3.0));
}

TEST_CASE("signalling overhead message counts") {
  CHECK(signalling_overhead(SignallingProtocol::hmipv6,
                            HandoverKind::intra_map) == 1);
  CHECK(signalling_overhead(SignallingProtocol::hmipv6,
                            HandoverKind::inter_map) == 2);
  CHECK(signalling_overhead(SignallingProtocol::fmipv6, HandoverKind::any) == 7);
  CHECK_THROWS_AS(
      signalling_overhead(SignallingProtocol::fmipv6, HandoverKind::intra_map),
      std::invalid_argument);
  CHECK_THROWS_AS(
      signalling_overhead(SignallingProtocol::fmipv6, HandoverKind::inter_map),
      std::invalid_argument);
  CHECK_THROWS_AS(
      signalling_overhead(SignallingProtocol::hmipv6, HandoverKind::any),
      std::invalid_argument);
}

TEST_CASE("geometry validation rejects negative delays") {
  NetworkGeometry g;
  g.t_l3 = -1.0;
  CHECK_THROWS_AS(reactive_window(g), std::invalid_argument);
}
