#include "hosim/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace hosim::analytic {

namespace {

void check_geometry(const NetworkGeometry& g) {
  const double fields[] = {g.t_m1, g.t_m2,         g.t_l1,      g.t_l2,
                           g.t_l3, g.t_l2_handoff, g.t_local_ip, g.t_anticipation};
  for (double f : fields) {
    if (!(f >= 0.0))
      throw std::invalid_argument("network geometry delays must be >= 0");
  }
}

}  // namespace

MobilityParams MobilityParams::from_rates(double alpha, double eta, double k) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be > 0");
  if (!(k >= 1.0)) throw std::invalid_argument("k must be >= 1");
  return MobilityParams{alpha, eta, k, alpha / eta};
}

MobilityParams MobilityParams::from_rho(double rho, double k, double eta) {
  if (!(rho >= 0.0)) throw std::invalid_argument("rho must be >= 0");
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be > 0");
  if (!(k >= 1.0)) throw std::invalid_argument("k must be >= 1");
  return MobilityParams{rho * eta, eta, k, rho};
}

double handoff_decomposition(const NetworkGeometry& g, double t_binding_update) {
  check_geometry(g);
  if (!(t_binding_update >= 0.0))
    throw std::invalid_argument("t_BU must be >= 0");
  return g.t_l2_handoff + g.t_local_ip + t_binding_update;
}

LossDelayWindow bt_window(const NetworkGeometry& g) {
  check_geometry(g);
  LossDelayWindow w;
  w.loss_window = g.t_l2_handoff + g.t_local_ip + g.t_m2 + g.t_l2;
  w.added_delay = (g.t_l2 - g.t_l1) + (g.t_m2 - g.t_m1);
  return w;
}

LossDelayWindow reactive_window(const NetworkGeometry& g) {
  check_geometry(g);
  LossDelayWindow w;
  w.loss_window = g.t_l2_handoff + g.t_local_ip + g.t_m2 + g.t_l3;
  w.added_delay = g.t_l3 + g.t_m2 - g.t_m1;
  return w;
}

LossDelayWindow predictive_window(const NetworkGeometry& g,
                                  bool prediction_correct) {
  check_geometry(g);
  LossDelayWindow w;
  w.delta_plus = std::max(g.t_anticipation - 2.0 * g.t_l3 - g.t_m1, 0.0);
  w.delta_minus = std::max(2.0 * g.t_l3 + g.t_m1 - g.t_anticipation, 0.0);
  const double delta = w.delta_plus - w.delta_minus;
  if (prediction_correct) {
    w.loss_window =
        w.delta_minus +
        std::max(delta + g.t_l2_handoff + g.t_local_ip - g.t_l3, 0.0);
    w.added_delay = g.t_l3 + g.t_m2 - g.t_m1;
  } else {
    const LossDelayWindow fallback = reactive_window(g);
    w.loss_window = w.delta_plus + fallback.loss_window;
    w.added_delay = fallback.added_delay;
  }
  return w;
}

double handover_probability(const MobilityParams& p, bool use_map) {
  if (!(p.rho >= 0.0)) throw std::invalid_argument("rho must be >= 0");
  if (!(p.k >= 1.0)) throw std::invalid_argument("k must be >= 1");
  if (use_map) return 1.0 / (1.0 + std::sqrt(p.k) * p.rho);
  return 1.0 / (1.0 + p.rho);
}

double expected_handovers(const MobilityParams& p) {
  if (!(p.k >= 1.0)) throw std::invalid_argument("k must be >= 1");
  if (!(p.rho > 0.0))
    throw std::domain_error("expected handovers diverge at rho = 0");
  return 1.0 / (p.k * p.rho * p.rho) + 1.0 / (std::sqrt(p.k) * p.rho);
}

double map_residence_scaling(double eta_ar, double k) {
  if (!(eta_ar > 0.0)) throw std::invalid_argument("eta must be > 0");
  if (!(k >= 1.0)) throw std::invalid_argument("k must be >= 1");
  return eta_ar / std::sqrt(k);
}

int signalling_overhead(SignallingProtocol proto, HandoverKind kind) {
  switch (proto) {
    case SignallingProtocol::hmipv6:
      if (kind == HandoverKind::intra_map) return 1;
      if (kind == HandoverKind::inter_map) return 2;
      throw std::invalid_argument(
          "HMIPv6 overhead requires an intra/inter-MAP qualifier");
    case SignallingProtocol::fmipv6:
      if (kind == HandoverKind::any) return 7;
      throw std::invalid_argument(
          "FMIPv6 overhead takes no intra/inter-MAP qualifier");
  }
  throw std::invalid_argument("unknown signalling protocol");
}

}  // namespace hosim::analytic
