#pragma once

namespace hosim::analytic {

// One-way delays (ms) of the two-router reference topology: the MN roams
// from AR1 to AR2 while the HA/CN keeps sending. m1/m2 are the access links
// MN<->AR1 and MN<->AR2, l1/l2 connect AR1/AR2 to the HA/CN, and l3 is the
// AR1<->AR2 "router distance". t_l2_handoff and t_local_ip cover the
// geometry-independent part of the handoff, t_anticipation the period
// between a handover prediction and link-layer disconnect.
struct NetworkGeometry {
  double t_m1 = 0.0;
  double t_m2 = 0.0;
  double t_l1 = 0.0;
  double t_l2 = 0.0;
  double t_l3 = 0.0;
  double t_l2_handoff = 0.0;
  double t_local_ip = 0.0;
  double t_anticipation = 0.0;
};

// Disruption caused by one handover. loss_window is the span of the stream
// (in ms at the diversion point) that never reaches the MN; added_delay is
// the signed path-length change experienced by packets delivered after the
// handover. delta_plus is the anticipation slack left when the forwarding
// negotiation completes early, delta_minus the overrun when it completes
// after the link went down; at most one of them is nonzero.
struct LossDelayWindow {
  double loss_window = 0.0;
  double added_delay = 0.0;
  double delta_plus = 0.0;
  double delta_minus = 0.0;
};

// Call-to-mobility parameters. alpha is the call holding rate, eta the cell
// residence rate at access-router granularity (both 1/ms), k the number of
// access routers per mobility anchor point, rho = alpha/eta.
struct MobilityParams {
  double alpha;
  double eta;
  double k;
  double rho;

  static MobilityParams from_rates(double alpha, double eta, double k);
  static MobilityParams from_rho(double rho, double k, double eta = 1.0);
};

enum class SignallingProtocol { hmipv6, fmipv6 };
enum class HandoverKind { intra_map, inter_map, any };

// t_handoff = t_L2 + t_local_IP + t_BU.
double handoff_decomposition(const NetworkGeometry& g, double t_binding_update);

// Bi-directional tunneling through the HA (baseline):
//   loss  = t_L2 + t_local_IP + t_m2 + t_l2
//   delay = (t_l2 - t_l1) + (t_m2 - t_m1)
LossDelayWindow bt_window(const NetworkGeometry& g);

// Reactive handover: the MN reattaches first, then a binding update via AR2
// triggers forwarding at AR1.
//   loss  = t_L2 + t_local_IP + t_m2 + t_l3
//   delay = t_l3 + t_m2 - t_m1
LossDelayWindow reactive_window(const NetworkGeometry& g);

// Predictive handover. With delta+- = max(+-t_Ant -+ 2 t_l3 -+ t_m1, 0) and
// delta = delta+ - delta-, a correct prediction loses
//   delta- + max(delta + t_L2 + t_local_IP - t_l3, 0)
// and an erroneous one delta+ plus the full reactive loss.
LossDelayWindow predictive_window(const NetworkGeometry& g,
                                  bool prediction_correct);

// P_HO = 1/(1 + rho), or 1/(1 + sqrt(k) * rho) at MAP granularity.
double handover_probability(const MobilityParams& p, bool use_map);

// Expected number of handovers per call, 1/(k rho^2) + 1/(sqrt(k) rho).
// Diverges at rho = 0; that singularity is reported as an error, never as a
// large float.
double expected_handovers(const MobilityParams& p);

// MAP regions of ~circular shape spanning k access routers stretch the mean
// residence time by sqrt(k): the residence rate drops to eta / sqrt(k).
double map_residence_scaling(double eta_ar, double k);

// Handover signalling cost in protocol messages: HMIPv6 needs one message
// within a MAP domain and two across domains, FMIPv6 always seven.
int signalling_overhead(SignallingProtocol proto, HandoverKind kind);

}  // namespace hosim::analytic
