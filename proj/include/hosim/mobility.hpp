#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

#include "hosim/analytic.hpp"
#include "hosim/rng.hpp"

namespace hosim::mobility {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

// Axial coordinates of one hexagon in the pointy-top tiling.
struct CellId {
  int q = 0;
  int r = 0;
  friend auto operator<=>(const CellId&, const CellId&) = default;
};

// Unbounded honeycomb plane. Hexagons tile the plane; each cell's radio
// coverage is the closed disk of the circumradius R around its center, so
// coverage disks of adjacent cells overlap around their shared edge.
class CellGrid {
 public:
  explicit CellGrid(double circumradius = 1.0);

  double circumradius() const { return radius_; }

  Vec2 center(CellId c) const;

  // Containing hexagon; points equally near several centers go to the
  // lexicographically smallest (q, r).
  CellId cell_at(Vec2 p) const;

  std::array<CellId, 6> neighbors(CellId c) const;

  // Closed-disk convention: boundary points count as covered.
  bool in_radio_disk(Vec2 p, CellId c) const;

  // Neighbors of `current` whose radio disk also covers p while p lies in
  // the disk of `current`; empty outside every overlap.
  std::vector<CellId> prediction_region(Vec2 p, CellId current) const;

 private:
  double radius_;
};

// Straight-line motion segment: position(t) = origin + speed * t * direction
// for t in [0, holding_time].
struct Trajectory {
  Vec2 origin;
  Vec2 direction;  // unit vector
  double speed = 1.0;
  double holding_time = 0.0;
};

enum class PredictionOutcome { correct, wrong_cell, call_terminated };

struct PredictionEvent {
  double triggered_at = 0.0;
  CellId predicted;
  PredictionOutcome outcome = PredictionOutcome::correct;
  // The overlap region was fully exited before the next cell change (and
  // before the call ended).
  bool traversed_without_change = false;
};

// Walks one trajectory across the grid. A prediction is emitted on first
// entry into the coverage overlap of the current cell with a neighbor (one
// per overlap region and trajectory; a straight line cannot re-enter the
// convex overlap). It is correct when the next cell change enters the
// predicted cell before the call ends, wrong_cell when it enters another
// cell, call_terminated when the call ends first.
std::vector<PredictionEvent> walk_predictions(const Trajectory& traj,
                                              const CellGrid& grid);

struct OutcomeRates {
  double correct = 0.0;
  double wrong_cell = 0.0;
  double call_terminated = 0.0;
  double correct_ci = 0.0;
  double wrong_cell_ci = 0.0;
  double call_terminated_ci = 0.0;
  double traversal_without_change = 0.0;
  std::size_t events = 0;
  std::size_t trials = 0;
};

struct PredictionSimParams {
  double rho = 1.0;
  CellGrid grid{1.0};
  double speed = 1.0;
  // Measured mean cell residence for this grid/speed; calibrates the call
  // holding rate alpha = rho / mean_residence_ms.
  double mean_residence_ms = 0.0;
  CellId spawn_cell{0, 0};
  std::size_t trials = 10000;
  std::uint64_t master_seed = 1;
};

// Spawns trajectories uniformly inside the spawn cell with uniform random
// direction and exponential holding time, and tallies prediction outcomes.
OutcomeRates simulate_prediction_outcomes(const PredictionSimParams& params);

// Empirical mean time between cell boundary crossings for straight-line
// trajectories (the partial first residence of each trajectory is skipped).
double measure_residence_time(const CellGrid& grid, double speed,
                              std::size_t trajectories, std::uint64_t seed,
                              std::size_t crossings_per_trajectory = 16);

// Monte-Carlo estimate of the expected-handover figure at MAP granularity:
// races exponential residences (rate eta/sqrt(k)) against the remaining
// exponential holding time; a call whose n-th residence expires first adds
// weight n, so a call with n handovers contributes n(n+1)/2.
double count_handovers(const analytic::MobilityParams& params,
                       std::size_t trials, std::uint64_t master_seed);

}  // namespace hosim::mobility
