#include "hosim/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "hosim/timers.hpp"

namespace hosim::mobility {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

// Axial directions of the six neighbors (pointy-top orientation).
constexpr std::array<CellId, 6> kNeighborOffsets = {
    CellId{1, 0},  CellId{1, -1}, CellId{0, -1},
    CellId{-1, 0}, CellId{-1, 1}, CellId{0, 1}};

double dist2(Vec2 a, Vec2 b) {
  const Vec2 d = a - b;
  return dot(d, d);
}

}  // namespace

CellGrid::CellGrid(double circumradius) : radius_(circumradius) {
  if (!(circumradius > 0.0))
    throw std::invalid_argument("cell circumradius must be > 0");
}

Vec2 CellGrid::center(CellId c) const {
  return {radius_ * kSqrt3 * (c.q + 0.5 * c.r), radius_ * 1.5 * c.r};
}

std::array<CellId, 6> CellGrid::neighbors(CellId c) const {
  std::array<CellId, 6> out;
  for (std::size_t i = 0; i < 6; ++i)
    out[i] = CellId{c.q + kNeighborOffsets[i].q, c.r + kNeighborOffsets[i].r};
  return out;
}

CellId CellGrid::cell_at(Vec2 p) const {
  // Fractional axial coordinates, rounded in cube space.
  const double qf = (kSqrt3 / 3.0 * p.x - p.y / 3.0) / radius_;
  const double rf = (2.0 / 3.0 * p.y) / radius_;
  const double xf = qf, zf = rf, yf = -xf - zf;
  double rx = std::round(xf), ry = std::round(yf), rz = std::round(zf);
  const double dx = std::abs(rx - xf), dy = std::abs(ry - yf),
               dz = std::abs(rz - zf);
  if (dx > dy && dx > dz) {
    rx = -ry - rz;
  } else if (dy > dz) {
    ry = -rx - rz;
  } else {
    rz = -rx - ry;
  }
  CellId best{static_cast<int>(rx), static_cast<int>(rz)};

  // The tiling is the Voronoi diagram of the cell centers: settle edge and
  // vertex cases by explicit nearest-center comparison, ties going to the
  // lexicographically smallest (q, r).
  double best_d2 = dist2(p, center(best));
  for (const CellId& n : neighbors(best)) {
    const double d2 = dist2(p, center(n));
    if (d2 < best_d2 || (d2 == best_d2 && n < best)) {
      best = n;
      best_d2 = d2;
    }
  }
  return best;
}

bool CellGrid::in_radio_disk(Vec2 p, CellId c) const {
  return dist2(p, center(c)) <= radius_ * radius_;
}

std::vector<CellId> CellGrid::prediction_region(Vec2 p, CellId current) const {
  std::vector<CellId> out;
  if (!in_radio_disk(p, current)) return out;
  for (const CellId& n : neighbors(current)) {
    if (in_radio_disk(p, n)) out.push_back(n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct PairKey {
  CellId a, b;  // a < b
  friend auto operator<=>(const PairKey&, const PairKey&) = default;
};

PairKey make_pair_key(CellId x, CellId y) {
  return x < y ? PairKey{x, y} : PairKey{y, x};
}

struct DiskInterval {
  bool hit = false;
  double t_in = 0.0;
  double t_out = 0.0;
};

// Times at which the trajectory is inside the radio disk of `cell`.
DiskInterval disk_interval(const Trajectory& traj, const CellGrid& grid,
                           CellId cell) {
  const Vec2 vel = traj.speed * traj.direction;
  const Vec2 w = traj.origin - grid.center(cell);
  const double a = dot(vel, vel);
  const double b = dot(w, vel);
  const double c = dot(w, w) - grid.circumradius() * grid.circumradius();
  const double disc = b * b - a * c;
  if (disc <= 0.0 || a <= 0.0) return {};
  const double s = std::sqrt(disc);
  return {true, (-b - s) / a, (-b + s) / a};
}

struct NextCrossing {
  double t = std::numeric_limits<double>::infinity();
  CellId into;
};

// First boundary crossing after t_now. Cell boundaries are the perpendicular
// bisectors between neighboring centers, so the crossing towards neighbor n
// solves (p(t) - midpoint) . (center(n) - center(c)) = 0.
NextCrossing next_crossing(const Trajectory& traj, const CellGrid& grid,
                           CellId current, double t_now) {
  const Vec2 vel = traj.speed * traj.direction;
  const Vec2 c0 = grid.center(current);
  NextCrossing best;
  for (const CellId& n : grid.neighbors(current)) {
    const Vec2 u = grid.center(n) - c0;
    const double vu = dot(vel, u);
    if (vu <= 0.0) continue;
    const Vec2 mid = 0.5 * (c0 + grid.center(n));
    const double t = dot(mid - traj.origin, u) / vu;
    if (t < t_now) continue;
    if (t < best.t || (t == best.t && n < best.into)) {
      best.t = t;
      best.into = n;
    }
  }
  return best;
}

struct Pending {
  CellId predicted;
  double triggered_at;
  double region_exit;  // leaves the coverage overlap at this time
};

}  // namespace

std::vector<PredictionEvent> walk_predictions(const Trajectory& traj,
                                              const CellGrid& grid) {
  std::vector<PredictionEvent> events;
  if (!(traj.holding_time >= 0.0)) return events;

  CellId current = grid.cell_at(traj.origin);
  double t = 0.0;
  std::set<PairKey> triggered;
  std::vector<Pending> pending;

  const std::size_t max_segments = 1u << 22;
  for (std::size_t step = 0; step < max_segments; ++step) {
    const NextCrossing crossing = next_crossing(traj, grid, current, t);
    const double segment_end = std::min(crossing.t, traj.holding_time);

    // Current cell's own disk bounds every overlap with its neighbors.
    const DiskInterval own = disk_interval(traj, grid, current);
    for (const CellId& n : grid.neighbors(current)) {
      const PairKey key = make_pair_key(current, n);
      if (triggered.count(key)) continue;
      const DiskInterval di = disk_interval(traj, grid, n);
      if (!di.hit) continue;
      const double enters = std::max(di.t_in, t);
      if (enters >= segment_end) continue;
      if (di.t_out <= t) continue;
      const double region_exit =
          own.hit ? std::min(di.t_out, own.t_out) : di.t_out;
      triggered.insert(key);
      pending.push_back({n, enters, region_exit});
    }

    if (traj.holding_time <= crossing.t) {
      for (const Pending& p : pending) {
        events.push_back({p.triggered_at, p.predicted,
                          PredictionOutcome::call_terminated,
                          p.region_exit < traj.holding_time});
      }
      break;
    }

    for (const Pending& p : pending) {
      events.push_back({p.triggered_at, p.predicted,
                        p.predicted == crossing.into
                            ? PredictionOutcome::correct
                            : PredictionOutcome::wrong_cell,
                        p.region_exit < crossing.t});
    }
    pending.clear();
    current = crossing.into;
    t = crossing.t;
  }
  return events;
}

namespace {

// Uniform point inside the given hexagon, by rejection from its bounding box.
Vec2 uniform_point_in_cell(const CellGrid& grid, CellId cell,
                           RandomSource& rng) {
  const Vec2 c = grid.center(cell);
  const double R = grid.circumradius();
  const double half_width = 0.5 * kSqrt3 * R;
  for (;;) {
    const Vec2 p{c.x + rng.uniform(-half_width, half_width),
                 c.y + rng.uniform(-R, R)};
    if (grid.cell_at(p) == cell) return p;
  }
}

Vec2 uniform_direction(RandomSource& rng) {
  const double angle = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
  return {std::cos(angle), std::sin(angle)};
}

double ci_halfwidth(double p, std::size_t n) {
  if (n == 0) return 0.0;
  return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace

OutcomeRates simulate_prediction_outcomes(const PredictionSimParams& params) {
  if (!(params.rho > 0.0)) throw std::invalid_argument("rho must be > 0");
  if (!(params.speed > 0.0)) throw std::invalid_argument("speed must be > 0");
  if (!(params.mean_residence_ms > 0.0))
    throw std::invalid_argument("mean residence must be > 0 (calibrate first)");
  if (params.trials == 0) throw std::invalid_argument("trials must be >= 1");

  const ExponentialTimer holding(params.rho / params.mean_residence_ms);

  std::size_t correct = 0, wrong = 0, terminated = 0, traversed = 0;
  for (std::size_t i = 0; i < params.trials; ++i) {
    RandomSource rng = RandomSource::substream(params.master_seed, i);
    Trajectory traj;
    traj.origin = uniform_point_in_cell(params.grid, params.spawn_cell, rng);
    traj.direction = uniform_direction(rng);
    traj.speed = params.speed;
    traj.holding_time = holding.sample(rng);
    for (const PredictionEvent& ev : walk_predictions(traj, params.grid)) {
      switch (ev.outcome) {
        case PredictionOutcome::correct:
          ++correct;
          break;
        case PredictionOutcome::wrong_cell:
          ++wrong;
          break;
        case PredictionOutcome::call_terminated:
          ++terminated;
          break;
      }
      if (ev.traversed_without_change) ++traversed;
    }
  }

  OutcomeRates rates;
  rates.trials = params.trials;
  rates.events = correct + wrong + terminated;
  if (rates.events > 0) {
    const double n = static_cast<double>(rates.events);
    rates.correct = static_cast<double>(correct) / n;
    rates.wrong_cell = static_cast<double>(wrong) / n;
    rates.call_terminated = static_cast<double>(terminated) / n;
    rates.traversal_without_change = static_cast<double>(traversed) / n;
    rates.correct_ci = ci_halfwidth(rates.correct, rates.events);
    rates.wrong_cell_ci = ci_halfwidth(rates.wrong_cell, rates.events);
    rates.call_terminated_ci = ci_halfwidth(rates.call_terminated, rates.events);
  }
  return rates;
}

double measure_residence_time(const CellGrid& grid, double speed,
                              std::size_t trajectories, std::uint64_t seed,
                              std::size_t crossings_per_trajectory) {
  if (!(speed > 0.0)) throw std::invalid_argument("speed must be > 0");
  if (trajectories == 0 || crossings_per_trajectory == 0)
    throw std::invalid_argument("need at least one trajectory and crossing");

  long double total = 0.0;
  std::size_t segments = 0;
  for (std::size_t i = 0; i < trajectories; ++i) {
    RandomSource rng = RandomSource::substream(seed, i);
    Trajectory traj;
    traj.origin = uniform_point_in_cell(grid, CellId{0, 0}, rng);
    traj.direction = uniform_direction(rng);
    traj.speed = speed;
    traj.holding_time = std::numeric_limits<double>::infinity();

    CellId current = grid.cell_at(traj.origin);
    double t = 0.0;
    double previous_crossing = -1.0;
    for (std::size_t c = 0; c < crossings_per_trajectory + 1; ++c) {
      const NextCrossing crossing = next_crossing(traj, grid, current, t);
      if (!std::isfinite(crossing.t)) break;
      if (previous_crossing >= 0.0) {
        total += crossing.t - previous_crossing;
        ++segments;
      }
      previous_crossing = crossing.t;
      current = crossing.into;
      t = crossing.t;
    }
  }
  if (segments == 0) throw std::runtime_error("no full residences measured");
  return static_cast<double>(total / segments);
}

double count_handovers(const analytic::MobilityParams& params,
                       std::size_t trials, std::uint64_t master_seed) {
  if (!(params.rho > 0.0))
    throw std::domain_error("handover count diverges at rho = 0");
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");

  const ExponentialTimer residence(
      analytic::map_residence_scaling(params.eta, params.k));
  const ExponentialTimer holding(params.alpha);

  long double acc = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    RandomSource rng = RandomSource::substream(master_seed, i);
    double remaining = holding.sample(rng);
    std::uint64_t n = 0;
    for (;;) {
      const double r = residence.sample(rng);
      if (r < remaining) {
        remaining -= r;
        ++n;
      } else {
        break;
      }
    }
    acc += 0.5L * static_cast<long double>(n) * static_cast<long double>(n + 1);
  }
  return static_cast<double>(acc / static_cast<long double>(trials));
}

}  // namespace hosim::mobility
