#pragma once

#include <cmath>
#include <stdexcept>

#include "hosim/rng.hpp"

namespace hosim {

// Random duration with mean <x> and perturbation xi: drawn uniformly from
// [mean - xi, mean + xi] and clamped at zero. xi = 0 yields the mean exactly.
struct PerturbedTimer {
  double mean_ms = 0.0;
  double perturbation_ms = 0.0;

  PerturbedTimer() = default;

  PerturbedTimer(double mean, double perturbation)
      : mean_ms(mean), perturbation_ms(perturbation) {
    if (!(mean >= 0.0)) throw std::invalid_argument("timer mean must be >= 0");
    if (!(perturbation >= 0.0))
      throw std::invalid_argument("timer perturbation must be >= 0");
  }

  double min_draw() const {
    return mean_ms - perturbation_ms > 0.0 ? mean_ms - perturbation_ms : 0.0;
  }
  double max_draw() const { return mean_ms + perturbation_ms; }

  double sample(RandomSource& rng) const {
    const double u = rng.uniform01();
    const double value = mean_ms + perturbation_ms * (2.0 * u - 1.0);
    return value > 0.0 ? value : 0.0;
  }
};

// Inverse CDF of Exp(rate); u in [0, 1).
inline double exponential_quantile(double rate_per_ms, double u) {
  return -std::log1p(-u) / rate_per_ms;
}

// Exponentially distributed duration, sampled by inversion.
struct ExponentialTimer {
  double rate_per_ms;

  explicit ExponentialTimer(double rate) : rate_per_ms(rate) {
    if (!(rate > 0.0))
      throw std::invalid_argument("exponential rate must be > 0");
  }

  double sample(RandomSource& rng) const {
    return exponential_quantile(rate_per_ms, rng.uniform01());
  }
};

}  // namespace hosim
