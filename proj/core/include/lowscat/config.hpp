#pragma once

#include "lowscat/numerics.hpp"
#include "lowscat/potential.hpp"

namespace lowscat {

/// Every tunable default in one place. Outputs echo this block.
struct Config {
  OdeTolerances ode{1e-10, 1e-12};
  GridOptions grid{};
  /// |M22| at or below this is reported as a spectral singularity.
  double amplitude_atol = 1e-12;
  /// Resonance threshold on the scaled |b1| (or |b2| on the half-line).
  double tau = 1e-8;
  double eps_tail = 1e-12;
  /// Highest order the truncation window must support.
  int max_order = 3;
  /// Contour radius for Cauchy coefficient extraction, times 1/(window width).
  double contour_radius = 0.05;
  int contour_nodes = 64;
};

inline Config default_config() { return Config{}; }

/// Tolerances used where k is small and M ~ 1/k amplifies integration error.
inline constexpr OdeTolerances kTightOde{1e-13, 1e-15};

}  // namespace lowscat
