#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lowscat/config.hpp"
#include "lowscat/potential.hpp"

namespace lowscat {

/// Deterministic generator; values do not depend on the standard library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0);
  int integer(int lo, int hi);  // inclusive
  Complex disk(double radius);
  double log_uniform(double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

/// 1-3 non-overlapping constant segments inside [lo, hi].
PotentialSpec random_piecewise(Rng& rng, double lo, double hi, double vmax, bool real, double ell);
/// 2-4 deltas inside [lo, hi].
PotentialSpec random_delta_train(Rng& rng, double lo, double hi, double zmax, bool real, double ell);
/// Piecewise segments, a few deltas and a sampled bump vanishing at its ends.
PotentialSpec random_mixed(Rng& rng, double lo, double hi, double vmax, bool real, double ell);

struct PropertyReport {
  std::string module;
  int cases = 0;
  int checks = 0;
  int failures = 0;
  std::string first_failure;
  double seconds = 0.0;
  bool passed() const { return failures == 0 && cases > 0; }
};

PropertyReport check_numerics_properties(std::uint64_t seed, int cases, const Config& cfg = {});
PropertyReport check_potential_properties(std::uint64_t seed, int cases, const Config& cfg = {});
PropertyReport check_propagate_properties(std::uint64_t seed, int cases, const Config& cfg = {});
PropertyReport check_zeroenergy_properties(std::uint64_t seed, int cases, const Config& cfg = {});
PropertyReport check_lowenergy_properties(std::uint64_t seed, int cases, const Config& cfg = {});
PropertyReport check_halfline_properties(std::uint64_t seed, int cases, const Config& cfg = {});
PropertyReport check_oracles_properties(std::uint64_t seed, int cases, const Config& cfg = {});

std::vector<PropertyReport> check_all_properties(std::uint64_t seed, int cases,
                                                 const Config& cfg = {});

/// Least-squares slope of log(err) against log(k).
double loglog_slope(const std::vector<double>& k, const std::vector<double>& err);

/// Checks err[n+1] <= err[n] for n >= from whenever err[n+1] is above
/// `floor` (the discretisation level, below which values are noise).
/// Returns the first offending index or -1.
int first_monotonicity_violation(const std::vector<double>& err, int from, double floor);

}  // namespace lowscat
