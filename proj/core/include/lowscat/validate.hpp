#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lowscat/config.hpp"

namespace lowscat {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  /// Informational lines that do not affect `passed`.
  std::vector<std::string> notes;
};

struct ValidationOptions {
  Config config{};
  std::uint64_t seed = 20240611;
  int property_cases = 1000;
};

CriterionResult criterion_barrier_transfer(const ValidationOptions& opt);
CriterionResult criterion_zero_energy_coefficients(const ValidationOptions& opt);
CriterionResult criterion_laurent_remainder(const ValidationOptions& opt);
CriterionResult criterion_contour_cross_check(const ValidationOptions& opt);
CriterionResult criterion_delta_series(const ValidationOptions& opt);
CriterionResult criterion_resonance_physics(const ValidationOptions& opt);
CriterionResult criterion_dyson_m0(const ValidationOptions& opt);
CriterionResult criterion_half_line(const ValidationOptions& opt);
CriterionResult criterion_invariants(const ValidationOptions& opt);
CriterionResult criterion_properties(const ValidationOptions& opt);

/// Criteria 1-10 in order.
std::vector<CriterionResult> run_validation(const ValidationOptions& opt = {});

/// "PASS  3  name  detail (0.12 s)"; notes follow on indented lines.
std::string format_result(const CriterionResult& r);

}  // namespace lowscat
