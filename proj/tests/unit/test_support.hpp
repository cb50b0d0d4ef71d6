#pragma once

#include <cmath>
#include <complex>

#include "lowscat/numerics.hpp"
#include "lowscat/potential.hpp"

namespace testing {

using lowscat::Complex;
using lowscat::Mat2C;

inline double err(Complex a, Complex b) { return std::abs(a - b); }
inline double err(const Mat2C& a, const Mat2C& b) { return (a - b).max_abs(); }
/// v = 0, carried as a zero-valued segment (a spec needs at least one term).
inline lowscat::PotentialSpec free_space(double ell = 1.0) {
  return lowscat::make_barrier(0.0, -0.5, 1.0, ell);
}

inline double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace testing
