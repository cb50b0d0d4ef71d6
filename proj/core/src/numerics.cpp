#include "lowscat/numerics.hpp"

#include <string>

namespace lowscat {

bool Mat2C::finite() const {
  auto ok = [](Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); };
  return ok(m11) && ok(m12) && ok(m21) && ok(m22);
}

StructuralConstants structural_constants() {
  StructuralConstants s;
  s.I = Mat2C::identity();
  s.sigma1 = {0.0, 1.0, 1.0, 0.0};
  s.sigma2 = {0.0, -kI, kI, 0.0};
  s.sigma3 = {1.0, 0.0, 0.0, -1.0};
  s.K = {1.0, 1.0, -1.0, -1.0};
  s.KT = s.K.transpose();
  s.Gamma = {1.0, -1.0, 0.0, 0.0};
  s.Delta = {1.0, 1.0, 0.0, 0.0};
  return s;
}

void Grid::validate() const {
  if (nodes.size() != values.size()) {
    throw InvalidInput("grid has " + std::to_string(nodes.size()) + " nodes but " +
                       std::to_string(values.size()) + " values");
  }
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes[i] > nodes[i - 1])) throw InvalidInput("grid nodes must be strictly increasing");
  }
}

IntervalStencil interval_stencil(std::size_t i, std::size_t n) {
  if (n == 1) return {0, {0.5, 0.5, 0.0, 0.0}, 2};
  if (n == 2) {
    if (i == 0) return {0, {5.0 / 12, 8.0 / 12, -1.0 / 12, 0.0}, 3};
    return {-1, {-1.0 / 12, 8.0 / 12, 5.0 / 12, 0.0}, 3};
  }
  if (i == 0) return {0, {9.0 / 24, 19.0 / 24, -5.0 / 24, 1.0 / 24}, 4};
  if (i + 1 == n) return {-2, {1.0 / 24, -5.0 / 24, 19.0 / 24, 9.0 / 24}, 4};
  return {-1, {-1.0 / 24, 13.0 / 24, 13.0 / 24, -1.0 / 24}, 4};
}

namespace {

struct Run {
  std::size_t first;  // node index
  std::size_t last;   // node index (inclusive), last > first
};

// Maximal runs of (relatively) equal spacing. Adjacent runs share a node.
std::vector<Run> uniform_runs(const std::vector<double>& x) {
  std::vector<Run> runs;
  std::size_t start = 0;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    const double h0 = x[start + 1] - x[start];
    const double hi = x[i + 1] - x[i];
    if (std::abs(hi - h0) > 1e-8 * std::abs(h0)) {
      runs.push_back({start, i});
      start = i;
    }
  }
  runs.push_back({start, x.size() - 1});
  return runs;
}

}  // namespace

QuadResult quad(const Grid& grid) {
  grid.validate();
  if (grid.nodes.size() < 2) throw InvalidInput("quadrature needs at least 2 nodes");
  const auto& x = grid.nodes;
  const auto& f = grid.values;

  QuadResult out{};
  for (const Run& r : uniform_runs(x)) {
    const std::size_t n = r.last - r.first;
    const double h = (x[r.last] - x[r.first]) / static_cast<double>(n);
    if (n == 1) {
      out.value += 0.5 * h * (f[r.first] + f[r.last]);
      out.error_estimate += 0.5 * std::abs(h) * std::abs(f[r.last] - f[r.first]);
      continue;
    }
    // Even number of intervals gets trapezoid + Richardson; an odd leftover
    // interval uses the cubic stencil.
    const std::size_t even = n - (n % 2);
    Complex th{}, t2h{};
    for (std::size_t i = 0; i < even; ++i) th += 0.5 * h * (f[r.first + i] + f[r.first + i + 1]);
    for (std::size_t i = 0; i < even; i += 2)
      t2h += h * (f[r.first + i] + f[r.first + i + 2]);
    out.value += th + (th - t2h) / 3.0;
    out.error_estimate += std::abs(th - t2h) / 3.0;
    if (even != n) {
      const IntervalStencil st = interval_stencil(n - 1, n);
      Complex acc{};
      for (int j = 0; j < st.count; ++j)
        acc += st.w[j] * f[r.first + (n - 1) + static_cast<std::size_t>(st.offset + j)];
      out.value += h * acc;
      out.error_estimate +=
          std::abs(h * acc - 0.5 * h * (f[r.last - 1] + f[r.last])) / 10.0;
    }
  }
  return out;
}

std::vector<Complex> cumulative_quad(const Grid& grid) {
  grid.validate();
  if (grid.nodes.size() < 2) throw InvalidInput("quadrature needs at least 2 nodes");
  std::vector<Complex> out(grid.nodes.size());
  out[0] = 0.0;
  for (const Run& r : uniform_runs(grid.nodes)) {
    const std::size_t n = r.last - r.first;
    const double h = (grid.nodes[r.last] - grid.nodes[r.first]) / static_cast<double>(n);
    std::span<const Complex> vals(grid.values.data() + r.first, n + 1);
    std::span<Complex> dst(out.data() + r.first, n + 1);
    cumulative_uniform<Complex>(vals, h, out[r.first], dst);
  }
  return out;
}

namespace detail {

double ode_error_norm(const Mat2C& err, const Mat2C& y0, const Mat2C& y1,
                      const OdeTolerances& tol) {
  auto one = [&](Complex e, Complex a, Complex b) {
    return std::abs(e) / (tol.atol + tol.rtol * std::max(std::abs(a), std::abs(b)));
  };
  return std::max({one(err.m11, y0.m11, y1.m11), one(err.m12, y0.m12, y1.m12),
                   one(err.m21, y0.m21, y1.m21), one(err.m22, y0.m22, y1.m22)});
}

}  // namespace detail

}  // namespace lowscat
