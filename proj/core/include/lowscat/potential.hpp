#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lowscat/numerics.hpp"

namespace lowscat {

/// z * delta(x - center); strength has units 1/length.
struct DeltaTerm {
  Complex strength;
  double center = 0.0;
  friend bool operator==(const DeltaTerm&, const DeltaTerm&) = default;
};

struct Segment {
  double x_lo = 0.0;
  double x_hi = 0.0;
  Complex value;  // 1/length^2
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Constant values on closed, pairwise non-overlapping intervals.
struct PiecewiseConstantTerm {
  std::vector<Segment> segments;
  friend bool operator==(const PiecewiseConstantTerm&, const PiecewiseConstantTerm&) = default;
};

/// Linearly interpolated samples, zero outside [x.front(), x.back()].
struct SampledTerm {
  Grid grid;
  friend bool operator==(const SampledTerm& a, const SampledTerm& b) {
    return a.grid.nodes == b.grid.nodes && a.grid.values == b.grid.values;
  }
};

using PotentialTerm = std::variant<DeltaTerm, PiecewiseConstantTerm, SampledTerm>;

/// |v(x)| <= C exp(-mu |x|) outside the explicitly represented data.
struct TailBound {
  double mu = 0.0;
  double C = 0.0;
  friend bool operator==(const TailBound&, const TailBound&) = default;
};

struct PotentialSpec {
  std::vector<PotentialTerm> terms;
  double ell = 1.0;
  std::optional<TailBound> tail;

  /// Throws InvalidInput on any violated invariant.
  void validate() const;
  bool has_deltas() const;
  /// True when every term is real-valued.
  bool is_real() const;

  friend bool operator==(const PotentialSpec&, const PotentialSpec&) = default;
};

struct SupportWindow {
  double x_minus = 0.0;
  double x_plus = 0.0;
  double width() const { return x_plus - x_minus; }
  bool contains(double x) const { return x >= x_minus && x <= x_plus; }
};

/// Parses the JSON potential format:
///   {"ell": n, "tail": {"mu": n, "C": n}?, "terms": [...]}
/// with each term exactly one of
///   {"delta": {"strength": [re, im], "center": n}}
///   {"piecewise": [{"xlo": n, "xhi": n, "value": [re, im]}, ...]}
///   {"sampled": {"x": [...], "v": [[re, im], ...]}}
/// Unknown keys are rejected. Errors carry the offending path.
PotentialSpec parse_potential(std::string_view text);

/// Inverse of parse_potential; numbers are written with 17 significant digits.
std::string serialize_potential(const PotentialSpec& spec);

/// Smooth part of v at x (delta terms excluded). Segments are closed intervals.
Complex evaluate(const PotentialSpec& spec, double x);

/// Smallest interval containing every term's support.
SupportWindow support_hull(const PotentialSpec& spec);

/// Window outside of which the moment-weighted potential
/// |v(x)| (1 + |x|)^(2 max_order + 1) stays below eps_tail.
/// Finite-range specs get their support hull. A degenerate hull (single
/// delta) is padded by ell/2 on both sides.
SupportWindow truncate(const PotentialSpec& spec, double eps_tail, int max_order);

/// Builders for the two families with closed forms.
PotentialSpec make_barrier(Complex z, double a, double L, double ell);
PotentialSpec make_delta(Complex z, double a, double ell);

// ---------------------------------------------------------------------------
// Partition of a window into smooth panels.

struct GridOptions {
  /// Node count floor for a panel spanning the whole window.
  int min_intervals = 1024;
  /// Nodes per unit of sqrt|v| (and of |k|) per unit length.
  double density = 400.0;
  int min_panel_intervals = 8;
  int max_panel_intervals = 200000;
};

/// A maximal sub-interval on which the smooth part of v is continuous.
struct Panel {
  double lo = 0.0;
  double hi = 0.0;
  bool vanishes = true;
  std::size_t first = 0;  // node index range [first, last]
  std::size_t last = 0;
};

/// Window split at delta centres, segment ends and sample nodes, with a
/// uniform node grid on every panel. Neighbouring panels duplicate the
/// joint position so that left and right limits are both stored. Delta
/// terms sit on joins; a delta at a window end gets a zero-width panel.
class Partition {
 public:
  Partition(const PotentialSpec& spec, SupportWindow window, const GridOptions& opts = {},
            double k_scale = 0.0);

  const PotentialSpec& spec() const { return spec_; }
  SupportWindow window() const { return window_; }
  const std::vector<Panel>& panels() const { return panels_; }
  /// join_strength()[p] is the delta strength between panel p and p + 1.
  const std::vector<Complex>& join_strength() const { return joins_; }
  const std::vector<double>& x() const { return x_; }
  /// Smooth potential at each node, taken as the limit from inside its panel.
  const std::vector<Complex>& v() const { return v_; }
  std::size_t size() const { return x_.size(); }

  /// Smooth potential at x inside panel p (one-sided at the panel ends).
  Complex potential(std::size_t p, double x) const;
  /// Panel containing x; ties at joins resolve to the left panel.
  std::size_t locate(double x) const;

  /// Running integral of v(x) f(x) dx from x_minus to every node, including
  /// the delta contributions z f(a) (f taken at the left node of the join).
  template <class T>
  std::vector<T> cumulate_against_v(std::span<const T> f) const;

 private:
  PotentialSpec spec_;
  SupportWindow window_;
  std::vector<Panel> panels_;
  std::vector<Complex> joins_;
  std::vector<double> x_;
  std::vector<Complex> v_;
  // Per panel: indices of the piecewise segments / sampled terms active on it.
  std::vector<Complex> panel_constant_;
  std::vector<std::vector<std::size_t>> panel_samples_;
};

template <class T>
std::vector<T> Partition::cumulate_against_v(std::span<const T> f) const {
  std::vector<T> out(x_.size());
  std::vector<T> integrand;
  T running{};
  for (std::size_t p = 0; p < panels_.size(); ++p) {
    const Panel& pn = panels_[p];
    if (p > 0) {
      const Complex z = joins_[p - 1];
      if (z != Complex{}) running += f[panels_[p - 1].last] * z;
    }
    const std::size_t n = pn.last - pn.first;
    if (pn.vanishes || n == 0) {
      for (std::size_t i = pn.first; i <= pn.last; ++i) out[i] = running;
      continue;
    }
    integrand.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) integrand[i] = f[pn.first + i] * v_[pn.first + i];
    const double h = (pn.hi - pn.lo) / static_cast<double>(n);
    cumulative_uniform<T>(std::span<const T>(integrand), h, running,
                          std::span<T>(out.data() + pn.first, n + 1));
    running = out[pn.last];
  }
  return out;
}

}  // namespace lowscat
