#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lowscat/config.hpp"
#include "lowscat/numerics.hpp"

namespace lowscat::cli {

enum class Command { transfer, amplitudes, lowenergy, zero, halfline, validate };

struct KGrid {
  double min = 0.0;
  double max = 0.0;
  int count = 0;
  bool log = false;

  std::vector<double> values() const;
};

struct RunConfig {
  Command command = Command::transfer;
  std::string potential_path;
  std::optional<KGrid> k_grid;
  int order = 3;
  std::optional<double> ell_override;
  Config tolerances = default_config();
  std::optional<Complex> alpha, beta;
  std::string format = "json";  // json | csv
  std::string out_path;         // empty: standard output
  int threads = 0;              // 0: hardware concurrency
};

/// "min:max:count[:log]". Throws ConfigurationError.
KGrid parse_k_grid(const std::string& text);

/// "re,im" or "re". Throws ConfigurationError.
Complex parse_complex(const std::string& text);

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitConfiguration = 2;

/// Full entry point; argv[0] is the program name.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

/// Applies f to 0..n-1 on up to `threads` workers; results keep index order.
/// The exception of the lowest failing index is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t n, int threads, const std::function<T(std::size_t)>& f);

}  // namespace lowscat::cli

#include "lowscat_cli/parallel.inl"
