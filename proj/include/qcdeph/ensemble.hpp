#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qcdeph/states.hpp"

namespace qcdeph {

/// States whose negativity exceeds this are counted as NPT (entangled).
inline constexpr double kNptThreshold = 1e-9;

struct EnsembleConfig {
  std::size_t n_states = 100;
  std::uint64_t master_seed = 0;
  std::vector<double> grid = default_grid();

  /// 0 to 10 in steps of 0.05, plus a sentinel at 50 for the asymptotic check.
  static std::vector<double> default_grid();

  /// Throws InvalidParams unless n_states >= 1 and the grid is strictly
  /// increasing with a non-negative first point.
  void validate() const;
};

/// Descriptive band mean +- sqrt(variance), variance taken over the population.
struct ConfidenceInterval {
  double mean;
  double variance;
  double half_width;

  double lo() const { return mean - half_width; }
  double hi() const { return mean + half_width; }
};

ConfidenceInterval confidence_interval(std::span<const double> values);

struct BandPoint {
  double gamma_t;
  ConfidenceInterval ci;
};

struct EnsembleSummary {
  std::vector<BandPoint> band;                   // one per grid point
  std::vector<std::vector<double>> trajectories; // [state][grid point] negativity
  std::vector<double> asymptotic_negativity;     // per state, at xi = 0
  double entangled_fraction = 0.0;
};

struct AsymptoticClass {
  double negativity;
  bool is_npt;
};

/// Negativity of the xi = 0 limit of rho0.
AsymptoticClass classify_asymptotic(const DensityMatrixd& rho0);

/// Worker count from QCDEPH_THREADS when it holds a positive integer,
/// otherwise the hardware concurrency (at least 1).
unsigned default_worker_count();

/// Evolves cfg.n_states Haar-random pure states (state i drawn from Philox
/// substream i of cfg.master_seed) across cfg.grid. The result does not
/// depend on `workers`; 0 selects default_worker_count().
EnsembleSummary run_ensemble(const EnsembleConfig& cfg, unsigned workers = 0);

}  // namespace qcdeph
