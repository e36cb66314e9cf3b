#include "qcdeph/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "qcdeph/channel.hpp"
#include "qcdeph/correlations.hpp"
#include "qcdeph/parallel.hpp"

namespace qcdeph {

std::vector<double> EnsembleConfig::default_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 200; ++i) grid.push_back(0.05 * i);
  grid.push_back(50.0);
  return grid;
}

void EnsembleConfig::validate() const {
  if (n_states < 1) throw Error(ErrorCode::InvalidParams, "n_states must be >= 1");
  if (grid.empty()) throw Error(ErrorCode::InvalidParams, "grid must not be empty");
  if (!(grid.front() >= 0.0)) throw Error(ErrorCode::InvalidParams, "grid must start at gamma_t >= 0");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw Error(ErrorCode::InvalidParams, "grid must be strictly increasing");
  }
}

ConfidenceInterval confidence_interval(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::EmptyInput, "confidence_interval: no values");
  const auto n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  const double variance = sq / n;
  return {mean, variance, std::sqrt(variance)};
}

AsymptoticClass classify_asymptotic(const DensityMatrixd& rho0) {
  const double n = negativity(asymptotic_state(rho0));
  return {n, n > kNptThreshold};
}

unsigned default_worker_count() {
  if (const char* env = std::getenv("QCDEPH_THREADS")) {
    try {
      std::size_t used = 0;
      const long v = std::stol(env, &used);
      if (used == std::string(env).size() && v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct StateResult {
  std::vector<double> trajectory;
  double asymptotic = 0.0;
};

StateResult evolve_state(const EnsembleConfig& cfg, std::size_t index) {
  const DensityMatrixd rho0 = random_pure_state(cfg.master_seed, index);
  StateResult r;
  r.trajectory.reserve(cfg.grid.size());
  for (double gt : cfg.grid) r.trajectory.push_back(negativity(dephase(rho0, DephasingPoint<double>(gt))));
  r.asymptotic = classify_asymptotic(rho0).negativity;
  return r;
}

}  // namespace

EnsembleSummary run_ensemble(const EnsembleConfig& cfg, unsigned workers) {
  cfg.validate();
  if (workers == 0) workers = default_worker_count();

  std::vector<StateResult> results(cfg.n_states);
  parallel_for(cfg.n_states, workers, [&](std::size_t i) { results[i] = evolve_state(cfg, i); });

  EnsembleSummary out;
  out.trajectories.reserve(cfg.n_states);
  out.asymptotic_negativity.reserve(cfg.n_states);
  std::size_t npt = 0;
  for (auto& r : results) {
    out.asymptotic_negativity.push_back(r.asymptotic);
    if (r.asymptotic > kNptThreshold) ++npt;
    out.trajectories.push_back(std::move(r.trajectory));
  }
  out.entangled_fraction = static_cast<double>(npt) / static_cast<double>(cfg.n_states);

  std::vector<double> column(cfg.n_states);
  out.band.reserve(cfg.grid.size());
  for (std::size_t g = 0; g < cfg.grid.size(); ++g) {
    for (std::size_t s = 0; s < cfg.n_states; ++s) column[s] = out.trajectories[s][g];
    out.band.push_back({cfg.grid[g], confidence_interval(column)});
  }
  return out;
}

}  // namespace qcdeph
