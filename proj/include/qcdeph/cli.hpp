#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcdeph/io.hpp"
#include "qcdeph/states.hpp"

namespace qcdeph::cli {

/// Process exit codes.
enum ExitCode : int { kOk = 0, kBadParams = 2, kParseFailure = 3, kInvariantFailure = 4 };

enum class Family { TwoParam, DfsMix, IsoMix };

Family parse_family(std::string_view name);

/// "start:stop:step" with step > 0, stop >= start >= 0.
struct Grid {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  static Grid parse(std::string_view text);
  void validate() const;
  /// start + i * step for every i with start + i * step <= stop (+ 1e-9 step slack).
  std::vector<double> points() const;
};

struct FamilySweepSpec {
  Family family = Family::TwoParam;
  std::optional<double> alpha;
  std::optional<double> gamma;
  std::optional<double> beta;
  Grid grid;
};

/// One row per grid point: gamma_t,negativity,classical,discord,lqu followed
/// by whichever closed-form columns the family has (negativity_cf,
/// discord_cf, lqu_cf in that order). Throws InvalidParams for missing,
/// superfluous or out-of-range parameters.
io::CsvTable run_family_sweep(const FamilySweepSpec& spec);

struct RandomSpec {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<double> grid;
};

struct RandomTables {
  io::CsvTable summary;  // gamma_t,mean,lo,hi
  io::CsvTable bars;     // state_index,asymptotic_negativity
};

RandomTables run_random(const RandomSpec& spec, unsigned workers = 0);

/// Single row gamma_t,negativity,classical,discord,lqu for rho0 evolved to gamma_t.
io::CsvTable run_state(const DensityMatrixd& rho0, double gamma_t);

/// Companion path for the per-state bar data: "<stem>_bars<ext>" beside `out`.
std::string default_bars_path(const std::string& out);

/// Entry point of the qcdeph executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcdeph::cli
