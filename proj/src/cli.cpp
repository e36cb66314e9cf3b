#include "qcdeph/cli.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qcdeph/channel.hpp"
#include "qcdeph/correlations.hpp"
#include "qcdeph/ensemble.hpp"
#include "qcdeph/parallel.hpp"

namespace qcdeph::cli {

namespace {

Error bad(const std::string& msg) { return Error(ErrorCode::InvalidParams, msg); }

double parse_double(std::string_view text, const char* what) {
  const std::string s(text);
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw bad(std::string("grid ") + what + " is not a number: '" + s + "'");
}

double require(const std::optional<double>& v, const char* flag, const char* family) {
  if (!v) throw bad(std::string(family) + " requires " + flag);
  return *v;
}

void forbid(const std::optional<double>& v, const char* flag, const char* family) {
  if (v) throw bad(std::string(family) + " does not take " + flag);
}

const std::vector<std::string> kMeasureColumns{"gamma_t", "negativity", "classical", "discord", "lqu"};

std::vector<double> measures_row(const DensityMatrixd& rho, double gamma_t) {
  const auto r = evaluate_correlations(rho, gamma_t);
  return {r.gamma_t, r.negativity, r.classical, r.discord, r.lqu};
}

template <typename RowFn>
std::vector<std::vector<double>> sweep_rows(const std::vector<double>& pts, RowFn&& row) {
  std::vector<std::vector<double>> rows(pts.size());
  parallel_for(pts.size(), default_worker_count(), [&](std::size_t i) { rows[i] = row(pts[i]); });
  return rows;
}

}  // namespace

Family parse_family(std::string_view name) {
  if (name == "two-param") return Family::TwoParam;
  if (name == "dfs-mix") return Family::DfsMix;
  if (name == "iso-mix") return Family::IsoMix;
  throw bad("unknown family '" + std::string(name) + "' (expected two-param, dfs-mix or iso-mix)");
}

Grid Grid::parse(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
    throw bad("--grid must look like start:stop:step, got '" + std::string(text) + "'");
  }
  Grid g{parse_double(text.substr(0, first), "start"), parse_double(text.substr(first + 1, second - first - 1), "stop"),
         parse_double(text.substr(second + 1), "step")};
  g.validate();
  return g;
}

void Grid::validate() const {
  if (!(step > 0.0)) throw bad("grid step must be > 0");
  if (!(start >= 0.0)) throw bad("grid start must be >= 0");
  if (!(stop >= start)) throw bad("grid stop must be >= start");
}

std::vector<double> Grid::points() const {
  validate();
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) pts.push_back(start + static_cast<double>(i) * step);
  return pts;
}

io::CsvTable run_family_sweep(const FamilySweepSpec& spec) {
  io::CsvTable table;
  table.columns = kMeasureColumns;
  const auto pts = spec.grid.points();

  switch (spec.family) {
    case Family::TwoParam: {
      forbid(spec.beta, "--beta (beta is fixed by 2 alpha + 3 beta + gamma = 1)", "two-param");
      const auto f = TwoParamFamily<double>::make(require(spec.alpha, "--alpha", "two-param"),
                                                  require(spec.gamma, "--gamma", "two-param"));
      const auto rho0 = two_param_state(f);
      table.columns.insert(table.columns.end(), {"negativity_cf", "discord_cf", "lqu_cf"});
      table.rows = sweep_rows(pts, [&](double gt) {
        const DephasingPoint<double> p(gt);
        auto row = measures_row(dephase(rho0, p), gt);
        row.insert(row.end(), {negativity_closed_form_two_param(f, p), discord_closed_form(f, p),
                               lqu_closed_form_two_param(f, p)});
        return row;
      });
      break;
    }
    case Family::DfsMix: {
      forbid(spec.gamma, "--gamma", "dfs-mix");
      forbid(spec.beta, "--beta", "dfs-mix");
      const auto f = DfsMixFamily<double>::make(require(spec.alpha, "--alpha", "dfs-mix"));
      const auto rho0 = dfs_mix_state(f);
      table.columns.insert(table.columns.end(), {"negativity_cf", "lqu_cf"});
      table.rows = sweep_rows(pts, [&](double gt) {
        const DephasingPoint<double> p(gt);
        auto row = measures_row(dephase(rho0, p), gt);
        row.insert(row.end(), {negativity_closed_form_dfs_mix(f, p), lqu_closed_form_dfs_mix(f, p)});
        return row;
      });
      break;
    }
    case Family::IsoMix: {
      forbid(spec.gamma, "--gamma", "iso-mix");
      const auto f = IsoMixFamily<double>::make(require(spec.alpha, "--alpha", "iso-mix"),
                                                require(spec.beta, "--beta", "iso-mix"));
      const auto rho0 = iso_mix_state(f);
      table.columns.emplace_back("negativity_cf");
      table.rows = sweep_rows(pts, [&](double gt) {
        const DephasingPoint<double> p(gt);
        auto row = measures_row(dephase(rho0, p), gt);
        row.push_back(negativity_closed_form_iso_mix(f, p));
        return row;
      });
      break;
    }
  }
  return table;
}

RandomTables run_random(const RandomSpec& spec, unsigned workers) {
  if (spec.n < 1) throw bad("--n must be >= 1");
  EnsembleConfig cfg;
  cfg.n_states = spec.n;
  cfg.master_seed = spec.seed;
  cfg.grid = spec.grid.empty() ? EnsembleConfig::default_grid() : spec.grid;
  const auto summary = run_ensemble(cfg, workers);

  RandomTables out;
  out.summary.columns = {"gamma_t", "mean", "lo", "hi"};
  for (const auto& b : summary.band) out.summary.rows.push_back({b.gamma_t, b.ci.mean, b.ci.lo(), b.ci.hi()});
  out.bars.columns = {"state_index", "asymptotic_negativity"};
  for (std::size_t i = 0; i < summary.asymptotic_negativity.size(); ++i) {
    out.bars.rows.push_back({static_cast<double>(i), summary.asymptotic_negativity[i]});
  }
  return out;
}

io::CsvTable run_state(const DensityMatrixd& rho0, double gamma_t) {
  const DephasingPoint<double> p(gamma_t);
  return {kMeasureColumns, {measures_row(dephase(rho0, p), gamma_t)}};
}

std::string default_bars_path(const std::string& out) {
  const std::filesystem::path p(out);
  return (p.parent_path() / (p.stem().string() + "_bars" + p.extension().string())).string();
}

namespace {

std::optional<double> optional_value(const CLI::Option* opt, double value) {
  return opt->count() > 0 ? std::optional<double>(value) : std::nullopt;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Qubit-qutrit correlations under collective dephasing"};
  app.require_subcommand(1);

  double alpha = 0, gamma = 0, beta = 0, gamma_t = 0;
  std::string family_name, grid_text, out_path, bars_path, state_path;
  std::size_t n_states = 0;
  std::uint64_t seed = 0;

  auto* family = app.add_subcommand("family", "Sweep a named state family over a gamma_t grid");
  family->add_option("name", family_name, "two-param | dfs-mix | iso-mix")->required();
  auto* f_alpha = family->add_option("--alpha", alpha, "alpha parameter");
  auto* f_gamma = family->add_option("--gamma", gamma, "gamma parameter (two-param)");
  auto* f_beta = family->add_option("--beta", beta, "beta parameter (iso-mix)");
  family->add_option("--grid", grid_text, "start:stop:step")->required();
  family->add_option("--out", out_path, "output CSV path")->required();

  auto* random = app.add_subcommand("random", "Haar-random ensemble statistics");
  random->add_option("--n", n_states, "number of random pure states")->required();
  random->add_option("--seed", seed, "master seed")->required();
  random->add_option("--grid", grid_text, "start:stop:step (default 0:10:0.05 plus a point at 50)");
  random->add_option("--out", out_path, "summary CSV path")->required();
  random->add_option("--bars", bars_path, "per-state asymptotic CSV path (default <out>_bars.csv)");

  auto* state = app.add_subcommand("state", "Evaluate a state file at one gamma_t");
  state->add_option("path", state_path, "DensityMatrix JSON file")->required();
  state->add_option("--gamma-t", gamma_t, "Gamma t at which to evaluate")->required();
  state->add_option("--out", out_path, "output CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return kBadParams;
  }

  try {
    if (family->parsed()) {
      FamilySweepSpec spec;
      spec.family = parse_family(family_name);
      spec.alpha = optional_value(f_alpha, alpha);
      spec.gamma = optional_value(f_gamma, gamma);
      spec.beta = optional_value(f_beta, beta);
      spec.grid = Grid::parse(grid_text);
      io::write_csv_file(out_path, run_family_sweep(spec));
    } else if (random->parsed()) {
      RandomSpec spec;
      spec.n = n_states;
      spec.seed = seed;
      if (!grid_text.empty()) spec.grid = Grid::parse(grid_text).points();
      const auto tables = run_random(spec);
      io::write_csv_file(out_path, tables.summary);
      io::write_csv_file(bars_path.empty() ? default_bars_path(out_path) : bars_path, tables.bars);
    } else if (state->parsed()) {
      const auto rho0 = io::read_density_file(state_path);
      const auto table = run_state(rho0, gamma_t);
      if (out_path.empty()) {
        io::write_csv(out, table);
      } else {
        io::write_csv_file(out_path, table);
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::ParseError: return kParseFailure;
      case ErrorCode::InvariantViolation: return kInvariantFailure;
      default: return kBadParams;
    }
  }
  return kOk;
}

}  // namespace qcdeph::cli
