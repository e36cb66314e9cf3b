#include <doctest.h>

#include <cmath>
#include <vector>

#include "qcdeph/channel.hpp"
#include "qcdeph/correlations.hpp"
#include "qcdeph/ensemble.hpp"

using namespace qcdeph;

TEST_CASE("confidence interval uses the population variance") {
  const std::vector<double> same{0.3, 0.3, 0.3};
  const auto c = confidence_interval(same);
  CHECK(c.mean == doctest::Approx(0.3));
  CHECK(c.half_width == 0.0);

  const std::vector<double> two{0.0, 1.0};
  CHECK(confidence_interval(two).mean == 0.5);
  CHECK(confidence_interval(two).half_width == 0.5);

  const std::vector<double> four{1, 2, 3, 4};
  CHECK(confidence_interval(four).mean == 2.5);
  CHECK(confidence_interval(four).variance == 1.25);
  CHECK(confidence_interval(four).half_width == doctest::Approx(1.118033988749895));

  CHECK_THROWS_AS(confidence_interval(std::vector<double>{}), Error);
}

TEST_CASE("asymptotic classification") {
  const auto p3 = classify_asymptotic(psi_k_state<double>(3));
  CHECK(p3.negativity == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p3.is_npt);
  const auto p1 = classify_asymptotic(psi_k_state<double>(1));
  CHECK(p1.negativity == 0.0);
  CHECK_FALSE(p1.is_npt);
  CHECK_FALSE(classify_asymptotic(maximally_mixed<double>()).is_npt);
}

TEST_CASE("config validation") {
  EnsembleConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.grid.front() == 0.0);
  CHECK(cfg.grid.back() == 50.0);
  CHECK(cfg.grid.size() == 202);

  cfg.n_states = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.n_states = 1;
  cfg.grid = {0.0, 1.0, 1.0};
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.grid = {-1.0, 1.0};
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("single-state ensemble has a binary entangled fraction") {
  EnsembleConfig cfg;
  cfg.n_states = 1;
  cfg.master_seed = 3;
  const auto s = run_ensemble(cfg, 1);
  CHECK((s.entangled_fraction == 0.0 || s.entangled_fraction == 1.0));
  CHECK(s.asymptotic_negativity.size() == 1);
  for (const auto& b : s.band) CHECK(b.ci.variance == 0.0);
}

TEST_CASE("ensemble summary is independent of the worker count") {
  EnsembleConfig cfg;
  cfg.n_states = 24;
  cfg.master_seed = 2024;
  cfg.grid = {0.0, 0.5, 1.0, 3.0, 10.0, 45.0};
  const auto a = run_ensemble(cfg, 1);
  const auto b = run_ensemble(cfg, 5);
  REQUIRE(a.band.size() == b.band.size());
  for (std::size_t g = 0; g < a.band.size(); ++g) {
    CHECK(a.band[g].ci.mean == b.band[g].ci.mean);
    CHECK(a.band[g].ci.variance == b.band[g].ci.variance);
  }
  CHECK(a.asymptotic_negativity == b.asymptotic_negativity);
  CHECK(a.trajectories == b.trajectories);
  CHECK(a.entangled_fraction == b.entangled_fraction);
}

TEST_CASE("ensemble trajectories: monotone, banded, and consistent with the asymptote") {
  EnsembleConfig cfg;
  cfg.n_states = 40;
  cfg.master_seed = 42;
  const auto s = run_ensemble(cfg);
  std::size_t npt = 0;
  for (std::size_t i = 0; i < cfg.n_states; ++i) {
    const auto& tr = s.trajectories[i];
    for (std::size_t g = 1; g < tr.size(); ++g) CHECK(tr[g] <= tr[g - 1] + 1e-9);
    // Residual coherences at gamma_t = 50 scale like xi^2 ~ 4e-6.
    CHECK(std::abs(tr.back() - s.asymptotic_negativity[i]) <= 1e-5);
    if (s.asymptotic_negativity[i] > kNptThreshold) ++npt;
  }
  CHECK(s.entangled_fraction == doctest::Approx(static_cast<double>(npt) / cfg.n_states));
  for (const auto& b : s.band) {
    CHECK(b.ci.variance >= 0.0);
    CHECK(b.ci.lo() <= b.ci.mean);
    CHECK(b.ci.mean <= b.ci.hi());
  }
}

TEST_CASE("mean initial negativity matches a large Haar sample") {
  // Monte-Carlo reference from 10^4 independent states (seed 7) drawn outside the ensemble path.
  double ref = 0;
  const int n_ref = 10000;
  for (int i = 0; i < n_ref; ++i) ref += negativity(random_pure_state(7, static_cast<std::uint64_t>(i))) / n_ref;
  CHECK(ref > 0.72);
  CHECK(ref < 0.76);

  EnsembleConfig cfg;
  cfg.n_states = 100;
  cfg.master_seed = 42;
  cfg.grid = {0.0};
  const auto s = run_ensemble(cfg);
  // 100 states: per-state spread ~0.17, so the mean lies within ~3 standard errors of the reference.
  CHECK(std::abs(s.band[0].ci.mean - ref) < 0.06);
  CHECK(s.band[0].ci.mean >= 0.55);
  CHECK(s.band[0].ci.mean <= 0.75);
}
