#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qcdeph/channel.hpp"
#include "qcdeph/correlations.hpp"

using namespace qcdeph;
using Mat = ComplexMatrix<double>;
using Point = DephasingPoint<double>;
using Two = TwoParamFamily<double>;
using Dfs = DfsMixFamily<double>;
using Iso = IsoMixFamily<double>;

namespace {

const std::vector<double> kGrid{0.0, 0.5, 1.0, 2.0, 5.0, 10.0};

DensityMatrixd product_state(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  auto rand_density = [&](int n) {
    Mat a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
    Mat r = a * a.adjoint();
    return Mat(r / r.trace().real());
  };
  return DensityMatrixd::from_matrix(kron(rand_density(2), rand_density(3)));
}

// Independent oracle: exhaustive angle grid over the literal 6x6 branch states.
double classical_brute_force(const DensityMatrixd& rho, int theta_steps, int phi_steps) {
  const double s_b = von_neumann_entropy(trace_out_qubit(rho.mat()));
  double best = 1e300;
  for (int i = 0; i <= theta_steps; ++i) {
    for (int j = 0; j < phi_steps; ++j) {
      const QubitMeasurement<double> m{std::numbers::pi * i / theta_steps, 2 * std::numbers::pi * j / phi_steps};
      double h = 0;
      for (int k = 0; k < 2; ++k) {
        const auto br = measurement_branch(rho, m, k);
        if (br.probability >= kBranchCutoff) h += br.probability * von_neumann_entropy(br.state);
      }
      best = std::min(best, h);
    }
  }
  return s_b - best;
}

Two random_two(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double a = 0.5 * u(rng);
  return Two::make(a, (1 - 2 * a) * u(rng));
}

}  // namespace

TEST_CASE("negativity: reference states") {
  CHECK(negativity(psi_k_state<double>(3)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(negativity(maximally_mixed<double>()) == 0.0);
  // PT block [[beta, (beta - gamma)/2], [., beta]] has eigenvalue beta - (gamma - beta)/2 = -0.1.
  CHECK(negativity(two_param_state(Two::make(0.1, 0.5))) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("von Neumann entropy") {
  CHECK(std::abs(von_neumann_entropy(psi_k_state<double>(2).mat())) < 1e-12);
  CHECK(von_neumann_entropy(maximally_mixed<double>().mat()) == doctest::Approx(std::log2(6.0)));
  CHECK(von_neumann_entropy(Mat(Mat::Identity(2, 2) * 0.5)) == doctest::Approx(1.0));
  CHECK(von_neumann_entropy(Mat(Mat::Identity(1, 1))) == 0.0);
  Mat bad = Mat::Identity(2, 2);
  bad(1, 1) = -0.01;
  CHECK_THROWS_AS(von_neumann_entropy(bad), Error);
}

TEST_CASE("mutual information") {
  std::mt19937_64 rng(1);
  CHECK(std::abs(mutual_information(product_state(rng))) < 1e-10);
  CHECK(mutual_information(psi_k_state<double>(3)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(mutual_information(maximally_mixed<double>())) < 1e-12);
}

TEST_CASE("conditional entropy: qutrit-block route equals the literal branch states") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto rho = dephase(random_pure_state(31, i), Point(2.0 * u(rng)));
    const QubitMeasurement<double> m{std::numbers::pi * u(rng), 2 * std::numbers::pi * u(rng)};
    double literal = 0;
    for (int k = 0; k < 2; ++k) {
      const auto br = measurement_branch(rho, m, k);
      if (br.probability >= kBranchCutoff) literal += br.probability * von_neumann_entropy(br.state);
    }
    CHECK(std::abs(conditional_entropy(rho, m) - literal) < 1e-12);
  }
}

TEST_CASE("measurement projectors") {
  const QubitMeasurement<double> m{1.1, 4.0};
  const Mat a0 = m.projector(0);
  const Mat a1 = m.projector(1);
  CHECK((a0 + a1 - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((a0 * a0 - a0).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((a1 * a1 - a1).cwiseAbs().maxCoeff() < 1e-15);
  const auto c = QubitMeasurement<double>::canonical(-0.5, 7.0);
  CHECK(c.theta >= 0.0);
  CHECK(c.theta <= std::numbers::pi);
  CHECK(c.phi >= 0.0);
  CHECK(c.phi < 2 * std::numbers::pi);
  const Mat p_orig = QubitMeasurement<double>{-0.5, 7.0}.projector(0);
  const Mat p_canon = c.projector(0);
  // Same measurement, possibly with outcomes relabelled.
  const double same = std::min((p_orig - p_canon).cwiseAbs().maxCoeff(), (p_orig - c.projector(1)).cwiseAbs().maxCoeff());
  CHECK(same < 1e-12);
}

TEST_CASE("classical correlation: reference values") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(classical_correlation(product_state(rng)).value) < 1e-8);

  const auto f = Two::make(0.1, 0.5);
  CHECK(std::abs(classical_correlation(two_param_state(f)).value - classical_closed_form(f)) < 1e-6);

  const auto p3 = psi_k_state<double>(3);
  CHECK(classical_brute_force(p3, 60, 120) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(std::abs(classical_correlation(p3).value - 1.0) < 1e-6);
}

TEST_CASE("classical correlation: refinement never loses to an exhaustive grid") {
  for (std::uint64_t i = 0; i < 6; ++i) {
    const auto rho = dephase(random_pure_state(17, i), Point(0.7 * static_cast<double>(i)));
    const double brute = classical_brute_force(rho, 45, 90);
    const auto c = classical_correlation(rho);
    CHECK(c.value >= brute - 1e-12);
    CHECK(c.value <= brute + 5e-3);
    // The reported argmax reproduces the value.
    CHECK(std::abs(von_neumann_entropy(trace_out_qubit(rho.mat())) - conditional_entropy(rho, c.argmax) - c.value) <
          1e-12);
  }
}

TEST_CASE("classical correlation of the two-parameter family is time invariant") {
  for (const auto& f : {Two::make(0.1, 0.5), Two::make(0.12, 0.4)}) {
    const auto rho0 = two_param_state(f);
    const double c0 = classical_correlation(rho0).value;
    for (double gt : kGrid) CHECK(std::abs(classical_correlation(dephase(rho0, Point(gt))).value - c0) <= 1e-6);
  }
}

TEST_CASE("discord") {
  std::mt19937_64 rng(6);
  CHECK(quantum_discord(product_state(rng)) < 1e-8);
  CHECK(quantum_discord(two_param_state(Two::make(0.0, 1.0))) == doctest::Approx(1.0).epsilon(1e-6));

  const auto f = Two::make(0.1, 0.5);
  const auto rho0 = two_param_state(f);
  for (double gt : kGrid) {
    const Point p(gt);
    CHECK(std::abs(quantum_discord(dephase(rho0, p)) - discord_closed_form(f, p)) <= 1e-6);
  }
  // Vanishes at infinite time.
  CHECK(std::abs(discord_closed_form(f, Point::from_xi(0.0))) < 1e-12);
}

TEST_CASE("two-parameter closed forms") {
  CHECK(*esd_time_two_param(Two::make(0.1, 0.5)) == doctest::Approx(5.545).epsilon(1e-3));
  CHECK(*esd_time_two_param(Two::make(0.12, 0.4)) == doctest::Approx(1.233).epsilon(1e-3));
  CHECK_FALSE(esd_time_two_param(Two::make(0.0, 1.0)).has_value());
  CHECK_THROWS_AS(esd_time_two_param(Two::make(0.0, 0.2)), Error);

  CHECK(negativity_closed_form_two_param(Two::make(0.0, 1.0), Point::from_xi(0.5)) == doctest::Approx(0.5));

  // sqrt factors both tend to sqrt(beta + gamma) as xi -> 0.
  const auto f = Two::make(0.15, 0.3);
  CHECK(lqu_closed_form_two_param(f, Point::from_xi(0.0)) ==
        doctest::Approx(1 - 2 * f.alpha - 2 * f.beta - (f.beta + f.gamma)));
}

TEST_CASE("LQU: reference states") {
  const auto p00 = DensityMatrixd::from_matrix(projector(basis_ket<double>(0, 0)));
  CHECK(std::abs(lqu(p00)) < 1e-12);
  CHECK(lqu(two_param_state(Two::make(0.0, 1.0))) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lqu(dfs_mix_state(Dfs::make(0.5))) == doctest::Approx(0.75).epsilon(1e-12));
  for (double a : {0.2, 0.5, 0.8}) {
    const Dfs f = Dfs::make(a);
    CHECK(lqu(dfs_mix_state(f)) == doctest::Approx(lqu_dfs_mix_initial(f)).epsilon(1e-10));
    // The t -> 0 limit of w11 reproduces the initial value.
    CHECK(lqu_closed_form_dfs_mix(f, Point(0.0)) == doctest::Approx(lqu_dfs_mix_initial(f)).epsilon(1e-14));
  }
}

TEST_CASE("DFS mixture closed forms") {
  CHECK(lqu_dfs_mix_asymptote(Dfs::make(0.5)) == doctest::Approx(0.5));
  for (double gt : {0.0, 1.0, 30.0}) CHECK(lqu_closed_form_dfs_mix(Dfs::make(1.0), Point(gt)) == doctest::Approx(1.0));
  // v1(0.5) = (0.5 - sqrt(1.25)) / 4
  const auto v = dfs_mix_candidate_eigenvalues(Dfs::make(0.5), Point::from_xi(0.0));
  CHECK(v.first == doctest::Approx(-0.1545084972).epsilon(1e-9));
  CHECK(negativity_closed_form_dfs_mix(Dfs::make(0.5), Point::from_xi(0.0)) ==
        doctest::Approx(0.3090169944).epsilon(1e-9));
}

TEST_CASE("isotropic mixture closed forms") {
  const auto f = Iso::make(0.4, 0.7);
  const auto x = iso_mix_candidate_eigenvalues(f, Point(0.0));
  CHECK(x.first == doctest::Approx(-0.26));
  for (double gt : kGrid) {
    CHECK(negativity_closed_form_iso_mix(f, Point(gt)) == doctest::Approx(0.52));
    CHECK(std::abs(negativity(dephase(iso_mix_state(f), Point(gt))) - 0.52) < 1e-9);
  }
  // xi^16 = 0.68 / 2.16, gamma_t = -ln(xi^16) / 2
  CHECK(*esd_time_iso_mix(Iso::make(0.9, 0.2)) == doctest::Approx(0.578).epsilon(1e-3));
  CHECK_FALSE(esd_time_iso_mix(f).has_value());
}

TEST_CASE("closed forms agree with the numeric measures") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Two two = random_two(rng);
    const Dfs dfs = Dfs::make(u(rng));
    const Iso iso = Iso::make(u(rng), u(rng));
    const auto r_two = two_param_state(two);
    const auto r_dfs = dfs_mix_state(dfs);
    const auto r_iso = iso_mix_state(iso);
    for (double gt : kGrid) {
      const Point p(gt);
      const auto e_two = dephase(r_two, p);
      const auto e_dfs = dephase(r_dfs, p);
      CHECK(std::abs(negativity(e_two) - negativity_closed_form_two_param(two, p)) <= 1e-8);
      CHECK(std::abs(lqu(e_two) - lqu_closed_form_two_param(two, p)) <= 1e-8);
      CHECK(std::abs(negativity(e_dfs) - negativity_closed_form_dfs_mix(dfs, p)) <= 1e-8);
      CHECK(std::abs(lqu(e_dfs) - lqu_closed_form_dfs_mix(dfs, p)) <= 1e-8);
      CHECK(std::abs(negativity(dephase(r_iso, p)) - negativity_closed_form_iso_mix(iso, p)) <= 1e-8);
    }
  }
}

TEST_CASE("numeric discord agrees with its closed form") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    const Two two = random_two(rng);
    const auto r = two_param_state(two);
    for (double gt : kGrid) {
      const Point p(gt);
      CHECK(std::abs(quantum_discord(dephase(r, p)) - discord_closed_form(two, p)) <= 1e-6);
    }
  }
}

TEST_CASE("isotropic mixture: x1 and x2 are never negative together") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto f = Iso::make(u(rng), u(rng));
    const auto x = iso_mix_candidate_eigenvalues(f, Point::from_xi(u(rng)));
    if (x.first < 0) CHECK(x.second > 0);
    if (x.second < 0) CHECK(x.first > 0);
  }
}

TEST_CASE("isotropic mixture with beta > 1/2 has constant negativity") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = Iso::make(u(rng), 0.5 + 0.5 * u(rng));
    const auto rho0 = iso_mix_state(f);
    const double n0 = negativity(rho0);
    for (double gt : kGrid) CHECK(std::abs(negativity(dephase(rho0, Point(gt))) - n0) <= 1e-9);
  }
}

TEST_CASE("LQU equals discord at t = 0 for the listed special cases") {
  // (i) alpha = beta = 0, gamma = 1; (ii) alpha = gamma = 0; (iii) gamma = 0; (iv) beta = 0
  for (const auto& f : {Two::make(0.0, 1.0), Two::make(0.0, 0.0), Two::make(0.2, 0.0), Two::make(0.35, 0.0),
                        Two::make(0.2, 0.6), Two::make(0.4, 0.2)}) {
    const auto rho = two_param_state(f);
    CHECK(std::abs(quantum_discord(rho) - lqu(rho)) <= 1e-6);
  }
}

TEST_CASE("measures stay in range on random states") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto rho = dephase(random_pure_state(55, i), Point(0.5 * static_cast<double>(i)));
    const auto rec = evaluate_correlations(rho, 0.0);
    CHECK(rec.negativity >= 0.0);
    CHECK(rec.negativity <= 1.0 + 1e-9);
    CHECK(rec.lqu >= -1e-12);
    CHECK(rec.lqu <= 1.0 + 1e-9);
    CHECK(quantum_discord_raw(rho) >= -1e-8);
    CHECK(rec.discord >= 0.0);
  }
}
