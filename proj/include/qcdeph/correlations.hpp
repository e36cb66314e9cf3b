#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include "qcdeph/basis.hpp"
#include "qcdeph/channel.hpp"
#include "qcdeph/errors.hpp"
#include "qcdeph/matcore.hpp"
#include "qcdeph/nelder_mead.hpp"
#include "qcdeph/states.hpp"

// All entropies are in bits. The only natural logarithm in this header is the
// one in the sudden-death time, where Gamma t = 8 ln((gamma - beta) / (2 beta)).

namespace qcdeph {

/// Measurement branches with probability below this contribute nothing.
inline constexpr double kBranchCutoff = 1e-12;

// ---------------------------------------------------------------------------
// Negativity

/// Twice the summed magnitude of the negative eigenvalues of the qubit
/// partial transpose.
template <typename Scalar>
Scalar negativity(const DensityMatrix<Scalar>& rho) {
  const auto ev = hermitian_eigenvalues(partial_transpose_qubit(rho.mat()));
  Scalar sum(0);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < Scalar(0)) sum -= ev[i];
  }
  return Scalar(2) * sum;
}

template <typename Scalar>
Scalar min_partial_transpose_eigenvalue(const DensityMatrix<Scalar>& rho) {
  return hermitian_eigenvalues(partial_transpose_qubit(rho.mat()))[0];
}

// ---------------------------------------------------------------------------
// Entropies

template <typename Scalar>
Scalar xlog2x(Scalar x) {
  return x > Scalar(0) ? x * std::log2(x) : Scalar(0);
}

namespace detail {
template <typename Scalar>
Scalar entropy_of_spectrum(const RealVector<Scalar>& ev, Scalar scale = Scalar(1)) {
  Scalar s(0);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < -Scalar(kEigenClamp)) {
      throw Error(ErrorCode::NotPSD, "entropy: eigenvalue " + std::to_string(static_cast<double>(ev[i])) +
                                         " is below -1e-10");
    }
    const Scalar p = std::clamp(ev[i] / scale, Scalar(0), Scalar(1));
    s -= xlog2x(p);
  }
  return s;
}
}  // namespace detail

/// -Tr(rho log2 rho) for a density matrix of any size.
template <typename Derived>
typename Derived::RealScalar von_neumann_entropy(const Eigen::MatrixBase<Derived>& rho) {
  return detail::entropy_of_spectrum(hermitian_eigenvalues(rho));
}

template <typename Scalar>
Scalar mutual_information(const DensityMatrix<Scalar>& rho) {
  return von_neumann_entropy(trace_out_qutrit(rho.mat())) + von_neumann_entropy(trace_out_qubit(rho.mat())) -
         von_neumann_entropy(rho.mat());
}

// ---------------------------------------------------------------------------
// Projective qubit measurements and classical correlation

/// Von Neumann measurement {|n><n|, I - |n><n|} on the qubit with
/// n = (cos(theta/2), e^{i phi} sin(theta/2)).
template <typename Scalar>
struct QubitMeasurement {
  Scalar theta;
  Scalar phi;

  /// Maps arbitrary angles onto theta in [0, pi], phi in [0, 2 pi) describing
  /// the same projector pair.
  static QubitMeasurement canonical(Scalar theta, Scalar phi) {
    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    theta = std::fmod(theta, two_pi);
    if (theta < Scalar(0)) theta += two_pi;
    if (theta > std::numbers::pi_v<Scalar>) {
      theta = two_pi - theta;
      phi += std::numbers::pi_v<Scalar>;
    }
    phi = std::fmod(phi, two_pi);
    if (phi < Scalar(0)) phi += two_pi;
    if (phi >= two_pi) phi = Scalar(0);
    return {theta, phi};
  }

  ComplexVector<Scalar> direction() const {
    ComplexVector<Scalar> n(2);
    n[0] = std::cos(theta / Scalar(2));
    n[1] = std::polar(std::sin(theta / Scalar(2)), phi);
    return n;
  }

  /// Projector A_k for outcome k in {0, 1}.
  ComplexMatrix<Scalar> projector(int k) const {
    ComplexMatrix<Scalar> a = qcdeph::projector(direction());
    if (k == 0) return a;
    if (k == 1) return ComplexMatrix<Scalar>::Identity(2, 2) - a;
    throw Error(ErrorCode::BadIndex, "measurement outcome must be 0 or 1");
  }
};

template <typename Scalar>
struct MeasurementBranch {
  Scalar probability;
  ComplexMatrix<Scalar> state;  // 6x6, zero when the probability is below the cutoff
};

/// Post-measurement branch (A_k (x) I) rho (A_k (x) I) / p_k, built literally.
template <typename Scalar>
MeasurementBranch<Scalar> measurement_branch(const DensityMatrix<Scalar>& rho, const QubitMeasurement<Scalar>& m,
                                             int k) {
  const ComplexMatrix<Scalar> op = kron(m.projector(k), ComplexMatrix<Scalar>::Identity(kQutritDim, kQutritDim));
  ComplexMatrix<Scalar> unnorm = op * rho.mat() * op;
  const Scalar p = std::real(unnorm.trace());
  if (p < Scalar(kBranchCutoff)) return {p, ComplexMatrix<Scalar>::Zero(kDim, kDim)};
  return {p, unnorm / p};
}

/// sum_k p_k S(rho_k) for the measurement m on the qubit.
///
/// The branch state is |n_k><n_k| (x) sigma_k / p_k with sigma_k = <n_k| rho |n_k>
/// (a 3x3 block), so only sigma_k needs diagonalizing. sigma_1 = rho_B - sigma_0.
template <typename Scalar>
Scalar conditional_entropy(const DensityMatrix<Scalar>& rho, const QubitMeasurement<Scalar>& m) {
  const ComplexVector<Scalar> n = m.direction();
  const auto& r = rho.mat();
  ComplexMatrix<Scalar> sigma0 = ComplexMatrix<Scalar>::Zero(kQutritDim, kQutritDim);
  for (int a = 0; a < kQubitDim; ++a) {
    for (int b = 0; b < kQubitDim; ++b) {
      sigma0 += (std::conj(n[a]) * n[b]) * r.block(a * kQutritDim, b * kQutritDim, kQutritDim, kQutritDim);
    }
  }
  const ComplexMatrix<Scalar> sigma1 = trace_out_qubit(r) - sigma0;

  Scalar total(0);
  for (const ComplexMatrix<Scalar>* sigma : std::array<const ComplexMatrix<Scalar>*, 2>{&sigma0, &sigma1}) {
    const ComplexMatrix<Scalar> h = (*sigma + sigma->adjoint()) * std::complex<Scalar>(Scalar(0.5), Scalar(0));
    const Scalar p = std::real(h.trace());
    if (p < Scalar(kBranchCutoff)) continue;
    total += p * detail::entropy_of_spectrum(hermitian_eigenvalues(h), p);
  }
  return total;
}

/// Search settings for the measurement maximization.
struct ClassicalSearchOptions {
  int theta_points = 64;   // theta_i = pi i / (theta_points - 1)
  int phi_points = 128;    // phi_j = 2 pi j / phi_points
  int refine_starts = 3;   // best grid points handed to Nelder-Mead
  double simplex_tol = 1e-9;
};

template <typename Scalar>
struct ClassicalCorrelation {
  Scalar value;
  QubitMeasurement<Scalar> argmax;
};

/// sup over qubit measurements of S(rho_B) - sum_k p_k S(rho_k).
template <typename Scalar>
ClassicalCorrelation<Scalar> classical_correlation(const DensityMatrix<Scalar>& rho,
                                                   const ClassicalSearchOptions& opts = {}) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar s_b = von_neumann_entropy(trace_out_qubit(rho.mat()));
  auto objective = [&](const std::array<Scalar, 2>& x) {
    return conditional_entropy(rho, QubitMeasurement<Scalar>{x[0], x[1]});
  };

  struct Candidate {
    Scalar value;
    std::array<Scalar, 2> x;
  };
  std::vector<Candidate> grid;
  grid.reserve(static_cast<std::size_t>(opts.theta_points) * static_cast<std::size_t>(opts.phi_points));
  const Scalar dtheta = opts.theta_points > 1 ? pi / Scalar(opts.theta_points - 1) : pi;
  const Scalar dphi = Scalar(2) * pi / Scalar(opts.phi_points);
  for (int i = 0; i < opts.theta_points; ++i) {
    for (int j = 0; j < opts.phi_points; ++j) {
      const std::array<Scalar, 2> x{dtheta * Scalar(i), dphi * Scalar(j)};
      grid.push_back({objective(x), x});
    }
  }
  const auto starts = std::min<std::size_t>(static_cast<std::size_t>(std::max(opts.refine_starts, 1)), grid.size());
  std::partial_sort(grid.begin(), grid.begin() + static_cast<std::ptrdiff_t>(starts), grid.end(),
                    [](const Candidate& l, const Candidate& r) { return l.value < r.value; });

  Candidate best = grid.front();
  const Scalar step = std::min(dtheta, dphi);
  for (std::size_t s = 0; s < starts; ++s) {
    const auto res = nelder_mead(objective, grid[s].x, step, Scalar(opts.simplex_tol));
    if (res.value < best.value) best = {res.value, res.x};
  }
  return {s_b - best.value, QubitMeasurement<Scalar>::canonical(best.x[0], best.x[1])};
}

/// I(rho) - C(rho) without clamping; may be slightly negative from round-off.
template <typename Scalar>
Scalar quantum_discord_raw(const DensityMatrix<Scalar>& rho, const ClassicalSearchOptions& opts = {}) {
  return mutual_information(rho) - classical_correlation(rho, opts).value;
}

template <typename Scalar>
Scalar quantum_discord(const DensityMatrix<Scalar>& rho, const ClassicalSearchOptions& opts = {}) {
  return std::max(Scalar(0), quantum_discord_raw(rho, opts));
}

// ---------------------------------------------------------------------------
// Local quantum uncertainty

/// m_ij = Tr[sqrt(rho) (s_i (x) I) sqrt(rho) (s_j (x) I)] for the Pauli matrices s_1..s_3.
template <typename Scalar>
RealMatrix<Scalar> lqu_matrix(const DensityMatrix<Scalar>& rho) {
  const ComplexMatrix<Scalar> root = psd_sqrt(rho.mat());
  const ComplexMatrix<Scalar> eye3 = ComplexMatrix<Scalar>::Identity(kQutritDim, kQutritDim);
  std::array<ComplexMatrix<Scalar>, 3> sandwiched;
  std::array<ComplexMatrix<Scalar>, 3> local;
  for (int i = 0; i < 3; ++i) {
    local[i] = kron(pauli<Scalar>(i + 1), eye3);
    sandwiched[i] = root * local[i] * root;
  }
  RealMatrix<Scalar> m(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      m(i, j) = std::real((sandwiched[i] * local[j]).trace());
      m(j, i) = m(i, j);
    }
  }
  return m;
}

/// 1 - largest eigenvalue of lqu_matrix(rho).
template <typename Scalar>
Scalar lqu(const DensityMatrix<Scalar>& rho) {
  const RealMatrix<Scalar> m = lqu_matrix(rho);
  const ComplexMatrix<Scalar> mc = m.template cast<std::complex<Scalar>>();
  const auto ev = hermitian_eigenvalues(mc);
  return Scalar(1) - ev[ev.size() - 1];
}

// ---------------------------------------------------------------------------
// Closed forms for the two-parameter family

template <typename Scalar>
Scalar classical_closed_form(const TwoParamFamily<Scalar>& f) {
  const Scalar b = f.beta;
  const Scalar g = f.gamma;
  return -Scalar(2) * xlog2x((Scalar(3) * b + g) / Scalar(2)) + xlog2x(Scalar(2) * b) + xlog2x(b + g);
}

template <typename Scalar>
Scalar discord_closed_form(const TwoParamFamily<Scalar>& f, const DephasingPoint<Scalar>& p) {
  const Scalar a = f.alpha;
  const Scalar b = f.beta;
  const Scalar g = f.gamma;
  const Scalar xi = p.xi();
  const Scalar u = (b + g + xi * (b - g)) / Scalar(2);
  const Scalar w = (b + g - xi * (b - g)) / Scalar(2);
  return Scalar(1) - Scalar(2) * a - Scalar(2) * b - xlog2x(b + g) + xlog2x(u) + xlog2x(w);
}

template <typename Scalar>
Scalar lqu_closed_form_two_param(const TwoParamFamily<Scalar>& f, const DephasingPoint<Scalar>& p) {
  const Scalar b = f.beta;
  const Scalar g = f.gamma;
  const Scalar xi = p.xi();
  const Scalar s1 = std::sqrt(std::max(Scalar(0), b * (Scalar(1) + xi) + g * (Scalar(1) - xi)));
  const Scalar s2 = std::sqrt(std::max(Scalar(0), b * (Scalar(1) - xi) + g * (Scalar(1) + xi)));
  return Scalar(1) - Scalar(2) * f.alpha - Scalar(2) * b - s1 * s2;
}

/// max[0, xi (gamma - beta) - 2 beta].
template <typename Scalar>
Scalar negativity_closed_form_two_param(const TwoParamFamily<Scalar>& f, const DephasingPoint<Scalar>& p) {
  return std::max(Scalar(0), p.xi() * (f.gamma - f.beta) - Scalar(2) * f.beta);
}

/// Gamma t at which the negativity of the two-parameter family vanishes,
/// 8 ln((gamma - beta) / (2 beta)); nullopt when beta = 0 (only lost
/// asymptotically). Requires gamma > beta.
template <typename Scalar>
std::optional<Scalar> esd_time_two_param(const TwoParamFamily<Scalar>& f) {
  if (f.beta == Scalar(0)) return std::nullopt;
  if (!(f.gamma > f.beta)) {
    throw Error(ErrorCode::InvalidParams, "esd_time_two_param: requires gamma > beta (state is never entangled)");
  }
  return Scalar(8) * std::log((f.gamma - f.beta) / (Scalar(2) * f.beta));
}

// ---------------------------------------------------------------------------
// Closed forms for the DFS mixture alpha psi3 + (1 - alpha) psi2

template <typename Scalar>
struct NegativeEigenvaluePair {
  Scalar first;   // time independent
  Scalar second;  // time dependent
};

/// v1 = [(1-a) - sqrt((1-a)^2 + 4 a^2)] / 4, v2 = [a - sqrt(a^2 + 4 xi^18 (1-a)^2)] / 4.
template <typename Scalar>
NegativeEigenvaluePair<Scalar> dfs_mix_candidate_eigenvalues(const DfsMixFamily<Scalar>& f,
                                                             const DephasingPoint<Scalar>& p) {
  const Scalar a = f.alpha;
  const Scalar c = Scalar(1) - a;
  const Scalar v1 = (c - std::sqrt(c * c + Scalar(4) * a * a)) / Scalar(4);
  const Scalar v2 = (a - std::sqrt(a * a + Scalar(4) * p.xi_pow(18) * c * c)) / Scalar(4);
  return {v1, v2};
}

template <typename Scalar>
Scalar negativity_closed_form_dfs_mix(const DfsMixFamily<Scalar>& f, const DephasingPoint<Scalar>& p) {
  const auto v = dfs_mix_candidate_eigenvalues(f, p);
  return Scalar(2) * (std::max(Scalar(0), -v.first) + std::max(Scalar(0), -v.second));
}

/// Eigenvalues w11 (= w22) and w33 of the LQU matrix of the evolved DFS mixture.
template <typename Scalar>
std::array<Scalar, 2> dfs_mix_lqu_eigenvalues(const DfsMixFamily<Scalar>& f, const DephasingPoint<Scalar>& p) {
  const Scalar a = f.alpha;
  const Scalar c = Scalar(1) - a;
  const Scalar x9 = p.xi_pow(9);
  const Scalar w11 = std::sqrt(a) *
                     (std::sqrt(c * (Scalar(1) - x9)) + std::sqrt(c * (Scalar(1) + x9))) /
                     (Scalar(2) * std::sqrt(Scalar(2)));
  const Scalar w33 = c * std::sqrt(std::max(Scalar(0), Scalar(1) - p.xi_pow(18)));
  return {w11, w33};
}

template <typename Scalar>
Scalar lqu_closed_form_dfs_mix(const DfsMixFamily<Scalar>& f, const DephasingPoint<Scalar>& p) {
  const auto w = dfs_mix_lqu_eigenvalues(f, p);
  return Scalar(1) - std::max(w[0], w[1]);
}

/// Value at t = 0: 1 - sqrt(a (1 - a)) / 2.
template <typename Scalar>
Scalar lqu_dfs_mix_initial(const DfsMixFamily<Scalar>& f) {
  return Scalar(1) - std::sqrt(f.alpha * (Scalar(1) - f.alpha)) / Scalar(2);
}

/// Stationary value: 1 - max[(1 - a), sqrt(a (1 - a) / 2)].
template <typename Scalar>
Scalar lqu_dfs_mix_asymptote(const DfsMixFamily<Scalar>& f) {
  const Scalar a = f.alpha;
  return Scalar(1) - std::max(Scalar(1) - a, std::sqrt(a * (Scalar(1) - a) / Scalar(2)));
}

// ---------------------------------------------------------------------------
// Closed forms for the isotropic mixture beta psi3 + (1 - beta) iso(alpha)

/// x1 = [1 + 2 a (1-b) - 4 b] / 6, x2 = [1 + 2 b - a (1-b)(1 + 3 xi^16)] / 6.
template <typename Scalar>
NegativeEigenvaluePair<Scalar> iso_mix_candidate_eigenvalues(const IsoMixFamily<Scalar>& f,
                                                             const DephasingPoint<Scalar>& p) {
  const Scalar a = f.alpha;
  const Scalar b = f.beta;
  const Scalar x1 = (Scalar(1) + Scalar(2) * a * (Scalar(1) - b) - Scalar(4) * b) / Scalar(6);
  const Scalar x2 = (Scalar(1) + Scalar(2) * b - a * (Scalar(1) - b) * (Scalar(1) + Scalar(3) * p.xi_pow(16))) / Scalar(6);
  return {x1, x2};
}

template <typename Scalar>
Scalar negativity_closed_form_iso_mix(const IsoMixFamily<Scalar>& f, const DephasingPoint<Scalar>& p) {
  const auto x = iso_mix_candidate_eigenvalues(f, p);
  return Scalar(2) * (std::max(Scalar(0), -x.first) + std::max(Scalar(0), -x.second));
}

/// Gamma t where x2 crosses zero, i.e. xi^16 = (1 + 2b - a(1-b)) / (3 a (1-b)),
/// so Gamma t = -ln(xi^16) / 2. nullopt if x2 is never negative or never
/// becomes non-negative at finite time.
template <typename Scalar>
std::optional<Scalar> esd_time_iso_mix(const IsoMixFamily<Scalar>& f) {
  const Scalar a = f.alpha;
  const Scalar b = f.beta;
  const Scalar denom = Scalar(3) * a * (Scalar(1) - b);
  if (!(denom > Scalar(0))) return std::nullopt;
  const Scalar target = (Scalar(1) + Scalar(2) * b - a * (Scalar(1) - b)) / denom;
  if (!(target > Scalar(0) && target < Scalar(1))) return std::nullopt;
  return -std::log(target) / Scalar(2);
}

// ---------------------------------------------------------------------------

/// All four measures at one evaluation point.
template <typename Scalar>
struct CorrelationRecord {
  Scalar gamma_t;
  Scalar negativity;
  Scalar classical;
  Scalar discord;
  Scalar lqu;
};

template <typename Scalar>
CorrelationRecord<Scalar> evaluate_correlations(const DensityMatrix<Scalar>& rho, Scalar gamma_t,
                                                const ClassicalSearchOptions& opts = {}) {
  const Scalar c = classical_correlation(rho, opts).value;
  const Scalar q = std::max(Scalar(0), mutual_information(rho) - c);
  return {gamma_t, negativity(rho), c, q, lqu(rho)};
}

}  // namespace qcdeph
