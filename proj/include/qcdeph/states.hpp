#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include "qcdeph/basis.hpp"
#include "qcdeph/errors.hpp"
#include "qcdeph/matcore.hpp"
#include "qcdeph/philox.hpp"

namespace qcdeph {

/// Tolerances for trace, Hermiticity and positivity of a density matrix.
inline constexpr double kDensityTolerance = 1e-10;

/// Returns the first violated invariant of a candidate 6x6 density matrix,
/// checked in the order Hermiticity, trace, positivity.
template <typename Derived>
Invariant check_density(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::RealScalar;
  if (!(hermiticity_error(m) <= Scalar(kDensityTolerance))) return Invariant::Hermiticity;
  const auto tr = m.trace();
  if (!(std::abs(std::real(tr) - Scalar(1)) <= Scalar(kDensityTolerance)) ||
      !(std::abs(std::imag(tr)) <= Scalar(kDensityTolerance))) {
    return Invariant::Trace;
  }
  if (!(hermitian_eigenvalues(m)[0] >= -Scalar(kDensityTolerance))) return Invariant::Positivity;
  return Invariant::None;
}

/// Validated state of the qubit-qutrit pair.
template <typename Scalar>
class DensityMatrix {
 public:
  using Matrix = ComplexMatrix<Scalar>;

  /// Validates shape and all invariants; throws BadShape or InvariantViolation.
  static DensityMatrix from_matrix(Matrix m) {
    if (m.rows() != kDim || m.cols() != kDim) {
      throw Error(ErrorCode::BadShape, "density matrix must be 6x6, got " + std::to_string(m.rows()) + "x" +
                                           std::to_string(m.cols()));
    }
    const Invariant bad = check_density(m);
    if (bad != Invariant::None) {
      throw Error(ErrorCode::InvariantViolation, std::string("density matrix violates ") + to_string(bad), bad);
    }
    return DensityMatrix(std::move(m));
  }

  /// Wraps a matrix produced by an operation that preserves the invariants.
  static DensityMatrix assume_valid(Matrix m) { return DensityMatrix(std::move(m)); }

  const Matrix& mat() const { return mat_; }
  std::complex<Scalar> operator()(Eigen::Index i, Eigen::Index j) const { return mat_(i, j); }

 private:
  explicit DensityMatrix(Matrix m) : mat_(std::move(m)) {}
  Matrix mat_;
};

using DensityMatrixd = DensityMatrix<double>;

// ---------------------------------------------------------------------------
// Parameter families

namespace detail {
template <typename Scalar>
void require_range(Scalar value, Scalar lo, Scalar hi, const char* name) {
  if (!(value >= lo && value <= hi)) {
    throw Error(ErrorCode::InvalidParams, std::string(name) + " = " + std::to_string(static_cast<double>(value)) +
                                              " outside [" + std::to_string(static_cast<double>(lo)) + ", " +
                                              std::to_string(static_cast<double>(hi)) + "]");
  }
}
}  // namespace detail

/// alpha (|02><02| + |12><12|) + beta (phi+ + phi- + psi+) + gamma psi-,
/// with beta fixed by unit trace: 2 alpha + 3 beta + gamma = 1.
template <typename Scalar>
struct TwoParamFamily {
  Scalar alpha;
  Scalar gamma;
  Scalar beta;

  static TwoParamFamily make(Scalar alpha, Scalar gamma) {
    detail::require_range(alpha, Scalar(0), Scalar(0.5), "alpha");
    detail::require_range(gamma, Scalar(0), Scalar(1), "gamma");
    Scalar beta = (Scalar(1) - Scalar(2) * alpha - gamma) / Scalar(3);
    if (beta < Scalar(-1e-12)) {
      throw Error(ErrorCode::InvalidParams, "beta = (1 - 2 alpha - gamma)/3 = " +
                                                std::to_string(static_cast<double>(beta)) + " is negative");
    }
    if (beta < Scalar(0)) beta = Scalar(0);
    return {alpha, gamma, beta};
  }
};

/// alpha |psi3><psi3| + (1 - alpha) |psi2><psi2|.
template <typename Scalar>
struct DfsMixFamily {
  Scalar alpha;

  static DfsMixFamily make(Scalar alpha) {
    detail::require_range(alpha, Scalar(0), Scalar(1), "alpha");
    return {alpha};
  }
};

/// beta |psi3><psi3| + (1 - beta) [alpha |psi1><psi1| + (1 - alpha) I/6].
template <typename Scalar>
struct IsoMixFamily {
  Scalar alpha;
  Scalar beta;

  static IsoMixFamily make(Scalar alpha, Scalar beta) {
    detail::require_range(alpha, Scalar(0), Scalar(1), "alpha");
    detail::require_range(beta, Scalar(0), Scalar(1), "beta");
    return {alpha, beta};
  }
};

// ---------------------------------------------------------------------------
// Vectors and constructors

template <typename Scalar>
ComplexVector<Scalar> basis_ket(int qubit, int qutrit) {
  ComplexVector<Scalar> v = ComplexVector<Scalar>::Zero(kDim);
  v[basis_index(qubit, qutrit)] = Scalar(1);
  return v;
}

template <typename Scalar>
struct BellBasis {
  ComplexVector<Scalar> phi_plus;
  ComplexVector<Scalar> phi_minus;
  ComplexVector<Scalar> psi_plus;
  ComplexVector<Scalar> psi_minus;
};

/// phi+- = (|00> +- |11>)/sqrt2, psi+- = (|01> +- |10>)/sqrt2 inside 2 (x) 3.
template <typename Scalar>
BellBasis<Scalar> bell_basis_vectors() {
  const Scalar h = Scalar(1) / std::sqrt(Scalar(2));
  const auto k00 = basis_ket<Scalar>(0, 0);
  const auto k01 = basis_ket<Scalar>(0, 1);
  const auto k10 = basis_ket<Scalar>(1, 0);
  const auto k11 = basis_ket<Scalar>(1, 1);
  return {(k00 + k11) * h, (k00 - k11) * h, (k01 + k10) * h, (k01 - k10) * h};
}

/// psi1 = (|00> + |12>)/sqrt2, psi2 = (|01> + |12>)/sqrt2, psi3 = (|02> + |10>)/sqrt2.
template <typename Scalar>
ComplexVector<Scalar> psi_vector(int k) {
  const Scalar h = Scalar(1) / std::sqrt(Scalar(2));
  switch (k) {
    case 1: return (basis_ket<Scalar>(0, 0) + basis_ket<Scalar>(1, 2)) * h;
    case 2: return (basis_ket<Scalar>(0, 1) + basis_ket<Scalar>(1, 2)) * h;
    case 3: return (basis_ket<Scalar>(0, 2) + basis_ket<Scalar>(1, 0)) * h;
    default: break;
  }
  throw Error(ErrorCode::BadIndex, "psi index must be 1, 2 or 3, got " + std::to_string(k));
}

template <typename Scalar>
DensityMatrix<Scalar> psi_k_state(int k) {
  return DensityMatrix<Scalar>::assume_valid(projector(psi_vector<Scalar>(k)));
}

template <typename Scalar>
DensityMatrix<Scalar> maximally_mixed() {
  return DensityMatrix<Scalar>::assume_valid(ComplexMatrix<Scalar>::Identity(kDim, kDim) / Scalar(kDim));
}

template <typename Scalar>
DensityMatrix<Scalar> two_param_state(const TwoParamFamily<Scalar>& f) {
  const auto bell = bell_basis_vectors<Scalar>();
  ComplexMatrix<Scalar> rho = f.alpha * (projector(basis_ket<Scalar>(0, 2)) + projector(basis_ket<Scalar>(1, 2)));
  rho += f.beta * (projector(bell.phi_plus) + projector(bell.phi_minus) + projector(bell.psi_plus));
  rho += f.gamma * projector(bell.psi_minus);
  return DensityMatrix<Scalar>::from_matrix(std::move(rho));
}

template <typename Scalar>
DensityMatrix<Scalar> dfs_mix_state(const DfsMixFamily<Scalar>& f) {
  ComplexMatrix<Scalar> rho = f.alpha * psi_k_state<Scalar>(3).mat() + (Scalar(1) - f.alpha) * psi_k_state<Scalar>(2).mat();
  return DensityMatrix<Scalar>::from_matrix(std::move(rho));
}

/// Isotropic-type state alpha |psi1><psi1| + (1 - alpha) I/6.
template <typename Scalar>
DensityMatrix<Scalar> iso_state(Scalar alpha) {
  detail::require_range(alpha, Scalar(0), Scalar(1), "alpha");
  ComplexMatrix<Scalar> rho = alpha * psi_k_state<Scalar>(1).mat() + (Scalar(1) - alpha) * maximally_mixed<Scalar>().mat();
  return DensityMatrix<Scalar>::from_matrix(std::move(rho));
}

template <typename Scalar>
DensityMatrix<Scalar> iso_mix_state(const IsoMixFamily<Scalar>& f) {
  ComplexMatrix<Scalar> rho = f.beta * psi_k_state<Scalar>(3).mat() + (Scalar(1) - f.beta) * iso_state(f.alpha).mat();
  return DensityMatrix<Scalar>::from_matrix(std::move(rho));
}

// ---------------------------------------------------------------------------
// Haar-random pure states

/// Unit vector with i.i.d. standard normal real and imaginary parts
/// (drawn in the order re_0, im_0, re_1, im_1, ...), then normalized.
/// Resamples from the same stream if the draw has zero norm.
inline ComplexVector<double> random_unit_vector(PhiloxStream& stream) {
  ComplexVector<double> v(kDim);
  for (;;) {
    for (int i = 0; i < kDim; ++i) {
      const double re = stream.gaussian();
      const double im = stream.gaussian();
      v[i] = {re, im};
    }
    const double n = v.norm();
    if (n > 0.0) return v / n;
  }
}

inline DensityMatrixd random_pure_state(PhiloxStream& stream) {
  return DensityMatrixd::assume_valid(projector(random_unit_vector(stream)));
}

/// State number `index` of the ensemble seeded by `master_seed`.
inline DensityMatrixd random_pure_state(std::uint64_t master_seed, std::uint64_t index) {
  PhiloxStream stream(master_seed, index);
  return random_pure_state(stream);
}

}  // namespace qcdeph
