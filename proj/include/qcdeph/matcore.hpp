#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qcdeph/basis.hpp"
#include "qcdeph/errors.hpp"

namespace qcdeph {

template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using RealMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Symmetry tolerance accepted by the Hermitian routines (max-norm of A - A^H).
inline constexpr double kHermitianTolerance = 1e-10;

/// Eigenvalues in [-kEigenClamp, 0] are treated as zero; anything more
/// negative means the matrix is not positive semidefinite.
inline constexpr double kEigenClamp = 1e-10;

template <typename Scalar>
struct HermitianEigenResult {
  RealVector<Scalar> eigenvalues;     // ascending
  ComplexMatrix<Scalar> eigenvectors; // column k belongs to eigenvalues[k]
};

template <typename Derived>
typename Derived::RealScalar hermiticity_error(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Derived::RealScalar;
  if (a.size() == 0) return Real(0);
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

namespace detail {

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* where) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw Error(ErrorCode::NonSquare, std::string(where) + ": matrix is " + std::to_string(a.rows()) +
                                          "x" + std::to_string(a.cols()) + ", expected square");
  }
}

template <typename Derived>
void require_hermitian(const Eigen::MatrixBase<Derived>& a, const char* where) {
  require_square(a, where);
  const double err = static_cast<double>(hermiticity_error(a));
  if (!(err <= kHermitianTolerance)) {
    throw Error(ErrorCode::NonHermitian,
                std::string(where) + ": matrix is not Hermitian (max |A - A^H| = " + std::to_string(err) + ")");
  }
}

// Rotates columns/rows p, q of the Hermitian working matrix so that a(p, q)
// vanishes, accumulating the unitary into v when given.
template <typename Scalar>
void jacobi_rotate(ComplexMatrix<Scalar>& a, ComplexMatrix<Scalar>* v, Eigen::Index p, Eigen::Index q) {
  using Complex = std::complex<Scalar>;
  const Complex apq = a(p, q);
  const Scalar mag = std::abs(apq);
  if (mag == Scalar(0)) return;

  // Phase diag(1, e^{-i phi}) makes the 2x2 block real, then a real rotation.
  const Complex phase = std::conj(apq) / mag;  // e^{-i phi}
  const Scalar app = std::real(a(p, p));
  const Scalar aqq = std::real(a(q, q));
  const Scalar theta = (aqq - app) / (Scalar(2) * mag);
  Scalar t = Scalar(1) / (std::abs(theta) + std::sqrt(theta * theta + Scalar(1)));
  if (theta < Scalar(0)) t = -t;
  const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
  const Scalar s = t * c;

  // U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
  const Complex u00(c, 0);
  const Complex u01(s, 0);
  const Complex u10 = -s * phase;
  const Complex u11 = c * phase;

  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * u00 + akq * u10;
    a(k, q) = akp * u01 + akq * u11;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(u00) * apk + std::conj(u10) * aqk;
    a(q, k) = std::conj(u01) * apk + std::conj(u11) * aqk;
  }
  a(p, q) = Complex(0);
  a(q, p) = Complex(0);
  a(p, p) = Complex(app - t * mag, 0);
  a(q, q) = Complex(aqq + t * mag, 0);

  if (v == nullptr) return;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex vkp = (*v)(k, p);
    const Complex vkq = (*v)(k, q);
    (*v)(k, p) = vkp * u00 + vkq * u10;
    (*v)(k, q) = vkp * u01 + vkq * u11;
  }
}

template <typename Scalar>
Scalar off_diagonal_norm(const ComplexMatrix<Scalar>& a) {
  Scalar sum(0);
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

// Cyclic sweeps until the off-diagonal norm drops below 1e-14 ||a||.
template <typename Scalar>
void jacobi_diagonalize(ComplexMatrix<Scalar>& a, ComplexMatrix<Scalar>* v) {
  const Eigen::Index n = a.rows();
  const Scalar scale = a.norm();
  const Scalar target = Scalar(1e-14) * scale;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && scale > Scalar(0); ++sweep) {
    if (off_diagonal_norm(a) < target) break;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    }
  }
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.
///
/// Eigenvalues come back ascending (stable with respect to the sweep order for
/// ties). Each eigenvector is scaled so its first component with modulus above
/// 1e-12 is real and positive, which makes the output deterministic.
template <typename Derived>
HermitianEigenResult<typename Derived::RealScalar> hermitian_eigen(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::RealScalar;
  using Complex = std::complex<Scalar>;
  detail::require_hermitian(input, "hermitian_eigen");

  const Eigen::Index n = input.rows();
  ComplexMatrix<Scalar> a = (input + input.adjoint()) * Complex(Scalar(0.5), Scalar(0));
  ComplexMatrix<Scalar> v = ComplexMatrix<Scalar>::Identity(n, n);
  detail::jacobi_diagonalize(a, &v);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index l, Eigen::Index r) { return std::real(a(l, l)) < std::real(a(r, r)); });

  HermitianEigenResult<Scalar> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues[k] = std::real(a(src, src));
    ComplexVector<Scalar> col = v.col(src);
    col /= col.norm();
    for (Eigen::Index i = 0; i < n; ++i) {
      const Scalar m = std::abs(col[i]);
      if (m > Scalar(1e-12)) {
        col *= std::conj(col[i]) / m;
        col[i] = Complex(std::real(col[i]), 0);
        break;
      }
    }
    out.eigenvectors.col(k) = col;
  }
  return out;
}

template <typename Derived>
RealVector<typename Derived::RealScalar> hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::RealScalar;
  detail::require_hermitian(input, "hermitian_eigenvalues");
  ComplexMatrix<Scalar> a = (input + input.adjoint()) * std::complex<Scalar>(Scalar(0.5), Scalar(0));
  detail::jacobi_diagonalize(a, static_cast<ComplexMatrix<Scalar>*>(nullptr));
  RealVector<Scalar> ev = a.diagonal().real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Square root of a positive semidefinite Hermitian matrix via its spectrum.
template <typename Derived>
ComplexMatrix<typename Derived::RealScalar> psd_sqrt(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::RealScalar;
  const auto eig = hermitian_eigen(a);
  RealVector<Scalar> roots(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < roots.size(); ++k) {
    const Scalar lambda = eig.eigenvalues[k];
    if (lambda < -Scalar(kEigenClamp)) {
      throw Error(ErrorCode::NotPSD, "psd_sqrt: eigenvalue " + std::to_string(static_cast<double>(lambda)) +
                                         " is below -1e-10");
    }
    roots[k] = lambda > Scalar(0) ? std::sqrt(lambda) : Scalar(0);
  }
  const auto& vecs = eig.eigenvectors;
  ComplexMatrix<Scalar> s = vecs * roots.template cast<std::complex<Scalar>>().asDiagonal() * vecs.adjoint();
  // Symmetrize away the last-bit asymmetry of the product.
  return (s + s.adjoint()) * std::complex<Scalar>(Scalar(0.5), Scalar(0));
}

/// Tensor product with the row-major convention (A (x) B)(i*rB + k, j*cB + l) = A(i,j) B(k,l).
template <typename DerivedA, typename DerivedB>
ComplexMatrix<typename DerivedA::RealScalar> kron(const Eigen::MatrixBase<DerivedA>& a,
                                                  const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::RealScalar;
  ComplexMatrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          std::complex<Scalar>(a(i, j)) * b.template cast<std::complex<Scalar>>();
    }
  }
  return out;
}

/// Entrywise (Hadamard) product of a complex matrix with a real weight matrix.
template <typename DerivedA, typename DerivedW>
ComplexMatrix<typename DerivedA::RealScalar> schur_product(const Eigen::MatrixBase<DerivedA>& a,
                                                           const Eigen::MatrixBase<DerivedW>& weights) {
  if (a.rows() != weights.rows() || a.cols() != weights.cols()) {
    throw Error(ErrorCode::BadShape, "schur_product: shape mismatch");
  }
  using Scalar = typename DerivedA::RealScalar;
  return a.cwiseProduct(weights.template cast<std::complex<Scalar>>());
}

namespace detail {
template <typename Derived>
void require_bipartite(const Eigen::MatrixBase<Derived>& rho, const char* where) {
  if (rho.rows() != kDim || rho.cols() != kDim) {
    throw Error(ErrorCode::BadShape, std::string(where) + ": expected a 6x6 matrix, got " +
                                         std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()));
  }
}
}  // namespace detail

/// Transposes the qubit index: with rho viewed as 2x2 blocks of 3x3, swaps
/// the two off-diagonal blocks.
template <typename Derived>
ComplexMatrix<typename Derived::RealScalar> partial_transpose_qubit(const Eigen::MatrixBase<Derived>& rho) {
  detail::require_bipartite(rho, "partial_transpose_qubit");
  ComplexMatrix<typename Derived::RealScalar> out = rho;
  out.block(0, kQutritDim, kQutritDim, kQutritDim) = rho.block(kQutritDim, 0, kQutritDim, kQutritDim);
  out.block(kQutritDim, 0, kQutritDim, kQutritDim) = rho.block(0, kQutritDim, kQutritDim, kQutritDim);
  return out;
}

/// Transposes the qutrit index: each 3x3 block transposed in place.
template <typename Derived>
ComplexMatrix<typename Derived::RealScalar> partial_transpose_qutrit(const Eigen::MatrixBase<Derived>& rho) {
  detail::require_bipartite(rho, "partial_transpose_qutrit");
  ComplexMatrix<typename Derived::RealScalar> out(kDim, kDim);
  for (int a = 0; a < kQubitDim; ++a) {
    for (int b = 0; b < kQubitDim; ++b) {
      out.block(a * kQutritDim, b * kQutritDim, kQutritDim, kQutritDim) =
          rho.block(a * kQutritDim, b * kQutritDim, kQutritDim, kQutritDim).transpose();
    }
  }
  return out;
}

/// Reduced qubit state rho_A = Tr_B rho (2x2).
template <typename Derived>
ComplexMatrix<typename Derived::RealScalar> trace_out_qutrit(const Eigen::MatrixBase<Derived>& rho) {
  detail::require_bipartite(rho, "trace_out_qutrit");
  ComplexMatrix<typename Derived::RealScalar> out(kQubitDim, kQubitDim);
  for (int a = 0; a < kQubitDim; ++a) {
    for (int b = 0; b < kQubitDim; ++b) {
      out(a, b) = rho.block(a * kQutritDim, b * kQutritDim, kQutritDim, kQutritDim).trace();
    }
  }
  return out;
}

/// Reduced qutrit state rho_B = Tr_A rho (3x3).
template <typename Derived>
ComplexMatrix<typename Derived::RealScalar> trace_out_qubit(const Eigen::MatrixBase<Derived>& rho) {
  detail::require_bipartite(rho, "trace_out_qubit");
  return rho.block(0, 0, kQutritDim, kQutritDim) + rho.block(kQutritDim, kQutritDim, kQutritDim, kQutritDim);
}

template <typename Scalar>
ComplexMatrix<Scalar> pauli(int axis) {
  using Complex = std::complex<Scalar>;
  ComplexMatrix<Scalar> s = ComplexMatrix<Scalar>::Zero(2, 2);
  switch (axis) {
    case 1: s(0, 1) = Complex(1); s(1, 0) = Complex(1); break;
    case 2: s(0, 1) = Complex(0, -1); s(1, 0) = Complex(0, 1); break;
    case 3: s(0, 0) = Complex(1); s(1, 1) = Complex(-1); break;
    default: throw Error(ErrorCode::BadIndex, "pauli: axis must be 1, 2 or 3");
  }
  return s;
}

/// |v><v| with the lower triangle written as the exact conjugate of the upper.
template <typename Derived>
ComplexMatrix<typename Derived::RealScalar> projector(const Eigen::MatrixBase<Derived>& v) {
  const Eigen::Index n = v.size();
  ComplexMatrix<typename Derived::RealScalar> p(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    p(i, i) = std::norm(v[i]);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      p(i, j) = v[i] * std::conj(v[j]);
      p(j, i) = std::conj(p(i, j));
    }
  }
  return p;
}

}  // namespace qcdeph
