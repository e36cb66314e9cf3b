#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "qcdeph/basis.hpp"
#include "qcdeph/errors.hpp"
#include "qcdeph/matcore.hpp"
#include "qcdeph/states.hpp"

namespace qcdeph {

using ExponentMatrix = std::array<std::array<int, kDim>, kDim>;

// Collective-dephasing weight of each basis state; coherence (i, j) decays as
// xi^{(d_i - d_j)^2}. |02> and |10> share weight 2 and span the
// decoherence-free pair.
inline constexpr std::array<int, kDim> kDephasingWeights{0, 1, 2, 2, 3, 4};

constexpr ExponentMatrix make_exponent_matrix() {
  ExponentMatrix e{};
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      const int diff = kDephasingWeights[i] - kDephasingWeights[j];
      e[i][j] = diff * diff;
    }
  }
  return e;
}

inline constexpr ExponentMatrix kExponents = make_exponent_matrix();

namespace detail {
// Power pattern of the solved master equation, entered row by row.
inline constexpr ExponentMatrix kLiteralExponents{{
    {0, 1, 4, 4, 9, 16},
    {1, 0, 1, 1, 4, 9},
    {4, 1, 0, 0, 1, 4},
    {4, 1, 0, 0, 1, 4},
    {9, 4, 1, 1, 0, 1},
    {16, 9, 4, 4, 1, 0},
}};
static_assert(kExponents == kLiteralExponents, "exponent formula disagrees with the literal pattern");
}  // namespace detail

/// Evaluation point of the channel: gamma_t = Gamma * t and xi = exp(-gamma_t / 8).
/// gamma_t = +infinity is allowed and gives xi = 0.
template <typename Scalar>
class DephasingPoint {
 public:
  explicit DephasingPoint(Scalar gamma_t) : gamma_t_(gamma_t), xi_(std::exp(-gamma_t / Scalar(8))) {
    if (!(gamma_t >= Scalar(0))) {
      throw Error(ErrorCode::InvalidParams,
                  "gamma_t must be >= 0, got " + std::to_string(static_cast<double>(gamma_t)));
    }
  }

  static DephasingPoint from_xi(Scalar xi) {
    if (!(xi >= Scalar(0) && xi <= Scalar(1))) {
      throw Error(ErrorCode::InvalidParams, "xi must lie in [0, 1], got " + std::to_string(static_cast<double>(xi)));
    }
    DephasingPoint p(xi > Scalar(0) ? -Scalar(8) * std::log(xi) : std::numeric_limits<Scalar>::infinity());
    p.xi_ = xi;
    return p;
  }

  Scalar gamma_t() const { return gamma_t_; }
  Scalar xi() const { return xi_; }

  /// xi^k for the non-negative integer exponents of the channel (0^0 = 1).
  Scalar xi_pow(int k) const {
    Scalar r(1);
    for (int i = 0; i < k; ++i) r *= xi_;
    return r;
  }

 private:
  Scalar gamma_t_;
  Scalar xi_;
};

/// Attenuation factors xi^{E(i,j)} as a real 6x6 matrix.
template <typename Scalar>
RealMatrix<Scalar> attenuation(const DephasingPoint<Scalar>& p) {
  RealMatrix<Scalar> w(kDim, kDim);
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) w(i, j) = p.xi_pow(kExponents[i][j]);
  }
  return w;
}

/// rho(t)_ij = xi^{E(i,j)} rho(0)_ij.
template <typename Scalar>
DensityMatrix<Scalar> dephase(const DensityMatrix<Scalar>& rho0, const DephasingPoint<Scalar>& p) {
  return DensityMatrix<Scalar>::assume_valid(schur_product(rho0.mat(), attenuation(p)));
}

/// The xi = 0 limit: only the diagonal and the decoherence-free (|02>,|10>)
/// coherences survive. Entries are zeroed exactly.
template <typename Scalar>
DensityMatrix<Scalar> asymptotic_state(const DensityMatrix<Scalar>& rho0) {
  ComplexMatrix<Scalar> out = rho0.mat();
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      if (kExponents[i][j] != 0) out(i, j) = std::complex<Scalar>(0);
    }
  }
  return DensityMatrix<Scalar>::assume_valid(std::move(out));
}

}  // namespace qcdeph
