#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace qcdeph {

template <typename Scalar, std::size_t N>
struct NelderMeadResult {
  std::array<Scalar, N> x;
  Scalar value;
  int iterations;
  bool converged;
};

/// Minimizes f from an axis-aligned initial simplex of edge `step` around x0.
/// Stops once the largest vertex-to-best distance drops below `diameter_tol`.
template <typename Scalar, std::size_t N, typename F>
NelderMeadResult<Scalar, N> nelder_mead(F&& f, const std::array<Scalar, N>& x0, Scalar step, Scalar diameter_tol,
                                        int max_iterations = 5000) {
  using Point = std::array<Scalar, N>;
  std::array<Point, N + 1> pts;
  std::array<Scalar, N + 1> vals;
  pts[0] = x0;
  for (std::size_t i = 0; i < N; ++i) {
    pts[i + 1] = x0;
    pts[i + 1][i] += step;
  }
  for (std::size_t i = 0; i <= N; ++i) vals[i] = f(pts[i]);

  auto lerp = [](const Point& a, const Point& b, Scalar t) {
    Point r;
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + t * (b[i] - a[i]);
    return r;
  };

  std::array<std::size_t, N + 1> order;
  int iter = 0;
  bool converged = false;
  for (; iter < max_iterations; ++iter) {
    for (std::size_t i = 0; i <= N; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return vals[l] < vals[r]; });
    const std::size_t best = order[0];
    const std::size_t worst = order[N];
    const std::size_t second = order[N - 1];

    Scalar diameter(0);
    for (std::size_t i = 0; i <= N; ++i) {
      Scalar d2(0);
      for (std::size_t k = 0; k < N; ++k) d2 += (pts[i][k] - pts[best][k]) * (pts[i][k] - pts[best][k]);
      diameter = std::max(diameter, std::sqrt(d2));
    }
    if (diameter < diameter_tol) {
      converged = true;
      break;
    }

    Point centroid{};
    for (std::size_t i = 0; i <= N; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < N; ++k) centroid[k] += pts[i][k] / Scalar(N);
    }

    const Point reflected = lerp(centroid, pts[worst], Scalar(-1));
    const Scalar fr = f(reflected);
    if (fr < vals[best]) {
      const Point expanded = lerp(centroid, pts[worst], Scalar(-2));
      const Scalar fe = f(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Point contracted = outside ? lerp(centroid, reflected, Scalar(0.5)) : lerp(centroid, pts[worst], Scalar(0.5));
    const Scalar fc = f(contracted);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= N; ++i) {
      if (i == best) continue;
      pts[i] = lerp(pts[best], pts[i], Scalar(0.5));
      vals[i] = f(pts[i]);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= N; ++i) {
    if (vals[i] < vals[best]) best = i;
  }
  return {pts[best], vals[best], iter, converged};
}

}  // namespace qcdeph
