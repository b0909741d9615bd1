#pragma once

#include <vector>

namespace circlechain {

/// q-point Gauss-Legendre rule on [-1, 1] with its spectral integration
/// matrix: sum_j S(i, j) f(x_j) ~ integral_{-1}^{x_i} f for f a polynomial of
/// degree < q.
struct GaussLegendre {
  int q = 0;
  std::vector<double> x;
  std::vector<double> w;
  std::vector<double> S;  ///< row-major q x q

  double integ(int i, int j) const { return S[static_cast<std::size_t>(i) * q + j]; }
};

/// Cached rule; thread-safe. 1 <= q <= 128.
const GaussLegendre& gauss_legendre(int q);

}  // namespace circlechain
