#include "circlechain/gauss_legendre.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>

#include "circlechain/errors.hpp"

namespace circlechain {

namespace {

constexpr double kPi = 3.14159265358979323846;

// P_0..P_n at x.
std::vector<double> legendre_all(int n, double x) {
  std::vector<double> p(n + 1);
  p[0] = 1.0;
  if (n >= 1) p[1] = x;
  for (int m = 1; m < n; ++m) p[m + 1] = ((2.0 * m + 1.0) * x * p[m] - m * p[m - 1]) / (m + 1.0);
  return p;
}

GaussLegendre build(int q) {
  GaussLegendre g;
  g.q = q;
  g.x.resize(q);
  g.w.resize(q);
  for (int i = 0; i < q; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const auto p = legendre_all(q, x);
      dp = q * (x * p[q] - p[q - 1]) / (x * x - 1.0);
      const double dx = p[q] / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const auto p = legendre_all(q, x);
    dp = q * (x * p[q] - p[q - 1]) / (x * x - 1.0);
    g.x[q - 1 - i] = x;
    g.w[q - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }

  // Legendre expansion of the interpolant, integrated term by term.
  g.S.assign(static_cast<std::size_t>(q) * q, 0.0);
  std::vector<std::vector<double>> pj(q);
  for (int j = 0; j < q; ++j) pj[j] = legendre_all(q, g.x[j]);
  for (int i = 0; i < q; ++i) {
    const auto pi = legendre_all(q, g.x[i]);
    std::vector<double> integral(q);
    integral[0] = g.x[i] + 1.0;
    for (int m = 1; m < q; ++m) integral[m] = (pi[m + 1] - pi[m - 1]) / (2.0 * m + 1.0);
    for (int j = 0; j < q; ++j) {
      double s = 0.0;
      for (int m = 0; m < q; ++m) s += 0.5 * (2.0 * m + 1.0) * pj[j][m] * integral[m];
      g.S[static_cast<std::size_t>(i) * q + j] = s * g.w[j];
    }
  }
  return g;
}

}  // namespace

const GaussLegendre& gauss_legendre(int q) {
  if (q < 1 || q > 128) throw ValidationError("Gauss-Legendre order must be in [1, 128]");
  static std::array<std::unique_ptr<GaussLegendre>, 129> cache;
  static std::mutex mutex;
  std::lock_guard lock(mutex);
  if (!cache[q]) cache[q] = std::make_unique<GaussLegendre>(build(q));
  return *cache[q];
}

}  // namespace circlechain
