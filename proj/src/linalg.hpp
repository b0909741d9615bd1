#pragma once

// Small dense solvers for the handful of least-squares fits in the library.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace circlechain::detail {

/// Solves A x = b in place (row-major n x n) by Gaussian elimination with
/// partial pivoting. Returns false when A is numerically singular.
inline bool solve_dense(std::vector<double>& a, std::vector<double>& b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (a[piv * n + col] == 0.0) return false;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i * n + c] * b[c];
    b[i] = s / a[i * n + i];
  }
  return true;
}

struct LinearFit {
  std::vector<double> params;
  double rms = 0.0;
  bool ok = false;
};

/// Least squares y ~ sum_j params[j] * basis[j](x) via normal equations on
/// column-scaled design; fine for the 2-3 parameter fits used here.
template <class Basis>
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y,
                        std::size_t nparams, Basis basis) {
  LinearFit fit;
  const std::size_t m = x.size();
  if (m < nparams) return fit;
  std::vector<double> design(m * nparams);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < nparams; ++j) design[i * nparams + j] = basis(j, x[i]);
  std::vector<double> scale(nparams, 0.0);
  for (std::size_t j = 0; j < nparams; ++j) {
    for (std::size_t i = 0; i < m; ++i) scale[j] += design[i * nparams + j] * design[i * nparams + j];
    scale[j] = scale[j] > 0 ? 1.0 / std::sqrt(scale[j]) : 1.0;
    for (std::size_t i = 0; i < m; ++i) design[i * nparams + j] *= scale[j];
  }
  std::vector<double> ata(nparams * nparams, 0.0), atb(nparams, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < nparams; ++j) {
      atb[j] += design[i * nparams + j] * y[i];
      for (std::size_t l = 0; l < nparams; ++l)
        ata[j * nparams + l] += design[i * nparams + j] * design[i * nparams + l];
    }
  if (!solve_dense(ata, atb)) return fit;
  double ss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double r = y[i];
    for (std::size_t j = 0; j < nparams; ++j) r -= design[i * nparams + j] * atb[j];
    ss += r * r;
  }
  for (std::size_t j = 0; j < nparams; ++j) atb[j] *= scale[j];
  fit.params = std::move(atb);
  fit.rms = std::sqrt(ss / static_cast<double>(m));
  fit.ok = true;
  return fit;
}

}  // namespace circlechain::detail
