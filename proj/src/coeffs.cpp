#include "circlechain/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "linalg.hpp"

namespace circlechain {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_same_order(std::size_t a, std::size_t b) {
  if (a != b)
    throw ValidationError("truncation order mismatch: " + std::to_string(a) + " vs " +
                          std::to_string(b));
}

// Multiplies by i^n by swapping components, so no rounding is introduced.
cplx times_i_power(cplx z, int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return z;
    case 1: return {-z.imag(), z.real()};
    case 2: return {-z.real(), -z.imag()};
    default: return {z.imag(), -z.real()};
  }
}

double int_power(double k, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= k;
  return r;
}

}  // namespace

TaylorCoefficients::TaylorCoefficients(std::vector<cplx> c) : c_(std::move(c)) {
  if (c_.size() < 2) throw ValidationError("TaylorCoefficients needs K >= 1");
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (!finite(c_[k])) throw ValidationError("non-finite Taylor coefficient at k=" + std::to_string(k));
}

TaylorCoefficients TaylorCoefficients::zeros(std::size_t order) {
  return TaylorCoefficients(std::vector<cplx>(order + 1, cplx{}));
}

TaylorCoefficients TaylorCoefficients::with_constant(cplx c0) const {
  auto c = c_;
  c[0] = c0;
  return TaylorCoefficients(std::move(c));
}

TaylorCoefficients& TaylorCoefficients::operator+=(const TaylorCoefficients& other) {
  require_same_order(order(), other.order());
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += other.c_[k];
  return *this;
}

TaylorCoefficients& TaylorCoefficients::operator-=(const TaylorCoefficients& other) {
  require_same_order(order(), other.order());
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= other.c_[k];
  return *this;
}

TaylorCoefficients& TaylorCoefficients::operator*=(cplx scale) {
  for (auto& v : c_) v *= scale;
  return *this;
}

TaylorCoefficients operator+(TaylorCoefficients a, const TaylorCoefficients& b) { return a += b; }
TaylorCoefficients operator-(TaylorCoefficients a, const TaylorCoefficients& b) { return a -= b; }
TaylorCoefficients operator*(cplx s, TaylorCoefficients a) { return a *= s; }

FourierCoefficients::FourierCoefficients(double alpha0, std::vector<double> alpha,
                                         std::vector<double> beta, bool alpha0_indeterminate)
    : alpha0_(alpha0),
      alpha_(std::move(alpha)),
      beta_(std::move(beta)),
      alpha0_indeterminate_(alpha0_indeterminate) {
  if (alpha_.empty()) throw ValidationError("FourierCoefficients needs K >= 1");
  require_same_order(alpha_.size(), beta_.size());
  auto bad = [](double v) { return !std::isfinite(v); };
  if (!std::isfinite(alpha0_) || std::any_of(alpha_.begin(), alpha_.end(), bad) ||
      std::any_of(beta_.begin(), beta_.end(), bad))
    throw ValidationError("non-finite Fourier coefficient");
}

FourierCoefficients FourierCoefficients::zeros(std::size_t order) {
  return {0.0, std::vector<double>(order, 0.0), std::vector<double>(order, 0.0)};
}

cplx i_power(int n) { return times_i_power(cplx{1.0, 0.0}, n); }

TaylorCoefficients fourier_to_taylor(const FourierCoefficients& fc) {
  const std::size_t K = fc.order();
  std::vector<cplx> c(K + 1);
  c[0] = fc.alpha0() / 2.0;
  for (std::size_t k = 1; k <= K; ++k) c[k] = {fc.alpha(k), -fc.beta(k)};
  return TaylorCoefficients(std::move(c));
}

FourierCoefficients taylor_to_fourier(const TaylorCoefficients& tc, double imag_tolerance) {
  if (std::abs(tc[0].imag()) > imag_tolerance)
    throw ValidationError("Im(c_0) = " + std::to_string(tc[0].imag()) +
                          " has no real-function counterpart");
  const std::size_t K = tc.order();
  std::vector<double> alpha(K), beta(K);
  for (std::size_t k = 1; k <= K; ++k) {
    alpha[k - 1] = tc[k].real();
    beta[k - 1] = -tc[k].imag();
  }
  return {2.0 * tc[0].real(), std::move(alpha), std::move(beta)};
}

TaylorCoefficients angular_derivative_coeffs(const TaylorCoefficients& tc, int n) {
  if (n < 0) throw ValidationError("angular derivative order must be >= 0");
  if (n == 0) return tc;
  std::vector<cplx> c(tc.values().begin(), tc.values().end());
  c[0] = 0.0;
  for (std::size_t k = 1; k < c.size(); ++k)
    c[k] = times_i_power(c[k] * int_power(static_cast<double>(k), n), n);
  return TaylorCoefficients(std::move(c));
}

TaylorCoefficients angular_primitive_coeffs(const TaylorCoefficients& tc, int n) {
  if (n < 0) throw ValidationError("angular primitive order must be >= 0");
  if (n == 0) return tc;
  std::vector<cplx> c(tc.values().begin(), tc.values().end());
  c[0] = 0.0;
  for (std::size_t k = 1; k < c.size(); ++k)
    c[k] = times_i_power(c[k] / int_power(static_cast<double>(k), n), -n);
  return TaylorCoefficients(std::move(c));
}

GrowthReport growth_order(const TaylorCoefficients& tc, double geometric_threshold) {
  if (tc.order() < 32) throw ValidationError("growth_order needs K >= 32");
  GrowthReport report;

  std::vector<std::size_t> nonzero;
  for (std::size_t k = 1; k <= tc.order(); ++k)
    if (std::abs(tc[k]) > 0.0) nonzero.push_back(k);
  if (nonzero.empty()) {
    report.zero_tail = true;
    report.exp_bounded = BoundedVerdict::yes;
    return report;
  }

  // Upper half of the nonzero indices: low-k transients are not asymptotic.
  std::vector<double> logk, k_lin, logc;
  for (std::size_t i = nonzero.size() / 2; i < nonzero.size(); ++i) {
    const auto k = static_cast<double>(nonzero[i]);
    logk.push_back(std::log(k));
    k_lin.push_back(k);
    logc.push_back(std::log(std::abs(tc[nonzero[i]])));
  }
  report.samples = logk.size();
  if (report.samples < 8) return report;

  auto power = detail::least_squares(logk, logc, 2, [](std::size_t j, double x) {
    return j == 0 ? 1.0 : x;
  });
  if (!power.ok) return report;
  report.n_hat = power.params[1];
  report.fit_residual = power.rms;

  // Joint model log|c| = a + n log k + s k separates geometric growth from
  // power-law growth over the same window.
  std::vector<double> idx(report.samples);
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<double>(i);
  auto joint = detail::least_squares(idx, logc, 3, [&](std::size_t j, double x) {
    const auto i = static_cast<std::size_t>(x);
    return j == 0 ? 1.0 : (j == 1 ? logk[i] : k_lin[i]);
  });
  if (!joint.ok) return report;
  report.geometric_factor = std::exp(joint.params[2]);
  report.exp_bounded = report.geometric_factor > 1.0 + geometric_threshold ? BoundedVerdict::no
                                                                           : BoundedVerdict::yes;
  return report;
}

}  // namespace circlechain
