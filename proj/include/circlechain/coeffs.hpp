#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "circlechain/errors.hpp"

namespace circlechain {

using cplx = std::complex<double>;

/// Truncated Taylor series c_0 + c_1 z + ... + c_K z^K of an inner analytic
/// function. K is carried explicitly; binary operations between different K
/// are rejected.
class TaylorCoefficients {
 public:
  /// Takes c_0..c_K. Throws ValidationError when K < 1 or an entry is not finite.
  explicit TaylorCoefficients(std::vector<cplx> c);

  static TaylorCoefficients zeros(std::size_t order);

  std::size_t order() const { return c_.size() - 1; }
  const cplx& operator[](std::size_t k) const { return c_[k]; }
  std::span<const cplx> values() const { return c_; }

  /// Vanishes at the origin.
  bool proper() const { return c_[0] == cplx{0.0, 0.0}; }

  /// Copy with c_0 replaced.
  TaylorCoefficients with_constant(cplx c0) const;

  TaylorCoefficients& operator+=(const TaylorCoefficients& other);
  TaylorCoefficients& operator-=(const TaylorCoefficients& other);
  TaylorCoefficients& operator*=(cplx scale);

  friend bool operator==(const TaylorCoefficients&, const TaylorCoefficients&) = default;

 private:
  std::vector<cplx> c_;
};

TaylorCoefficients operator+(TaylorCoefficients a, const TaylorCoefficients& b);
TaylorCoefficients operator-(TaylorCoefficients a, const TaylorCoefficients& b);
TaylorCoefficients operator*(cplx s, TaylorCoefficients a);

/// Real Fourier data alpha_0, alpha_1..alpha_K, beta_1..beta_K.
class FourierCoefficients {
 public:
  FourierCoefficients(double alpha0, std::vector<double> alpha, std::vector<double> beta,
                      bool alpha0_indeterminate = false);

  static FourierCoefficients zeros(std::size_t order);

  std::size_t order() const { return alpha_.size(); }
  double alpha0() const { return alpha0_; }
  /// 1-based: k in [1, K].
  double alpha(std::size_t k) const { return alpha_[k - 1]; }
  double beta(std::size_t k) const { return beta_[k - 1]; }
  std::span<const double> alphas() const { return alpha_; }
  std::span<const double> betas() const { return beta_; }

  /// Set when alpha_0 was lost to angular differentiation or integration.
  bool alpha0_indeterminate() const { return alpha0_indeterminate_; }

  friend bool operator==(const FourierCoefficients&, const FourierCoefficients&) = default;

 private:
  double alpha0_;
  std::vector<double> alpha_;
  std::vector<double> beta_;
  bool alpha0_indeterminate_;
};

/// c_0 = alpha_0 / 2, c_k = alpha_k - i beta_k.
TaylorCoefficients fourier_to_taylor(const FourierCoefficients& fc);

/// Inverse of fourier_to_taylor. Throws ValidationError when |Im c_0| exceeds
/// imag_tolerance, since a real function needs a real alpha_0.
FourierCoefficients taylor_to_fourier(const TaylorCoefficients& tc, double imag_tolerance = 0.0);

/// n-fold angular derivative: c_k -> (ik)^n c_k, c_0 -> 0 for n >= 1.
TaylorCoefficients angular_derivative_coeffs(const TaylorCoefficients& tc, int n);

/// n-fold angular primitive: c_k -> c_k / (ik)^n, c_0 -> 0 for n >= 1.
TaylorCoefficients angular_primitive_coeffs(const TaylorCoefficients& tc, int n);

/// i^n computed exactly from n mod 4.
cplx i_power(int n);

enum class BoundedVerdict { yes, no, inconclusive };

struct GrowthReport {
  double n_hat = 0.0;            ///< log-log slope over the upper half of nonzero indices
  BoundedVerdict exp_bounded = BoundedVerdict::inconclusive;
  double fit_residual = 0.0;     ///< rms residual of the log-log fit
  double geometric_factor = 1.0; ///< exp of the per-index log growth in the joint fit
  bool zero_tail = false;        ///< every c_k with k >= 1 is zero; n_hat is meaningless
  std::size_t samples = 0;
};

/// Estimates the power-law growth of |c_k| and decides exponential
/// boundedness by a geometric-factor threshold. Requires K >= 32.
GrowthReport growth_order(const TaylorCoefficients& tc, double geometric_threshold = 1e-3);

}  // namespace circlechain
