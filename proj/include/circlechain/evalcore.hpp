#pragma once

#include <span>
#include <vector>

#include "circlechain/coeffs.hpp"

namespace circlechain {

inline constexpr double kPi = 3.14159265358979323846;

/// Maps any angle to (-pi, pi].
double normalize_angle(double theta);

/// Point z = rho e^{i theta} of the open unit disk.
struct DiskPoint {
  double rho;
  double theta;

  /// Validates 0 <= rho < 1 (DomainError otherwise) and normalizes theta.
  static DiskPoint make(double rho, double theta);
};

/// sum_{k=0}^{K} c_k z^k by Horner's scheme in descending k.
cplx eval_inner(const TaylorCoefficients& tc, DiskPoint pt);

/// alpha_0/2 + sum_k rho^k (alpha_k cos k theta + beta_k sin k theta), summed
/// directly in real arithmetic (independent of eval_inner).
double regulated_sum(const FourierCoefficients& fc, DiskPoint pt);

/// Summability kernel used on the approach to the circle.
///  - abel:  u(1 - h, theta), the Poisson mean; h = 1 - rho.
///  - gauss: sum_k c_k e^{-(k eta)^2} e^{ik theta}, the heat-kernel mean; h = eta^2.
/// Both expand in integer powers of h at points where the boundary function is
/// smooth, so the same Richardson table applies.
enum class Summation { abel, gauss };

/// Dyadic ladder h_j = h0 * 2^{-j}, j = 0..levels-1, extrapolated to h = 0
/// with a Richardson table of the given order.
struct RhoLadder {
  Summation kernel = Summation::abel;
  double eta0 = 1.0 / 16.0;  ///< abel: 1 - rho_0; gauss: eta_0
  int levels = 6;
  int order = 3;

  /// Abel ladder eta0 = 1/16, six levels, order 3. Needs a truncation order
  /// large enough that rho^K is negligible at the finest level (K >~ 20000).
  static RhoLadder abel_default();

  /// Gauss ladder sized so the finest damping e^{-(K eta)^2} is ~1e-9.
  static RhoLadder for_order(std::size_t K);

  double h(int j) const;
  /// rho for the abel kernel, eta for the gauss kernel.
  double parameter(int j) const;
  void validate() const;
};

struct BoundaryLimit {
  bool finite = false;           ///< false: no finite boundary limit (hard singularity)
  double value = 0.0;
  double error = 0.0;            ///< |difference of the last two extrapolants|
  std::vector<double> ladder;    ///< raw ladder values u(h_j, theta)
};

/// Real part of the summed series at one ladder level.
double ladder_value(const TaylorCoefficients& tc, double theta, const RhoLadder& ladder, int j);

/// Boundary value lim u(rho, theta) as rho -> 1-, by Richardson extrapolation
/// on the ladder. Divergence is reported, never thrown.
BoundaryLimit limit_to_circle(const TaylorCoefficients& tc, double theta, const RhoLadder& ladder);

}  // namespace circlechain
