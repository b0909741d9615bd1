#pragma once

// Data-parallel inner loops. Each parallel kernel has a serial reference
// implementation used by the tests and the benchmark; parallel results are
// independent of the worker count (fixed blocking, fixed reduction order).

#include <functional>
#include <span>
#include <vector>

#include "circlechain/coeffs.hpp"
#include "circlechain/evalcore.hpp"

namespace circlechain::kernels {

/// cos_sum[k] = sum_j weight_j cos(k theta_j), sin_sum[k] likewise, k = 0..K.
struct TrigMoments {
  std::vector<double> cos_sum;
  std::vector<double> sin_sum;
};

TrigMoments trig_moments(std::span<const double> theta, std::span<const double> weight,
                         std::size_t K);
TrigMoments trig_moments_serial(std::span<const double> theta, std::span<const double> weight,
                                std::size_t K);

/// out[j] = f(x[j]); f must be pure.
std::vector<double> sample(const std::function<double(double)>& f, std::span<const double> x);
std::vector<double> sample_serial(const std::function<double(double)>& f,
                                  std::span<const double> x);

std::vector<cplx> eval_inner_grid(const TaylorCoefficients& tc, std::span<const DiskPoint> pts);
std::vector<cplx> eval_inner_grid_serial(const TaylorCoefficients& tc,
                                         std::span<const DiskPoint> pts);

std::vector<BoundaryLimit> boundary_grid(const TaylorCoefficients& tc,
                                         std::span<const double> theta, const RhoLadder& ladder);
std::vector<BoundaryLimit> boundary_grid_serial(const TaylorCoefficients& tc,
                                                std::span<const double> theta,
                                                const RhoLadder& ladder);

}  // namespace circlechain::kernels
