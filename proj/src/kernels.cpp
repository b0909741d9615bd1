#include "circlechain/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <exception>

#include "circlechain/parallel.hpp"

namespace circlechain::kernels {

namespace {

constexpr std::size_t kBlock = 512;

// Exceptions must not escape an OpenMP region; the first one is kept and
// rethrown after the loop.
class ErrorSlot {
 public:
  template <class F>
  void run(F&& body) {
    try {
      body();
    } catch (...) {
#pragma omp critical(circlechain_error_slot)
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};
constexpr std::size_t kAnchor = 32;

// Accumulates nodes [begin, end) into cs/sn (length K+1). e^{ik theta} by
// rotation, re-anchored every kAnchor harmonics.
void accumulate_block(std::span<const double> theta, std::span<const double> weight,
                      std::size_t begin, std::size_t end, std::size_t K, double* cs, double* sn) {
  for (std::size_t j = begin; j < end; ++j) {
    const double t = theta[j], w = weight[j];
    if (w == 0.0) continue;
    const double c1 = std::cos(t), s1 = std::sin(t);
    double ck = 1.0, sk = 0.0;
    cs[0] += w;
    for (std::size_t k = 1; k <= K; ++k) {
      if (k % kAnchor == 0) {
        ck = std::cos(static_cast<double>(k) * t);
        sk = std::sin(static_cast<double>(k) * t);
      } else {
        const double cn = ck * c1 - sk * s1;
        sk = sk * c1 + ck * s1;
        ck = cn;
      }
      cs[k] += w * ck;
      sn[k] += w * sk;
    }
  }
}

}  // namespace

TrigMoments trig_moments(std::span<const double> theta, std::span<const double> weight,
                         std::size_t K) {
  const std::size_t n = theta.size();
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial_c(nblocks * (K + 1), 0.0), partial_s(nblocks * (K + 1), 0.0);

#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nblocks); ++b) {
    const auto ub = static_cast<std::size_t>(b);
    accumulate_block(theta, weight, ub * kBlock, std::min(n, (ub + 1) * kBlock), K,
                     &partial_c[ub * (K + 1)], &partial_s[ub * (K + 1)]);
  }

  TrigMoments out{std::vector<double>(K + 1, 0.0), std::vector<double>(K + 1, 0.0)};
  for (std::size_t b = 0; b < nblocks; ++b)
    for (std::size_t k = 0; k <= K; ++k) {
      out.cos_sum[k] += partial_c[b * (K + 1) + k];
      out.sin_sum[k] += partial_s[b * (K + 1) + k];
    }
  return out;
}

TrigMoments trig_moments_serial(std::span<const double> theta, std::span<const double> weight,
                                std::size_t K) {
  TrigMoments out{std::vector<double>(K + 1, 0.0), std::vector<double>(K + 1, 0.0)};
  for (std::size_t j = 0; j < theta.size(); ++j)
    for (std::size_t k = 0; k <= K; ++k) {
      const double phase = static_cast<double>(k) * theta[j];
      out.cos_sum[k] += weight[j] * std::cos(phase);
      out.sin_sum[k] += weight[j] * std::sin(phase);
    }
  return out;
}

std::vector<double> sample(const std::function<double(double)>& f, std::span<const double> x) {
  std::vector<double> out(x.size());
  ErrorSlot slot;
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(x.size()); ++j)
    slot.run([&] { out[j] = f(x[j]); });
  slot.rethrow();
  return out;
}

std::vector<double> sample_serial(const std::function<double(double)>& f,
                                  std::span<const double> x) {
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = f(x[j]);
  return out;
}

std::vector<cplx> eval_inner_grid(const TaylorCoefficients& tc, std::span<const DiskPoint> pts) {
  std::vector<cplx> out(pts.size());
  ErrorSlot slot;
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(pts.size()); ++j)
    slot.run([&] { out[j] = eval_inner(tc, pts[j]); });
  slot.rethrow();
  return out;
}

std::vector<cplx> eval_inner_grid_serial(const TaylorCoefficients& tc,
                                         std::span<const DiskPoint> pts) {
  std::vector<cplx> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(eval_inner(tc, p));
  return out;
}

std::vector<BoundaryLimit> boundary_grid(const TaylorCoefficients& tc,
                                         std::span<const double> theta, const RhoLadder& ladder) {
  std::vector<BoundaryLimit> out(theta.size());
  ErrorSlot slot;
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(theta.size()); ++j)
    slot.run([&] { out[j] = limit_to_circle(tc, theta[j], ladder); });
  slot.rethrow();
  return out;
}

std::vector<BoundaryLimit> boundary_grid_serial(const TaylorCoefficients& tc,
                                                std::span<const double> theta,
                                                const RhoLadder& ladder) {
  std::vector<BoundaryLimit> out;
  out.reserve(theta.size());
  for (double t : theta) out.push_back(limit_to_circle(tc, t, ladder));
  return out;
}

}  // namespace circlechain::kernels
