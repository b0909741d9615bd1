#include "circlechain/evalcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace circlechain {

double normalize_angle(double theta) {
  if (!std::isfinite(theta)) throw ValidationError("angle must be finite");
  double t = std::remainder(theta, 2.0 * kPi);  // [-pi, pi]
  if (t <= -kPi) t += 2.0 * kPi;
  return t;
}

DiskPoint DiskPoint::make(double rho, double theta) {
  if (!(rho >= 0.0 && rho < 1.0))
    throw DomainError("rho = " + std::to_string(rho) + " is outside [0, 1)");
  return {rho, normalize_angle(theta)};
}

namespace {

void check_point(DiskPoint pt) {
  if (!(pt.rho >= 0.0 && pt.rho < 1.0))
    throw DomainError("rho = " + std::to_string(pt.rho) + " is outside [0, 1)");
}

// e^{ik theta} by rotation, re-anchored to libm every kAnchor steps so the
// phase error stays at a few ulps for long series.
constexpr std::size_t kAnchor = 32;

}  // namespace

cplx eval_inner(const TaylorCoefficients& tc, DiskPoint pt) {
  check_point(pt);
  const cplx z = std::polar(pt.rho, pt.theta);
  const auto c = tc.values();
  cplx w = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) w = w * z + c[k];
  return w;
}

double regulated_sum(const FourierCoefficients& fc, DiskPoint pt) {
  check_point(pt);
  double sum = 0.0;
  double rk = 1.0;
  double ck = 1.0, sk = 0.0;
  const double c1 = std::cos(pt.theta), s1 = std::sin(pt.theta);
  for (std::size_t k = 1; k <= fc.order(); ++k) {
    if (k % kAnchor == 0) {
      const double phase = static_cast<double>(k) * pt.theta;
      ck = std::cos(phase);
      sk = std::sin(phase);
      rk = std::pow(pt.rho, static_cast<double>(k));
    } else {
      const double cn = ck * c1 - sk * s1;
      sk = sk * c1 + ck * s1;
      ck = cn;
      rk *= pt.rho;
    }
    if (rk == 0.0) break;
    sum += rk * (fc.alpha(k) * ck + fc.beta(k) * sk);
  }
  return fc.alpha0() / 2.0 + sum;
}

RhoLadder RhoLadder::abel_default() { return {Summation::abel, 1.0 / 16.0, 6, 3}; }

RhoLadder RhoLadder::for_order(std::size_t K) {
  const double eta_min = 4.5 / static_cast<double>(std::max<std::size_t>(K, 64));
  RhoLadder ladder{Summation::gauss, 0.0, 5, 3};
  ladder.eta0 = eta_min * std::pow(2.0, 0.5 * (ladder.levels - 1));
  return ladder;
}

double RhoLadder::h(int j) const {
  const double h0 = kernel == Summation::abel ? eta0 : eta0 * eta0;
  return std::ldexp(h0, -j);
}

double RhoLadder::parameter(int j) const {
  return kernel == Summation::abel ? 1.0 - h(j) : std::sqrt(h(j));
}

void RhoLadder::validate() const {
  if (levels < 2) throw ValidationError("ladder needs at least 2 levels");
  if (order < 1 || order > levels - 2)
    throw ValidationError("ladder order must be in [1, levels-2]");
  if (!(eta0 > 0.0) || (kernel == Summation::abel && eta0 >= 1.0))
    throw ValidationError("ladder eta0 out of range");
}

double ladder_value(const TaylorCoefficients& tc, double theta, const RhoLadder& ladder, int j) {
  if (ladder.kernel == Summation::abel)
    return eval_inner(tc, DiskPoint::make(ladder.parameter(j), theta)).real();

  const double eta = ladder.parameter(j);
  const double t = normalize_angle(theta);
  const auto c = tc.values();
  // Descending k: the heavily damped tail is accumulated first.
  double sum = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) {
    const double kd = static_cast<double>(k);
    const double damp = std::exp(-(kd * eta) * (kd * eta));
    if (damp == 0.0) continue;
    const double phase = kd * t;
    sum += damp * (c[k].real() * std::cos(phase) - c[k].imag() * std::sin(phase));
  }
  return c[0].real() + sum;
}

BoundaryLimit limit_to_circle(const TaylorCoefficients& tc, double theta, const RhoLadder& ladder) {
  ladder.validate();
  BoundaryLimit out;
  const int L = ladder.levels;
  out.ladder.resize(L);
  for (int j = 0; j < L; ++j) out.ladder[j] = ladder_value(tc, theta, ladder, j);

  for (double v : out.ladder)
    if (!std::isfinite(v)) return out;

  // Divergence: ladder differences stop contracting while still above noise.
  const double d1 = out.ladder[L - 1] - out.ladder[L - 2];
  const double d0 = out.ladder[L - 2] - out.ladder[L - 3];
  const double noise = 1e-9 * (1.0 + std::abs(out.ladder[L - 1]));
  if (std::abs(d1) > noise && std::abs(d0) > noise && std::abs(d1) > 0.75 * std::abs(d0) &&
      std::abs(out.ladder[L - 1]) >= 0.5 * std::abs(out.ladder[L - 3]))
    return out;

  // Richardson table on h halving: T[j][m] removes the h^m term.
  std::vector<std::vector<double>> T(L, std::vector<double>(ladder.order + 1));
  for (int j = 0; j < L; ++j) {
    T[j][0] = out.ladder[j];
    for (int m = 1; m <= std::min(j, ladder.order); ++m) {
      const double f = std::ldexp(1.0, m) - 1.0;
      T[j][m] = T[j][m - 1] + (T[j][m - 1] - T[j - 1][m - 1]) / f;
    }
  }
  const int p = ladder.order;
  out.value = T[L - 1][p];
  out.error = std::abs(T[L - 1][p] - T[L - 2][p]);
  out.finite = std::isfinite(out.value);
  return out;
}

}  // namespace circlechain
