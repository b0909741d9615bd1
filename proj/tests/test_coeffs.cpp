#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "circlechain/coeffs.hpp"
#include "oracles.hpp"

using namespace circlechain;

namespace {

double max_diff(const TaylorCoefficients& a, const TaylorCoefficients& b, std::size_t from = 0) {
  double m = 0.0;
  for (std::size_t k = from; k <= a.order(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace

TEST_CASE("taylor coefficients validate their input") {
  CHECK_THROWS_AS(TaylorCoefficients({cplx{1.0, 0.0}}), ValidationError);
  CHECK_THROWS_AS(TaylorCoefficients({cplx{1.0, 0.0}, cplx{std::nan(""), 0.0}}), ValidationError);
  CHECK_THROWS_AS(TaylorCoefficients({cplx{1.0, 0.0}, cplx{0.0, INFINITY}}), ValidationError);
  auto a = TaylorCoefficients::zeros(4);
  auto b = TaylorCoefficients::zeros(5);
  CHECK_THROWS_AS(a += b, ValidationError);
  CHECK(a.order() == 4);
  CHECK(a.proper());
  CHECK_FALSE(a.with_constant(1.0).proper());
}

TEST_CASE("fourier and taylor forms convert both ways") {
  FourierCoefficients fc(3.0, {1.0, 2.0}, {-1.0, 0.5});
  const auto tc = fourier_to_taylor(fc);
  CHECK(tc[0] == cplx{1.5, 0.0});
  CHECK(tc[1] == cplx{1.0, 1.0});
  CHECK(tc[2] == cplx{2.0, -0.5});
  CHECK(taylor_to_fourier(tc) == fc);

  const TaylorCoefficients bad({cplx{1.0, 1e-3}, cplx{1.0, 0.0}});
  CHECK_THROWS_AS(taylor_to_fourier(bad), ValidationError);
  CHECK_NOTHROW(taylor_to_fourier(bad, 1e-2));
}

TEST_CASE("roundtrip property on random sequences") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto tc = oracle::random_taylor(rng, 1 + trial % 97).with_constant(cplx{0.7, 0.0});
    const auto back = fourier_to_taylor(taylor_to_fourier(tc));
    REQUIRE(max_diff(back, tc) <= 1e-12);
  }
}

TEST_CASE("derivative and primitive are inverse on proper parts") {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 5; ++n) {
    const auto tc = oracle::random_taylor(rng, 64);
    const auto dp = angular_derivative_coeffs(angular_primitive_coeffs(tc, n), n);
    const auto pd = angular_primitive_coeffs(angular_derivative_coeffs(tc, n), n);
    CHECK(dp[0] == cplx{});
    CHECK(pd[0] == cplx{});
    for (std::size_t k = 1; k <= 64; ++k) {
      CHECK(std::abs(dp[k] - tc[k]) <= 1e-12 * std::abs(tc[k]) + 1e-15);
      CHECK(std::abs(pd[k] - tc[k]) <= 1e-12 * std::abs(tc[k]) + 1e-15);
    }
  }
}

TEST_CASE("angular derivative multiplies by (ik)^n") {
  std::vector<cplx> c(9, cplx{1.0, 0.0});
  const TaylorCoefficients tc(c);
  const auto d1 = angular_derivative_coeffs(tc, 1);
  const auto d2 = angular_derivative_coeffs(tc, 2);
  const auto d3 = angular_derivative_coeffs(tc, 3);
  for (std::size_t k = 1; k <= 8; ++k) {
    const double kd = static_cast<double>(k);
    CHECK(d1[k] == cplx{0.0, kd});
    CHECK(d2[k] == cplx{-kd * kd, 0.0});
    CHECK(d3[k] == cplx{0.0, -kd * kd * kd});
  }
  CHECK(angular_derivative_coeffs(tc, 0) == tc);
  CHECK_THROWS_AS(angular_derivative_coeffs(tc, -1), ValidationError);
}

TEST_CASE("derivatives compose") {
  std::mt19937_64 rng(8);
  const auto tc = oracle::random_taylor(rng, 40);
  const auto a = angular_derivative_coeffs(angular_derivative_coeffs(tc, 2), 1);
  const auto b = angular_derivative_coeffs(tc, 3);
  for (std::size_t k = 1; k <= 40; ++k)
    CHECK(std::abs(a[k] - b[k]) <= 1e-14 * std::abs(b[k]));
}

TEST_CASE("i_power cycles exactly") {
  CHECK(i_power(0) == cplx{1.0, 0.0});
  CHECK(i_power(1) == cplx{0.0, 1.0});
  CHECK(i_power(2) == cplx{-1.0, 0.0});
  CHECK(i_power(3) == cplx{0.0, -1.0});
  CHECK(i_power(4) == cplx{1.0, 0.0});
  CHECK(i_power(-1) == cplx{0.0, -1.0});
}

TEST_CASE("growth order recovers power laws") {
  auto series = [](std::size_t K, auto f) {
    std::vector<cplx> c(K + 1);
    for (std::size_t k = 1; k <= K; ++k) c[k] = f(static_cast<double>(k));
    return TaylorCoefficients(std::move(c));
  };
  const auto bounded = growth_order(series(256, [](double) { return cplx{0.0, -1.0}; }));
  CHECK(std::abs(bounded.n_hat) < 1e-9);
  CHECK(bounded.exp_bounded == BoundedVerdict::yes);

  const auto linear = growth_order(series(256, [](double k) { return cplx{-k, 0.0}; }));
  CHECK(std::abs(linear.n_hat - 1.0) < 1e-9);

  const auto cubic = growth_order(series(256, [](double k) { return cplx{0.0, k * k * k}; }));
  CHECK(std::abs(cubic.n_hat - 3.0) < 1e-9);
  CHECK(cubic.exp_bounded == BoundedVerdict::yes);

  const auto geometric = growth_order(series(256, [](double k) { return cplx{std::pow(1.01, k), 0.0}; }));
  CHECK(geometric.exp_bounded == BoundedVerdict::no);
  CHECK(geometric.geometric_factor == Catch::Approx(1.01).epsilon(1e-6));

  // Bounded moduli with random phases and mild amplitude wobble.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> phase(0.0, 2 * kPi), amp(0.9, 1.1);
  const auto noisy = growth_order(series(256, [&](double) { return std::polar(amp(rng), phase(rng)); }));
  CHECK(std::abs(noisy.n_hat) < 0.2);
  CHECK(noisy.exp_bounded == BoundedVerdict::yes);
}

TEST_CASE("growth order edge cases") {
  CHECK_THROWS_AS(growth_order(TaylorCoefficients::zeros(16)), ValidationError);
  const auto zero = growth_order(TaylorCoefficients::zeros(64));
  CHECK(zero.zero_tail);
  CHECK(zero.exp_bounded == BoundedVerdict::yes);

  std::vector<cplx> sparse(65);
  sparse[3] = 1.0;
  sparse[40] = 2.0;
  CHECK(growth_order(TaylorCoefficients(sparse)).exp_bounded == BoundedVerdict::inconclusive);
}
