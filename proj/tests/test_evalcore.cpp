#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "circlechain/evalcore.hpp"
#include "oracles.hpp"

using namespace circlechain;

namespace {

TaylorCoefficients constant_series(std::size_t K, cplx value) {
  std::vector<cplx> c(K + 1, value);
  c[0] = 0.0;
  return TaylorCoefficients(std::move(c));
}

}  // namespace

TEST_CASE("angles normalize to (-pi, pi]") {
  CHECK(normalize_angle(kPi) == Catch::Approx(kPi));
  CHECK(normalize_angle(-kPi) == Catch::Approx(kPi));
  CHECK(normalize_angle(3 * kPi) == Catch::Approx(kPi));
  CHECK(normalize_angle(0.5 + 4 * kPi) == Catch::Approx(0.5));
  CHECK(normalize_angle(-0.5 - 2 * kPi) == Catch::Approx(-0.5));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int i = 0; i < 1000; ++i) {
    const double t = normalize_angle(u(rng));
    REQUIRE(t > -kPi);
    REQUIRE(t <= kPi);
  }
}

TEST_CASE("disk points must lie inside the unit disk") {
  CHECK_THROWS_AS(DiskPoint::make(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(DiskPoint::make(-0.1, 0.0), DomainError);
  CHECK_THROWS_AS(DiskPoint::make(std::nan(""), 0.0), DomainError);
  CHECK_NOTHROW(DiskPoint::make(0.0, 1.0));
}

TEST_CASE("horner evaluation matches a direct power sum") {
  std::mt19937_64 rng(9);
  const auto tc = oracle::random_taylor(rng, 50);
  for (double rho : {0.0, 0.3, 0.9}) {
    const auto pt = DiskPoint::make(rho, 0.7);
    cplx direct{};
    for (std::size_t k = 0; k <= 50; ++k) direct += tc[k] * std::pow(std::polar(rho, 0.7), static_cast<int>(k));
    CHECK(std::abs(eval_inner(tc, pt) - direct) <= 1e-12 * (1 + std::abs(direct)));
  }
}

TEST_CASE("regulated sum is the real part of the inner function") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> r(0.0, 0.99), t(-kPi, kPi);
  for (int trial = 0; trial < 50; ++trial) {
    const auto tc = oracle::random_taylor(rng, 64).with_constant(cplx{0.3, 0.0});
    const auto fc = taylor_to_fourier(tc);
    const auto pt = DiskPoint::make(r(rng), t(rng));
    REQUIRE(std::abs(regulated_sum(fc, pt) - eval_inner(tc, pt).real()) <= 1e-11);
  }
}

TEST_CASE("regulated sums match the Poisson closed forms") {
  const std::size_t K = 40000;  // 0.999^40000 ~ 4e-18
  const auto cos_series = taylor_to_fourier(constant_series(K, 1.0));
  const auto sin_series = taylor_to_fourier(constant_series(K, cplx{0.0, -1.0}));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> r(0.0, 0.999), t(-kPi, kPi);
  for (int i = 0; i < 200; ++i) {
    const auto pt = DiskPoint::make(r(rng), t(rng));
    const double c = oracle::poisson_cos(pt.rho, pt.theta);
    const double s = oracle::poisson_sin(pt.rho, pt.theta);
    REQUIRE(std::abs(regulated_sum(cos_series, pt) - c) <= 1e-10 * std::max(1.0, std::abs(c)));
    REQUIRE(std::abs(regulated_sum(sin_series, pt) - s) <= 1e-10 * std::max(1.0, std::abs(s)));
  }
}

TEST_CASE("ladder configuration is validated") {
  RhoLadder l = RhoLadder::abel_default();
  CHECK(l.kernel == Summation::abel);
  CHECK(l.eta0 == 1.0 / 16);
  CHECK(l.parameter(0) == Catch::Approx(1 - 1.0 / 16));
  l.order = 5;
  CHECK_THROWS_AS(l.validate(), ValidationError);
  l = RhoLadder::abel_default();
  l.eta0 = 1.5;
  CHECK_THROWS_AS(l.validate(), ValidationError);
  const auto g = RhoLadder::for_order(256);
  CHECK(g.kernel == Summation::gauss);
  CHECK(g.parameter(g.levels - 1) == Catch::Approx(4.5 / 256));
  CHECK(g.h(1) == Catch::Approx(g.h(0) / 2));
}

TEST_CASE("boundary limits of the cot series") {
  const auto tc = constant_series(256, cplx{0.0, -1.0});
  const auto ladder = RhoLadder::for_order(256);
  for (double th : {0.3, 1.0, kPi / 2, -2.0, 3.0}) {
    const auto lim = limit_to_circle(tc, th, ladder);
    REQUIRE(lim.finite);
    CHECK(std::abs(lim.value - 0.5 / std::tan(th / 2)) <= 1e-3);
  }
  // The real part is odd about the pole, so the limit there is the principal value 0.
  const auto pv = limit_to_circle(tc, 0.0, ladder);
  REQUIRE(pv.finite);
  CHECK(std::abs(pv.value) <= 1e-12);
  std::vector<cplx> c(257);
  for (std::size_t k = 1; k <= 256; ++k) c[k] = -static_cast<double>(k);
  CHECK_FALSE(limit_to_circle(TaylorCoefficients(c), 0.0, ladder).finite);
}

TEST_CASE("abel ladder on a long series") {
  const auto tc = constant_series(50000, cplx{0.0, -1.0});
  const auto lim = limit_to_circle(tc, 1.0, RhoLadder::abel_default());
  REQUIRE(lim.finite);
  CHECK(std::abs(lim.value - 0.5 / std::tan(0.5)) <= 1e-6);
}

TEST_CASE("cosine series at pi extrapolates to -1/2") {
  const auto tc = constant_series(256, 1.0);
  const auto lim = limit_to_circle(tc, kPi, RhoLadder::for_order(256));
  REQUIRE(lim.finite);
  CHECK(std::abs(lim.value + 0.5) <= 1e-6);
  // The same series is a delta at 0: no limit there.
  CHECK_FALSE(limit_to_circle(tc, 0.0, RhoLadder::for_order(256)).finite);
}
