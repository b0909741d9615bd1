#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "circlechain/cli/catalog.hpp"
#include "circlechain/reconstruct.hpp"
#include "oracles.hpp"

using namespace circlechain;

namespace {

double cot_half(double t) { return 0.5 / std::tan(0.5 * t); }
double csc2_quarter(double t) {
  const double s = std::sin(0.5 * t);
  return 0.25 / (s * s);
}

SectionedFunction entry(const char* name) { return cli::find_entry(name)->make(); }

std::vector<double> probes(const SectionedFunction& sf, double gap) {
  std::vector<double> out;
  for (int j = 0; j < 64; ++j) {
    const double th = -kPi + 2 * kPi * (j + 0.5) / 64;
    bool ok = true;
    for (double p : sf.singular_points())
      if (std::abs(normalize_angle(th - p)) < gap) ok = false;
    if (ok) out.push_back(th);
  }
  return out;
}

}  // namespace

TEST_CASE("delta coefficients") {
  const auto d0 = delta_taylor({0.0, 0, 1.0, 0.0}, 8);
  CHECK(d0[0].real() == Catch::Approx(1 / (2 * kPi)));
  for (std::size_t k = 1; k <= 8; ++k) CHECK(std::abs(d0[k] - 1 / kPi) <= 1e-15);
  const auto dpi = delta_taylor({kPi, 0, 1.0, 0.0}, 8);
  for (std::size_t k = 1; k <= 8; ++k) CHECK(std::abs(dpi[k] - (k % 2 ? -1.0 : 1.0) / kPi) <= 1e-15);
  const auto d1 = delta_taylor({0.0, 1, 1.0, 0.0}, 8);
  CHECK(d1[0] == cplx{});
  for (std::size_t k = 1; k <= 8; ++k) CHECK(std::abs(d1[k] - cplx{0.0, k / kPi}) <= 1e-14);
  // Higher orders are angular derivatives of the plain delta.
  const auto d3 = delta_taylor({0.7, 3, -2.0, 0.0}, 32);
  const auto via = angular_derivative_coeffs(delta_taylor({0.7, 0, -2.0, 0.0}, 32), 3);
  for (std::size_t k = 0; k <= 32; ++k) CHECK(std::abs(d3[k] - via[k]) <= 1e-12 * (1 + std::abs(via[k])));
}

TEST_CASE("delta detection from lateral limits") {
  const auto sq = detect_deltas(entry("square_wave"));
  REQUIRE(sq.size() == 2);
  CHECK(sq[0].location == 0.0);
  CHECK(sq[0].amplitude == Catch::Approx(2.0).epsilon(1e-9));
  CHECK(sq[1].amplitude == Catch::Approx(-2.0).epsilon(1e-9));

  const auto saw = detect_deltas(entry("sawtooth"));
  REQUIRE(saw.size() == 1);
  CHECK(saw[0].location == Catch::Approx(kPi));
  CHECK(saw[0].amplitude == Catch::Approx(-2 * kPi).epsilon(1e-9));

  CHECK(detect_deltas(entry("abs_theta")).empty());
  CHECK(detect_deltas(entry("cot_half")).empty());
  CHECK(detect_deltas(entry("log_2sin")).empty());
  CHECK(detect_deltas(entry("const5")).empty());
}

TEST_CASE("hardness-one reconstruction") {
  const auto sf = entry("cot_half");
  const auto res = reconstruct(sf, 256);
  CHECK(res.n_used == 1);
  CHECK(std::abs(res.alpha0) <= 1e-6);
  CHECK(res.deltas_removed.empty());
  for (std::size_t k = 1; k <= 256; ++k) REQUIRE(std::abs(res.tc_full[k] - cplx{0.0, -1.0}) <= 1e-9);
  const auto rep = verify_roundtrip(res, sf, probes(sf, 0.3), RhoLadder::for_order(256));
  CHECK(rep.max_residual <= 1e-3);
  CHECK(rep.divergent == 0);
  REQUIRE(rep.full_vs_reduced);
  CHECK(*rep.full_vs_reduced == 0.0);
  CHECK(res.diagnostics.theta0 == Catch::Approx(kPi));
}

TEST_CASE("hardness-two reconstruction") {
  const auto sf = entry("csc2_quarter");
  ReconstructOptions opts;
  opts.reduce = true;
  const auto res = reconstruct(sf, 256, opts);
  CHECK(res.n_used == 2);
  CHECK(res.deltas_removed.empty());
  for (std::size_t k = 1; k <= 256; ++k) REQUIRE(std::abs(res.tc_full[k] + static_cast<double>(k)) <= 1e-9 * k);
  CHECK(std::abs(res.alpha0) <= 1e-4);
}

TEST_CASE("constants and shifted constants") {
  const auto c5 = reconstruct(entry("const5"), 64);
  CHECK(c5.n_used == 0);
  CHECK(c5.alpha0 == Catch::Approx(10.0).epsilon(1e-13));
  for (std::size_t k = 1; k <= 64; ++k) CHECK(std::abs(c5.tc_full[k]) <= 1e-13);
  const auto rep = verify_roundtrip(c5, entry("const5"), probes(entry("const5"), 0.2), RhoLadder::for_order(64));
  CHECK(rep.max_residual <= 1e-10);

  // 3 + cot: the sectional primitive of 3 jumps by 6 pi, so the unreduced
  // representative carries a delta; the reduced one has alpha0 = 6.
  const auto sf = SectionedFunction::from_global({0.0}, [](double t) { return 3.0 + cot_half(t); });
  ReconstructOptions opts;
  opts.reduce = true;
  const auto res = reconstruct(sf, 256, opts);
  CHECK(std::abs(res.alpha0_reduced - 6.0) <= 1e-4);
  CHECK(res.diagnostics.theta0 == Catch::Approx(kPi));
  REQUIRE(res.deltas_removed.size() == 1);
  CHECK(res.deltas_removed[0].amplitude == Catch::Approx(-6 * kPi).epsilon(1e-8));
  CHECK(res.deltas_removed[0].order == 0);
}

TEST_CASE("reduced and full coefficients differ exactly by the removed deltas") {
  const auto sf = entry("square_wave_derivative");
  const auto* e = cli::find_entry("square_wave_derivative");
  ReconstructOptions opts;
  opts.reduce = true;
  opts.n_override = e->n_override;
  opts.injected_polynomials = e->injected_polynomials;
  const auto res = reconstruct(sf, 128, opts);
  REQUIRE(res.deltas_removed.size() == 2);
  auto sum = res.tc_reduced;
  for (const auto& d : res.deltas_removed) sum += delta_taylor(d, 128);
  for (std::size_t k = 0; k <= 128; ++k) REQUIRE(std::abs(sum[k] - res.tc_full[k]) <= 1e-12);
  CHECK(res.diagnostics.full_path_discrepancy <= 1e-8);
  // Sectionally zero: the reduced function vanishes away from the points.
  const auto rep = verify_roundtrip(res, sf, probes(sf, 0.3), RhoLadder::for_order(128), true);
  CHECK(rep.max_residual <= 1e-4);
  for (std::size_t k = 1; k <= 128; ++k) CHECK(std::abs(res.tc_full[k] - e->oracle->coefficient(k)) <= 1e-6);
}

TEST_CASE("injected polynomials leave the reduced result unchanged") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  ReconstructOptions base;
  base.reduce = true;
  for (const char* name : {"cot_half", "csc2_quarter", "mix_hard"}) {
    INFO(name);
    const auto sf = entry(name);
    const auto ref = reconstruct(sf, 128, base);
    for (int trial = 0; trial < 2; ++trial) {
      ReconstructOptions opts = base;
      for (std::size_t i = 0; i < sf.section_count(); ++i) {
        std::vector<double> p(static_cast<std::size_t>(ref.n_used));
        for (auto& x : p) x = u(rng);
        opts.injected_polynomials.push_back(p);
      }
      const auto res = reconstruct(sf, 128, opts);
      for (std::size_t k = 0; k <= 128; ++k) REQUIRE(std::abs(res.tc_reduced[k] - ref.tc_reduced[k]) <= 1e-6);
    }
  }
}

TEST_CASE("growth law across the chain") {
  for (const char* name : {"cot_half", "csc2_quarter"}) {
    INFO(name);
    const auto res = reconstruct(entry(name), 256);
    const auto full = growth_order(res.tc_full);
    const auto prim = growth_order(fourier_to_taylor(res.fc_minus_n));
    CHECK(std::abs(full.n_hat - (res.n_used + prim.n_hat)) <= 0.3);
    CHECK(full.exp_bounded == BoundedVerdict::yes);
  }
}

TEST_CASE("adding a delta at a singular point does not change boundary values") {
  const auto sf = entry("cot_half");
  auto res = reconstruct(sf, 256);
  const auto ladder = RhoLadder::for_order(256);
  const auto pr = probes(sf, 0.3);
  const auto before = verify_roundtrip(res, sf, pr, ladder);
  res.tc_full += delta_taylor({0.0, 0, 1.5, 0.0}, 256);
  const auto after = verify_roundtrip(res, sf, pr, ladder);
  CHECK(after.max_residual <= 2 * std::max(before.max_residual, 1e-3));
}

TEST_CASE("extended fourier coefficients") {
  std::vector<double> a(64), zero(64, 0.0);
  for (std::size_t k = 1; k <= 64; ++k) a[k - 1] = -1.0 / k;
  const FourierCoefficients logs(0.0, a, zero);
  const auto n1 = extended_fourier(logs, 1);
  CHECK(n1.alpha0_indeterminate());
  for (std::size_t k = 1; k <= 64; ++k) {
    CHECK(n1.alpha(k) == 0.0);
    CHECK(n1.beta(k) == Catch::Approx(1.0).epsilon(1e-15));
  }
  for (auto& x : a) x = -x;
  const auto n2 = extended_fourier(FourierCoefficients(0.0, a, zero), 2);
  for (std::size_t k = 1; k <= 64; ++k) CHECK(n2.alpha(k) == Catch::Approx(-static_cast<double>(k)));
  CHECK(extended_fourier(logs, 0) == logs);

  std::mt19937_64 rng(1);
  for (int n = 1; n <= 6; ++n) {
    const auto tc = oracle::random_taylor(rng, 50).with_constant(0.0);
    const auto fc = taylor_to_fourier(tc);
    const auto direct = extended_fourier(fc, n);
    const auto route = taylor_to_fourier(angular_derivative_coeffs(tc, n));
    for (std::size_t k = 1; k <= 50; ++k) {
      REQUIRE(direct.alpha(k) == route.alpha(k));
      REQUIRE(direct.beta(k) == route.beta(k));
    }
  }
}

TEST_CASE("regulated series recovery") {
  const auto res = reconstruct(entry("cot_half"), 1024);
  const auto fc = taylor_to_fourier(res.tc_full, 1e-12);
  const double rho = 1.0 - 32.0 / 1024;
  for (double th : {0.5, 1.0, 2.0, -1.5}) {
    const double want = oracle::poisson_sin(rho, th);
    CHECK(std::abs(regulated_sum(fc, DiskPoint::make(rho, th)) - want) <= 1e-6);
  }
}

TEST_CASE("pipeline errors name their stage") {
  const auto sf = SectionedFunction::from_global({0.0}, [](double t) { return std::pow(std::abs(t), -3.5); });
  ReconstructOptions opts;
  opts.nmax = 2;
  try {
    reconstruct(sf, 64, opts);
    FAIL("expected StageError");
  } catch (const StageError& e) {
    CHECK(e.stage() == "classify");
  }
  CHECK_THROWS_AS(reconstruct(entry("const5"), 0), ValidationError);
}
