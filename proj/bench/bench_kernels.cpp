#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "circlechain/evalcore.hpp"
#include "circlechain/kernels.hpp"
#include "circlechain/sections.hpp"

using namespace circlechain;

namespace {

std::vector<double> random_angles(std::size_t n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

TaylorCoefficients cot_coeffs(std::size_t K) {
  std::vector<cplx> c(K + 1, cplx{0.0, -1.0});
  c[0] = 0.0;
  return TaylorCoefficients(std::move(c));
}

void BM_TrigMoments(benchmark::State& st) {
  const auto theta = random_angles(static_cast<std::size_t>(st.range(0)));
  const std::vector<double> w(theta.size(), 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::trig_moments(theta, w, 256));
}

void BM_TrigMomentsSerial(benchmark::State& st) {
  const auto theta = random_angles(static_cast<std::size_t>(st.range(0)));
  const std::vector<double> w(theta.size(), 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::trig_moments_serial(theta, w, 256));
}

void BM_BoundaryGrid(benchmark::State& st) {
  const auto theta = random_angles(static_cast<std::size_t>(st.range(0)));
  const auto tc = cot_coeffs(256);
  const auto ladder = RhoLadder::for_order(256);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::boundary_grid(tc, theta, ladder));
}

void BM_BoundaryGridSerial(benchmark::State& st) {
  const auto theta = random_angles(static_cast<std::size_t>(st.range(0)));
  const auto tc = cot_coeffs(256);
  const auto ladder = RhoLadder::for_order(256);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::boundary_grid_serial(tc, theta, ladder));
}

void BM_FourierNumericLog(benchmark::State& st) {
  const auto f = SectionedFunction::from_global(
      {0.0}, [](double t) { return std::log(std::abs(2.0 * std::sin(0.5 * t))); });
  for (auto _ : st) benchmark::DoNotOptimize(fourier_numeric(f, static_cast<std::size_t>(st.range(0))));
}

}  // namespace

BENCHMARK(BM_TrigMoments)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_TrigMomentsSerial)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_BoundaryGrid)->Arg(64)->Arg(1024);
BENCHMARK(BM_BoundaryGridSerial)->Arg(64)->Arg(1024);
BENCHMARK(BM_FourierNumericLog)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
