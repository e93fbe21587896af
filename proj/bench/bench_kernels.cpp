#include <benchmark/benchmark.h>

#include <random>

#include "pclab/arith/primes.hpp"
#include "pclab/denoms/profile.hpp"
#include "pclab/hyp/hypergeometric.hpp"
#include "pclab/parse/expr.hpp"
#include "pclab/pcurv/pcurvature.hpp"

using namespace pclab;

namespace {

std::vector<Rat> random_coeffs(std::size_t m) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-1000, 1000), den(1, 5000);
  std::vector<Rat> c;
  for (std::size_t i = 0; i < m; ++i) c.push_back(Rat(Int(num(rng)), Int(den(rng))));
  return c;
}

void BM_Profile(benchmark::State& state) {
  auto c = random_coeffs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(denoms::profile(c, 2000));
}

void BM_ProfileSerial(benchmark::State& state) {
  auto c = random_coeffs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(denoms::profile_serial(c, 2000));
}

const pcurv::ConnectionSystem& hyp_system() {
  static const auto sys = parse::parse_matrix("0; 1\n(-1/4)/(z*(1-z)); (1-2*z)/(z*(z-1))\n");
  return sys;
}

void BM_PCurvSweep(benchmark::State& state) {
  auto primes = primes_up_to(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pcurv::pcurvature_sweep(hyp_system(), primes));
}

void BM_PCurvSweepSerial(benchmark::State& state) {
  auto primes = primes_up_to(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pcurv::pcurvature_sweep_serial(hyp_system(), primes));
}

void BM_HypSweep(benchmark::State& state) {
  auto tuples = hyp::enumerate_tuples(static_cast<std::uint32_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(hyp::classification_sweep(tuples));
}

void BM_HypSweepSerial(benchmark::State& state) {
  auto tuples = hyp::enumerate_tuples(static_cast<std::uint32_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(hyp::classification_sweep_serial(tuples));
}

}  // namespace

BENCHMARK(BM_Profile)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProfileSerial)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PCurvSweep)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PCurvSweepSerial)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HypSweep)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HypSweepSerial)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
