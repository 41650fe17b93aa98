#include <benchmark/benchmark.h>

#include <algorithm>

#include "maxent/estimators.hpp"
#include "maxent/generators.hpp"
#include "maxent/oracles.hpp"
#include "maxent/solver.hpp"

using namespace maxent;

static void BM_De85Estimate(benchmark::State& state) {
  const auto spec = gen_transport({220, 215, 93, 64}, {108, 286, 71, 127});
  for (auto _ : state) {
    const auto sol = solve_max_entropy(spec, EntropyModel::Geometric);
    benchmark::DoNotOptimize(gaussian_count(spec, sol).log_value);
  }
}
BENCHMARK(BM_De85Estimate);

static void BM_TransportSolve(benchmark::State& state) {
  const auto k = state.range(0);
  IntVector rows(static_cast<std::size_t>(k)), cols(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i) {
    rows[static_cast<std::size_t>(i)] = 10 + 3 * i;
    cols[static_cast<std::size_t>(k - 1 - i)] = 10 + 3 * i;
  }
  const auto spec = gen_transport(rows, cols);
  for (auto _ : state) benchmark::DoNotOptimize(solve_max_entropy(spec, EntropyModel::Geometric).entropy);
}
BENCHMARK(BM_TransportSolve)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void BM_MultiwayVolume(benchmark::State& state) {
  const auto k = state.range(0);
  const auto spec = gen_polystochastic(k, 3);
  for (auto _ : state) {
    const auto sol = solve_max_entropy(spec, EntropyModel::Exponential);
    benchmark::DoNotOptimize(gaussian_volume(spec, sol).log_value);
  }
}
BENCHMARK(BM_MultiwayVolume)->Arg(3)->Arg(5)->Arg(7);

static void BM_YFamilyRho(benchmark::State& state) {
  const auto k = state.range(0);
  for (auto _ : state) {
    const auto f = gen_yfamily(MultiwayKind{{k, k, k}});
    double rho = 0.0;
    for (std::size_t i = 0; i < f.sets.size(); ++i) rho = std::max(rho, psi_eigen_max(f, i));
    benchmark::DoNotOptimize(rho);
  }
}
BENCHMARK(BM_YFamilyRho)->Arg(3)->Arg(4);

static void BM_ExactCountTransport(benchmark::State& state) {
  const auto t = state.range(0);
  const auto spec = gen_transport({t, t, t, t}, {t, t, t, t});
  for (auto _ : state) benchmark::DoNotOptimize(exact_count(spec).value);
}
BENCHMARK(BM_ExactCountTransport)->Arg(2)->Arg(4)->Arg(6);

static void BM_CharIntegral(benchmark::State& state) {
  PolytopeSpec spec;
  spec.A = Matrix{{1, 1, 0, 1}, {0, 1, 1, 2}};
  spec.b = {6, 8};
  spec.domain = DomainKind::IntegerNonneg;
  const auto sol = solve_max_entropy(spec, EntropyModel::Geometric);
  for (auto _ : state) benchmark::DoNotOptimize(char_integral_count(spec, sol, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_CharIntegral)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

static void BM_MonteCarlo(benchmark::State& state) {
  const auto spec = gen_transport({2, 2, 2}, {2, 2, 2});
  const auto sol = solve_max_entropy(spec, EntropyModel::Geometric);
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_count(spec, sol, 100000, 1).hits);
}
BENCHMARK(BM_MonteCarlo)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
