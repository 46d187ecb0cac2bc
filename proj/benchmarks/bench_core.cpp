#include <benchmark/benchmark.h>

#include <random>

#include "chow/abelian.hpp"
#include "chow/chowcalc.hpp"
#include "chow/dual_complex.hpp"

namespace {

using namespace chow;

IntMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-9, 9);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
  return m;
}

void BM_snf(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const IntMatrix m = random_matrix(n, 0x5eedULL + n);
  for (auto _ : state) {
    SnfResult s = snf(m);
    benchmark::DoNotOptimize(s.rank);
  }
}
BENCHMARK(BM_snf)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

// Cycle graph with n vertices: one loop, so H^1 = Z regardless of n.
std::vector<Stratum> cycle_strata(int n) {
  std::vector<Stratum> strata;
  for (int i = 0; i < n; ++i)
    strata.push_back({"v" + std::to_string(i), {i + 1}, true, {}});
  for (int i = 0; i < n; ++i) {
    const int a = std::min(i + 1, (i + 1) % n + 1);
    const int b = std::max(i + 1, (i + 1) % n + 1);
    strata.push_back({"e" + std::to_string(i), {a, b}, true, {}});
  }
  return strata;
}

void BM_graph_cohomology(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DualComplex gamma = DualComplex::build(cycle_strata(n));
  for (auto _ : state) {
    FgAbGroup h1 = gamma.cohomology(1);
    benchmark::DoNotOptimize(h1.free_rank);
  }
}
BENCHMARK(BM_graph_cohomology)->Arg(16)->Arg(64)->Arg(256);

// Full pipeline on a cycle surface: Pic = Z on every curve, trivial on the
// intersection points, identity restriction from the resolution.
void BM_variety_pipeline(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ResolutionData data;
  data.dimension = 2;
  data.strata = cycle_strata(n);
  for (int i = 0; i < n; ++i) {
    data.pic_data.pic["v" + std::to_string(i)] = PresentedGroup::free_group(1);
    data.pic_data.pic["e" + std::to_string(i)] = PresentedGroup::trivial();
  }
  PresentedGroup pic_res = PresentedGroup::free_group(static_cast<std::size_t>(n));
  std::map<std::string, IntMatrix> to_components;
  for (int i = 0; i < n; ++i) {
    IntMatrix row(1, static_cast<std::size_t>(n));
    row(0, static_cast<std::size_t>(i)) = 1;
    to_components["v" + std::to_string(i)] = row;
  }
  for (auto _ : state) {
    VarietyOutcome outcome = chc1_variety(data, pic_res, to_components);
    benchmark::DoNotOptimize(outcome.determinate);
  }
}
BENCHMARK(BM_variety_pipeline)->Arg(4)->Arg(16)->Arg(48);

}  // namespace

BENCHMARK_MAIN();
