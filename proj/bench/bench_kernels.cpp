#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "motzkin/kernels.hpp"
#include "motzkin/walks.hpp"

using namespace motzkin;

namespace {

std::vector<double> random_vector(std::size_t n) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

template <bool Parallel>
void BM_Bonds(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const kernels::BondSum h{n, 0.5, 1, n - 1, true};
  const auto x = random_vector(pow3(n));
  std::vector<double> y(x.size());
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::apply_bonds_parallel(h, x, y);
    } else {
      kernels::apply_bonds_serial(h, x, y);
    }
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size()));
}

template <bool Parallel>
void BM_IntervalProjector(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const int n = 3 * k;
  const auto seg = SegmentGroundStates::build(2 * k, 0.5);
  const auto x = random_vector(pow3(n));
  std::vector<double> y(x.size());
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::project_interval_parallel(n, 1, 2 * k, seg, x, y);
    } else {
      kernels::project_interval_serial(n, 1, 2 * k, seg, x, y);
    }
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size()));
}

}  // namespace

BENCHMARK(BM_Bonds<false>)->Name("bonds/serial")->Arg(8)->Arg(10)->Arg(12);
BENCHMARK(BM_Bonds<true>)->Name("bonds/parallel")->Arg(8)->Arg(10)->Arg(12);
BENCHMARK(BM_IntervalProjector<false>)->Name("interval/serial")->Arg(2)->Arg(3)->Arg(4);
BENCHMARK(BM_IntervalProjector<true>)->Name("interval/parallel")->Arg(2)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
