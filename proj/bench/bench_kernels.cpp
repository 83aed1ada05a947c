// Serial reference against the OpenMP kernels on one red-black sweep.
// Thread count follows SEGSYM_THREADS / OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <random>

#include "segsym/kernels.hpp"

using namespace segsym;
using namespace segsym::kernels;

namespace {

struct Setup {
  Grid2D g;
  Mask mask;
  std::vector<double> u, v;

  explicit Setup(int n) : g(n, n, 1.0 / (n - 1), {}), mask(interior_mask(g)), u(g.size()), v(g.size()) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (auto& x : u) x = U(rng);
    for (auto& x : v) x = U(rng);
  }
};

template <bool Parallel>
void BM_sweep_pair(benchmark::State& state) {
  Setup s(static_cast<int>(state.range(0)));
  const PairSweep p{100.0 * s.g.h * s.g.h, optimal_omega(s.g)};
  for (auto _ : state) {
    if constexpr (Parallel)
      parallel::sweep_pair(s.g, s.mask, s.u, s.v, p);
    else
      serial::sweep_pair(s.g, s.mask, s.u, s.v, p);
    benchmark::DoNotOptimize(s.u.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(s.g.size()));
}

template <bool Parallel>
void BM_sweep_linear(benchmark::State& state) {
  Setup s(static_cast<int>(state.range(0)));
  const LinearSweep p{10.0 * s.g.h * s.g.h, optimal_omega(s.g, 10.0 * s.g.h * s.g.h)};
  for (auto _ : state) {
    if constexpr (Parallel)
      parallel::sweep_linear(s.g, s.mask, s.u, p);
    else
      serial::sweep_linear(s.g, s.mask, s.u, p);
    benchmark::DoNotOptimize(s.u.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(s.g.size()));
}

template <bool Parallel>
void BM_residual_pair(benchmark::State& state) {
  Setup s(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    double r = Parallel ? parallel::residual_pair(s.g, s.mask, s.u, s.v, 100.0)
                        : serial::residual_pair(s.g, s.mask, s.u, s.v, 100.0);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(s.g.size()));
}

}  // namespace

BENCHMARK(BM_sweep_pair<false>)->Name("sweep_pair/serial")->Arg(257)->Arg(1025);
BENCHMARK(BM_sweep_pair<true>)->Name("sweep_pair/parallel")->Arg(257)->Arg(1025);
BENCHMARK(BM_sweep_linear<false>)->Name("sweep_linear/serial")->Arg(257)->Arg(1025);
BENCHMARK(BM_sweep_linear<true>)->Name("sweep_linear/parallel")->Arg(257)->Arg(1025);
BENCHMARK(BM_residual_pair<false>)->Name("residual_pair/serial")->Arg(1025);
BENCHMARK(BM_residual_pair<true>)->Name("residual_pair/parallel")->Arg(1025);

int main(int argc, char** argv) {
  configure_threads();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
