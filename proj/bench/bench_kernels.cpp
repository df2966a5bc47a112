// Parallel kernels vs their serial reference twins.
//
//   COHERELAB_THREADS=4 ./bench_kernels

#include <benchmark/benchmark.h>

#include "coherelab/interferometer.hpp"
#include "coherelab/kernels.hpp"
#include "coherelab/measures.hpp"

namespace {

using namespace coherelab;

template <bool Parallel>
void BM_PatternTable(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const DensityMatrix rho = random_density(d, d, 1);
  const Povm povm = Povm::fourier(d);
  const PhaseGrid grid = PhaseGrid::default_for(d);
  for (auto _ : state) {
    Table t = Parallel ? kernels::pattern_table(rho, povm, grid.points())
                       : reference::pattern_table(rho, povm, grid.points());
    benchmark::DoNotOptimize(t);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}

template <bool Parallel>
void BM_MaxPairwiseTv(benchmark::State& state) {
  const DensityMatrix rho = random_density(3, 3, 2);
  const PatternGrid p = sample_pattern(rho, Povm::fourier(3), PhaseGrid::torus(3, static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) {
    PairMax m = Parallel ? kernels::max_pairwise_tv(p.table) : reference::max_pairwise_tv(p.table);
    benchmark::DoNotOptimize(m);
  }
}

template <bool Parallel>
void BM_PartitionArgmax(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const DensityMatrix rho = random_density(d, d, 3);
  const std::size_t n = std::size_t{1} << (d - 1);
  auto f = [&](std::size_t mask) {
    std::vector<double> h(d, 1.0);
    for (std::size_t j = 1; j < d; ++j)
      if (mask >> (j - 1) & 1U) h[j] = -1.0;
    return commutator_half_norm(rho, h);
  };
  for (auto _ : state) {
    IndexedMax m = Parallel ? kernels::argmax(n, f) : reference::argmax(n, f);
    benchmark::DoNotOptimize(m);
  }
}

void BM_CMax(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const DensityMatrix rho = random_density(d, d, 4);
  for (auto _ : state) benchmark::DoNotOptimize(c_max(rho).value);
}

}  // namespace

BENCHMARK(BM_PatternTable<true>)->Arg(2)->Arg(3)->Arg(4)->Name("pattern_table/parallel");
BENCHMARK(BM_PatternTable<false>)->Arg(2)->Arg(3)->Arg(4)->Name("pattern_table/reference");
BENCHMARK(BM_MaxPairwiseTv<true>)->Arg(9)->Arg(17)->Name("max_pairwise_tv/parallel");
BENCHMARK(BM_MaxPairwiseTv<false>)->Arg(9)->Arg(17)->Name("max_pairwise_tv/reference");
BENCHMARK(BM_PartitionArgmax<true>)->Arg(8)->Arg(12)->Name("partition_argmax/parallel");
BENCHMARK(BM_PartitionArgmax<false>)->Arg(8)->Arg(12)->Name("partition_argmax/reference");
BENCHMARK(BM_CMax)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  coherelab::apply_thread_cap_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
