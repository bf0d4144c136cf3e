#include <benchmark/benchmark.h>

#include "sinrg/kernel.hpp"
#include "sinrg/montecarlo.hpp"
#include "sinrg/theory.hpp"

using namespace sinrg;

namespace {

const DeviceDomain kTorus = DeviceDomain::box(2, 1.0, Boundary::Periodic);

void BM_SampleConfiguration(benchmark::State& state) {
  const double lambda = static_cast<double>(state.range(0));
  std::uint64_t r = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_configuration(kTorus, lambda, MarkLaw(1.0), StreamSeed{1, r++}));
  }
}
BENCHMARK(BM_SampleConfiguration)->Arg(1000)->Arg(10000);

void BM_BuildGraph(benchmark::State& state) {
  const double lambda = static_cast<double>(state.range(0));
  const auto c = sample_configuration(kTorus, lambda, MarkLaw(1.0), StreamSeed{2, 0});
  SinrParams p;
  p.lambda = lambda;
  for (auto _ : state) benchmark::DoNotOptimize(build_graph(c, p, 1));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(c.size()));
}
BENCHMARK(BM_BuildGraph)->Arg(250)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_BuildGraphNaive(benchmark::State& state) {
  const auto c = sample_configuration(kTorus, 250.0, MarkLaw(1.0), StreamSeed{2, 0});
  SinrParams p;
  p.lambda = 250.0;
  for (auto _ : state) benchmark::DoNotOptimize(build_graph_naive(c, p));
}
BENCHMARK(BM_BuildGraphNaive)->Unit(benchmark::kMillisecond);

void BM_KernelPairMeasure(benchmark::State& state) {
  const double lambda = static_cast<double>(state.range(0));
  const auto c = sample_configuration(kTorus, lambda, MarkLaw(1.0), StreamSeed{3, 0});
  const ConnectionKernel kernel(make_kernel_params(kTorus, 1.0, MarkLaw(1.0), BaseBeta{}, lambda));
  const auto part = make_partition(kTorus, 4, 3, MarkLaw(1.0));
  std::uint64_t r = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_kernel_pair_measure(c, kernel, part, StreamSeed{4, r++}, 1));
}
BENCHMARK(BM_KernelPairMeasure)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_ConnectionKernelBuild(benchmark::State& state) {
  const KernelParams p = make_kernel_params(kTorus, 1.0, MarkLaw(1.0), BaseBeta::parse("1|1:2"), 1000.0);
  for (auto _ : state) benchmark::DoNotOptimize(ConnectionKernel(p));
}
BENCHMARK(BM_ConnectionKernelBuild)->Unit(benchmark::kMillisecond);

void BM_RLambdaDirect(benchmark::State& state) {
  const KernelParams p = make_kernel_params(DeviceDomain::unit_area_disk(), 1.0, MarkLaw(1.0), BaseBeta{}, 100.0);
  const double x[2] = {0.0, 0.0}, y[2] = {0.3, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(r_lambda(x, 1.0, y, 1.0, p));
}
BENCHMARK(BM_RLambdaDirect);

void BM_QAlphaBox(benchmark::State& state) {
  const DeviceDomain box = DeviceDomain::box(static_cast<int>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(q_alpha(box, 1.0));
}
BENCHMARK(BM_QAlphaBox)->Arg(2)->Arg(3);

void BM_EntropyQuadrature(benchmark::State& state) {
  const KernelParams p = make_kernel_params(kTorus, 1.0, MarkLaw(1.0), BaseBeta{}, 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(shannon_entropy_quadrature(p));
}
BENCHMARK(BM_EntropyQuadrature)->Unit(benchmark::kMillisecond);

void BM_EntropyMonteCarlo(benchmark::State& state) {
  const KernelParams p = make_kernel_params(kTorus, 1.0, MarkLaw(1.0), BaseBeta{}, 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(shannon_entropy_monte_carlo(p, 1 << 20, 5, 1));
}
BENCHMARK(BM_EntropyMonteCarlo)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
