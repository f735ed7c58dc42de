#include <benchmark/benchmark.h>

#include "spinet/dense.hpp"
#include "spinet/fermion.hpp"
#include "spinet/network.hpp"

using namespace spinet;

static void BM_DenseBuild(benchmark::State& state) {
  SpinNetwork net = pst_chain(static_cast<int>(state.range(0)));
  OperatorExpr h = hamiltonian(net, HamiltonianKind::XY);
  for (auto _ : state) benchmark::DoNotOptimize(dense(h));
}
BENCHMARK(BM_DenseBuild)->Arg(6)->Arg(8)->Arg(10);

static void BM_DensePropagator(benchmark::State& state) {
  SpinNetwork net = pst_chain(static_cast<int>(state.range(0)));
  DenseOperator h = dense(hamiltonian(net, HamiltonianKind::XY));
  for (auto _ : state) benchmark::DoNotOptimize(propagator(h, 0.37));
}
BENCHMARK(BM_DensePropagator)->Arg(6)->Arg(8);

static void BM_DenseTrace(benchmark::State& state) {
  SpinNetwork net = pst_chain(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(fidelity_trace(net, HamiltonianKind::XY, 12.0, 401));
}
BENCHMARK(BM_DenseTrace)->Arg(6)->Arg(8);

static void BM_FermionTrace(benchmark::State& state) {
  SpinNetwork net = pst_chain(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(fermion_trace(net, 12.0, 4001));
}
BENCHMARK(BM_FermionTrace)->Arg(8)->Arg(32)->Arg(128);

static void BM_FermionBuild(benchmark::State& state) {
  SpinNetwork net = pst_chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(FermionPropagator(net));
}
BENCHMARK(BM_FermionBuild)->Arg(32)->Arg(128)->Arg(512);

BENCHMARK_MAIN();
