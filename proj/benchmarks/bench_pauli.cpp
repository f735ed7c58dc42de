#include <benchmark/benchmark.h>

#include "spinet/network.hpp"
#include "spinet/pauli.hpp"
#include "spinet/walk.hpp"

using namespace spinet;

static void BM_OperatorProduct(benchmark::State& state) {
  SpinNetwork net = fig5_network();
  OperatorExpr h = hamiltonian(net, HamiltonianKind::XY);
  std::vector<OperatorExpr> ops = walk_operators(h, 4);
  const OperatorExpr& c4 = ops.back();
  for (auto _ : state) benchmark::DoNotOptimize(mul(h, c4));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(h.size() * c4.size()));
}
BENCHMARK(BM_OperatorProduct);

static void BM_Commutator(benchmark::State& state) {
  SpinNetwork net = fig5_network();
  OperatorExpr h = hamiltonian(net, HamiltonianKind::MXY);
  std::vector<OperatorExpr> ops = walk_operators(h, 4);
  const OperatorExpr& c4 = ops.back();
  for (auto _ : state) benchmark::DoNotOptimize(commutator(h, c4));
}
BENCHMARK(BM_Commutator);

static void BM_WalkHierarchy(benchmark::State& state) {
  SpinNetwork net = fig5_network();
  OperatorExpr h = hamiltonian(net, HamiltonianKind::XY);
  const int orders = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(walk_operators(h, orders));
}
BENCHMARK(BM_WalkHierarchy)->Arg(4)->Arg(6)->Arg(8);

static void BM_TransferMoments(benchmark::State& state) {
  SpinNetwork net = fig5_network();
  OperatorExpr h = hamiltonian(net, HamiltonianKind::MXY);
  const int orders = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(transfer_moments(h, orders));
}
BENCHMARK(BM_TransferMoments)->Arg(8)->Arg(12);

BENCHMARK_MAIN();
