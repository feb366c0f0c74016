#include <benchmark/benchmark.h>

#include "petri/algebra.hpp"
#include "petri/examples.hpp"
#include "petri/hlnet.hpp"
#include "petri/module.hpp"
#include "petri/run.hpp"

using namespace petri;

namespace {

Net dining_net(std::size_t n) {
  auto d = hl::dining(n, hl::DiningVariant::basic);
  return hl::expand(d.net, d.interp).net;
}

void BM_MarkingGraphDining(benchmark::State& state) {
  const auto net = dining_net(static_cast<std::size_t>(state.range(0)));
  std::size_t nodes = 0;
  for (auto _ : state) {
    auto g = marking_graph(net, net.initial_marking(), 1'000'000);
    nodes = g.nodes.size();
    benchmark::DoNotOptimize(g);
  }
  state.counters["markings"] = static_cast<double>(nodes);
}
BENCHMARK(BM_MarkingGraphDining)->DenseRange(4, 12, 2)->Unit(benchmark::kMillisecond);

void BM_HLMarkingGraphDining(benchmark::State& state) {
  auto d = hl::dining(static_cast<std::size_t>(state.range(0)), hl::DiningVariant::basic);
  const auto m0 = hl::initial_marking(d.net, d.interp);
  for (auto _ : state) {
    auto g = hl::hl_marking_graph(d.net, d.interp, m0, 1'000'000);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_HLMarkingGraphDining)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_ExpandDining(benchmark::State& state) {
  auto d = hl::dining(static_cast<std::size_t>(state.range(0)), hl::DiningVariant::basic);
  for (auto _ : state) benchmark::DoNotOptimize(hl::expand(d.net, d.interp));
}
BENCHMARK(BM_ExpandDining)->RangeMultiplier(4)->Range(4, 256);

void BM_PlaceInvariantsDining(benchmark::State& state) {
  const auto net = dining_net(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(place_invariants(net));
}
BENCHMARK(BM_PlaceInvariantsDining)->RangeMultiplier(2)->Range(4, 32)->Unit(benchmark::kMillisecond);

// k independent two-step chains: (2k)! / 2^k interleavings.
void BM_Linearizations(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  Net net("chains");
  std::vector<TransitionId> seq;
  for (std::size_t i = 0; i < k; ++i) {
    const auto id = std::to_string(i);
    net.add_place("a" + id, 1);
    net.add_place("b" + id);
    net.add_place("c" + id);
    net.add_transition("s" + id, {{"a" + id, 1}}, {{"b" + id, 1}});
    net.add_transition("t" + id, {{"b" + id, 1}}, {{"c" + id, 1}});
    seq.push_back("s" + id);
    seq.push_back("t" + id);
  }
  const auto run = unfold(net, net.initial_marking(), seq);
  std::size_t count = 0;
  for (auto _ : state) {
    auto lin = linearizations(run, 10'000'000);
    count = lin.sequences.size();
    benchmark::DoNotOptimize(lin);
  }
  state.counters["sequences"] = static_cast<double>(count);
}
BENCHMARK(BM_Linearizations)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_UnfoldBakery(benchmark::State& state) {
  const auto net = examples::bakery();
  std::vector<TransitionId> seq;
  for (int i = 0; i < state.range(0); ++i)
    for (const auto* t : {"bake", "supply-to-aide", "move-to-shop", "sell"}) seq.push_back(t);
  for (auto _ : state) benchmark::DoNotOptimize(unfold(net, net.initial_marking(), seq));
}
BENCHMARK(BM_UnfoldBakery)->RangeMultiplier(4)->Range(1, 64);

void BM_ComposeClaimChain(benchmark::State& state) {
  const auto modules = examples::claim_settlement();
  for (auto _ : state) benchmark::DoNotOptimize(compose_chain(modules));
}
BENCHMARK(BM_ComposeClaimChain);

void BM_ModulesIsomorphic(benchmark::State& state) {
  const auto modules = examples::claim_settlement();
  const auto left = compose_chain(modules);
  auto right = modules.back();
  for (std::size_t i = modules.size() - 1; i-- > 0;) right = compose(modules[i], right);
  for (auto _ : state) benchmark::DoNotOptimize(modules_isomorphic(left, right));
}
BENCHMARK(BM_ModulesIsomorphic);

}  // namespace

BENCHMARK_MAIN();
