#include <benchmark/benchmark.h>

#include "mplex/generator.hpp"
#include "mplex/metrics.hpp"
#include "mplex/observation.hpp"
#include "mplex/solver.hpp"

using namespace mplex;

namespace {

MultiplexNetwork network(std::size_t n, std::size_t layers) {
  return generate_multiplex({n, layers, PoissonLaw{3.0}, 0.6, 7});
}

ObservedMultiplex observed(const MultiplexNetwork& net, double coverage) {
  return apply_mask(net, sample_mask(net.node_count(), net.layer_count(), coverage, SharingMode::per_layer, 11));
}

}  // namespace

static void BM_GenerateMultiplex(benchmark::State& st) {
  const auto n = std::size_t(st.range(0));
  std::uint64_t seed = 0;
  for (auto _ : st) benchmark::DoNotOptimize(generate_multiplex({n, 2, PoissonLaw{3.0}, 0.6, seed++}));
}
BENCHMARK(BM_GenerateMultiplex)->Arg(100)->Arg(500)->Arg(1000);

static void BM_Iteration(benchmark::State& st) {
  const auto net = network(std::size_t(st.range(0)), 2);
  const auto obs = observed(net, 0.6);
  SolverConfig cfg;
  cfg.seed = 3;
  auto state = initialize(obs, cfg);
  const bool aggregate = st.range(1) != 0;
  for (auto _ : st) {
    e_step(state, obs);
    if (aggregate) a_step(state, obs, cfg.aggregate_threshold);
    m_step(state);
  }
}
BENCHMARK(BM_Iteration)->ArgsProduct({{100, 500, 1000}, {0, 1}})->ArgNames({"n", "ema"});

static void BM_Run(benchmark::State& st) {
  const auto net = network(std::size_t(st.range(0)), 2);
  const auto obs = observed(net, 0.6);
  SolverConfig cfg;
  cfg.method = st.range(1) ? Method::ema : Method::em;
  cfg.binarization = Binarization::top_k;
  cfg.link_budget = hidden_edge_counts(net, obs.mask());
  for (auto _ : st) benchmark::DoNotOptimize(run(obs, cfg));
}
BENCHMARK(BM_Run)->ArgsProduct({{200, 500}, {0, 1}})->ArgNames({"n", "ema"})->Unit(benchmark::kMillisecond);

static void BM_Confusion(benchmark::State& st) {
  const auto net = network(std::size_t(st.range(0)), 3);
  const auto obs = observed(net, 0.5);
  const auto pred = random_baseline(obs, hidden_edge_counts(net, obs.mask()), 5).predicted;
  for (auto _ : st) benchmark::DoNotOptimize(confusion(pred, net, obs.mask()));
}
BENCHMARK(BM_Confusion)->Arg(200)->Arg(1000);

BENCHMARK_MAIN();
