#include <doctest.h>

#include <random>

#include "mplex/errors.hpp"
#include "mplex/multiplex.hpp"
#include "oracles.hpp"

using namespace mplex;

namespace {

MultiplexNetwork two_layers(std::size_t n, std::vector<Edge> a, std::vector<Edge> b) {
  return MultiplexNetwork(n, {LayerGraph::from_edges(n, a), LayerGraph::from_edges(n, b)});
}

std::size_t count_kind(const std::vector<Issue>& v, IssueKind k) {
  std::size_t c = 0;
  for (const auto& i : v) c += i.kind == k;
  return c;
}

}  // namespace

TEST_CASE("aggregate_or follows the OR rule") {
  const auto net = two_layers(3, {{0, 1}}, {});
  const auto agg = aggregate_or(net);
  CHECK(agg(0, 1) == 1);
  CHECK(agg(1, 0) == 1);
  CHECK(agg(0, 2) == 0);
  CHECK(agg(1, 2) == 0);

  const auto l = LayerGraph::from_edges(3, {{1, 2}});
  const MultiplexNetwork three(3, {l, l, l});
  CHECK(aggregate_or(three)(1, 2) == 1);
  CHECK(aggregate_or(three)(0, 0) == 0);
}

TEST_CASE("aggregate_or matches brute force and ignores empty layers") {
  std::mt19937_64 gen(17);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + gen() % 7;
    const std::size_t m = 1 + gen() % 4;
    auto net = oracle::random_network(n, m, 0.4, gen);
    const auto agg = aggregate_or(net);
    REQUIRE(agg == oracle::aggregate(net));

    auto layers = net.layers();
    layers.push_back(LayerGraph::from_edges(n, {}));
    CHECK(aggregate_or(MultiplexNetwork(n, layers)) == agg);
  }
}

TEST_CASE("LayerGraph basics") {
  const auto g = LayerGraph::from_edges(4, {{0, 1}, {1, 0}, {2, 2}, {1, 3}});
  CHECK(g.edge_count() == 2);
  CHECK(g.degree(1) == 2);
  CHECK(g.degrees() == std::vector<std::size_t>{1, 2, 0, 1});
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 3}});
  CHECK_THROWS_AS(LayerGraph::from_edges(3, {{0, 3}}), InputError);
}

TEST_CASE("MultiplexNetwork checks dimensions") {
  CHECK_THROWS_AS(MultiplexNetwork(3, {LayerGraph::from_edges(4, {})}), InputError);
  const MultiplexNetwork net(2, {LayerGraph::from_edges(2, {{0, 1}})}, {}, {"road"});
  CHECK(net.layer_name(0) == "road");
  CHECK(MultiplexNetwork(2, {LayerGraph::from_edges(2, {})}).layer_name(0) == "1");
}

TEST_CASE("validate reports structural errors") {
  BinaryMatrix asym(3);
  asym(0, 1) = 1;
  auto r = validate(MultiplexNetwork(3, {LayerGraph(asym)}));
  CHECK_FALSE(r.ok());
  CHECK(count_kind(r.errors, IssueKind::asymmetric) == 1);

  BinaryMatrix loop(3);
  loop(2, 2) = 1;
  r = validate(MultiplexNetwork(3, {LayerGraph(loop)}));
  CHECK(count_kind(r.errors, IssueKind::self_loop) == 1);

  BinaryMatrix weighted(3);
  weighted.set_symmetric(0, 2, 2);
  r = validate(MultiplexNetwork(3, {LayerGraph(weighted)}));
  CHECK(count_kind(r.errors, IssueKind::non_binary) >= 1);

  r = validate(two_layers(4, {{0, 1}, {2, 3}}, {{0, 3}}));
  CHECK(r.ok());
  CHECK(r.warnings.empty());
}

TEST_CASE("hub warning follows the real-root condition of the exact degree update") {
  // d (2|E| - 1) <= |E|^2: with |E| = 4 degree 2 passes and degree 3 fails.
  CHECK(hub_condition_holds(2, 4));
  CHECK_FALSE(hub_condition_holds(3, 4));
  CHECK(hub_condition_holds(1, 1));
  CHECK(hub_condition_holds(0, 0));

  // Star with 4 edges: the centre touches all of them.
  auto r = validate(MultiplexNetwork(5, {LayerGraph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}})}));
  CHECK(r.ok());
  REQUIRE(count_kind(r.warnings, IssueKind::hub_node) == 1);
  CHECK(r.warnings[0].node_a == 0);

  // Two disjoint paths of length 2 (4 edges): centres have degree 2, no hub.
  r = validate(MultiplexNetwork(6, {LayerGraph::from_edges(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}})}));
  CHECK(r.warnings.empty());

  // Brute force against the discriminant |E|^2 - 2|E| d + d >= 0.
  for (std::size_t e = 1; e < 60; ++e)
    for (std::size_t d = 0; d <= e; ++d) {
      const double disc = double(e) * e - 2.0 * e * d + d;
      CHECK(hub_condition_holds(d, e) == (disc >= 0.0));
    }
}

TEST_CASE("layer_stats on small layers") {
  const auto single = layer_stats(LayerGraph::from_edges(5, {{1, 3}}));
  CHECK(single.active_nodes == 2);
  CHECK(single.edges == 1);
  CHECK(single.density == doctest::Approx(1.0));
  CHECK(single.avg_degree == doctest::Approx(1.0));
  CHECK(single.mean_cc_size == doctest::Approx(2.0));
  CHECK(single.gcc_size == 2);
  CHECK(single.cov_cc_size == doctest::Approx(0.0));

  // Components {0,1,2} and {3,4}.
  const auto s = layer_stats(LayerGraph::from_edges(7, {{0, 1}, {1, 2}, {3, 4}}));
  CHECK(s.active_nodes == 5);
  CHECK(s.component_count == 2);
  CHECK(s.mean_cc_size == doctest::Approx(2.5));
  CHECK(s.cov_cc_size == doctest::Approx(0.2));
  CHECK(s.gcc_size == 3);
  CHECK(s.density == doctest::Approx(2.0 * 3 / (5.0 * 4)));
  CHECK(s.avg_degree == doctest::Approx(6.0 / 5));

  CHECK_THROWS_AS(layer_stats(LayerGraph::from_edges(4, {})), EmptyLayerError);
}

TEST_CASE("layer_stats invariants on random layers") {
  std::mt19937_64 gen(5);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + gen() % 30;
    const auto net = oracle::random_network(n, 1, 0.1, gen);
    const auto& layer = net.layer(0);
    if (layer.edge_count() == 0) continue;
    const auto s = layer_stats(layer);
    const auto sizes = component_sizes(layer);
    std::size_t total = 0;
    for (auto c : sizes) total += c;
    CHECK(total == s.active_nodes);
    CHECK(s.density >= 0.0);
    CHECK(s.density <= 1.0);
    CHECK(s.gcc_size <= s.active_nodes);
    CHECK(s.mean_cc_size <= s.gcc_size);
    CHECK(s.avg_degree == doctest::Approx(2.0 * s.edges / s.active_nodes));
  }
}
