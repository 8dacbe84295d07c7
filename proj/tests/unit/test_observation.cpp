#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mplex/errors.hpp"
#include "mplex/observation.hpp"
#include "mplex/rng.hpp"
#include "oracles.hpp"

using namespace mplex;

TEST_CASE("observed_size rounds halves up") {
  CHECK(observed_size(10, 0.2) == 2);
  CHECK(observed_size(10, 0.25) == 3);
  CHECK(observed_size(10, 0.15) == 2);
  CHECK(observed_size(6, 0.67) == 4);
  CHECK(observed_size(100, 0.5) == 50);
  CHECK(observed_size(7, 1.0) == 7);
  CHECK(observed_size(10, 0.04) == 0);
}

TEST_CASE("sample_mask examples") {
  const auto shared = sample_mask(10, 2, 0.2, SharingMode::shared, 5);
  CHECK(shared.observed_count(0) == 2);
  CHECK(shared.observed_nodes(0) == shared.observed_nodes(1));

  const auto full = sample_mask(10, 2, 1.0, SharingMode::per_layer, 5);
  for (std::size_t l = 0; l < 2; ++l) {
    CHECK(full.observed_count(l) == 10);
    CHECK(full.unobserved_pairs(l) == 0);
  }

  CHECK(sample_mask(50, 3, 0.3, SharingMode::per_layer, 8) ==
        sample_mask(50, 3, 0.3, SharingMode::per_layer, 8));

  CHECK_THROWS_AS(sample_mask(10, 2, 0.0, SharingMode::shared, 1), ParameterError);
  CHECK_THROWS_AS(sample_mask(10, 2, 1.2, SharingMode::shared, 1), ParameterError);
  CHECK_THROWS_AS(sample_mask(10, 2, 0.04, SharingMode::shared, 1), ParameterError);
}

TEST_CASE("per-layer masks intersect like independent uniform subsets") {
  // Hypergeometric mean k^2 / n = 25 for n = 100, k = 50; variance
  // k (k/n) ((n-k)/n) ((n-k)/(n-1)).
  const int seeds = 1000;
  double sum = 0;
  for (int s = 0; s < seeds; ++s) {
    const auto m = sample_mask(100, 3, 0.5, SharingMode::per_layer, derive_seed(9, {std::uint64_t(s)}));
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = a + 1; b < 3; ++b) {
        std::vector<std::size_t> inter;
        std::set_intersection(m.observed_nodes(a).begin(), m.observed_nodes(a).end(),
                              m.observed_nodes(b).begin(), m.observed_nodes(b).end(),
                              std::back_inserter(inter));
        sum += double(inter.size());
      }
  }
  const double mean = sum / (3.0 * seeds);
  const double var = 50.0 * 0.5 * 0.5 * (50.0 / 99.0);
  CHECK(std::fabs(mean - 25.0) <= 4 * std::sqrt(var / (3.0 * seeds)));
}

TEST_CASE("ObservationMask construction") {
  const ObservationMask m(5, {{3, 1, 1}, {0}}, SharingMode::per_layer);
  CHECK(m.observed_nodes(0) == std::vector<std::size_t>{1, 3});
  CHECK(m.entry_observed(0, 1, 3));
  CHECK_FALSE(m.entry_observed(0, 1, 1));
  CHECK_FALSE(m.entry_observed(1, 0, 1));
  CHECK(m.unobserved_pairs(0) == 10 - 1);
  CHECK(m.unobserved_pairs(1) == 10);
  CHECK(m.layer_coverage(0) == doctest::Approx(0.4));
  CHECK_THROWS_AS(ObservationMask(3, {{5}}, SharingMode::per_layer), InputError);
  CHECK_THROWS_AS(ObservationMask(3, {{0, 1}, {1, 2}}, SharingMode::shared), InputError);
  CHECK(m.digest() == ObservationMask(5, {{1, 3}, {0}}, SharingMode::per_layer).digest());
  CHECK(m.digest() != ObservationMask(5, {{1, 2}, {0}}, SharingMode::per_layer).digest());
}

TEST_CASE("apply_mask examples") {
  const MultiplexNetwork net(3, {LayerGraph::from_edges(3, {{0, 1}, {1, 2}})});

  const auto full = apply_mask(net, ObservationMask(3, {{0, 1, 2}}, SharingMode::per_layer));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) CHECK(full.entry(0, i, j) == net.layer(0).adjacency()(i, j));

  const auto none = apply_mask(net, ObservationMask(3, {{}}, SharingMode::per_layer));
  CHECK(none.defined_entry_count(0) == 0);
  CHECK_FALSE(none.entry(0, 0, 1).has_value());

  const auto part = apply_mask(net, ObservationMask(3, {{0, 1}}, SharingMode::per_layer));
  CHECK(part.entry(0, 0, 1) == std::uint8_t{1});
  CHECK_FALSE(part.entry(0, 0, 2).has_value());
  CHECK_FALSE(part.entry(0, 1, 2).has_value());
  CHECK(part.observed_edge_count(0) == 1);

  CHECK_THROWS_AS(apply_mask(net, ObservationMask(4, {{0}}, SharingMode::per_layer)), InputError);
  CHECK_THROWS_AS(apply_mask(net, ObservationMask(3, {{0}, {1}}, SharingMode::per_layer)), InputError);
}

TEST_CASE("apply_mask properties on random instances") {
  std::mt19937_64 gen(21);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + gen() % 10;
    const std::size_t m = 1 + gen() % 3;
    const auto net = oracle::random_network(n, m, 0.4, gen);
    const auto sets = oracle::random_sets(n, m, 0.6, gen);
    const auto obs = apply_mask(net, oracle::to_mask(n, sets));
    for (std::size_t l = 0; l < m; ++l) {
      const std::size_t k = sets[l].size();
      CHECK(obs.defined_entry_count(l) == k * (k - (k > 0)) / 2);
      // Overlaying the truth on undefined entries recovers the network.
      BinaryMatrix rebuilt(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          const auto v = obs.entry(l, i, j);
          CHECK(v.has_value() == !oracle::hidden(sets, l, i, j));
          rebuilt(i, j) = v ? *v : net.layer(l).adjacency()(i, j);
        }
      CHECK(rebuilt == net.layer(l).adjacency());
    }
  }
}
