#include <doctest.h>

#include <cmath>
#include <random>

#include "mplex/metrics.hpp"
#include "oracles.hpp"

using namespace mplex;

TEST_CASE("mcc examples") {
  CHECK(mcc({1, 1, 0, 0}) == doctest::Approx(1.0));
  CHECK(mcc({0, 0, 1, 1}) == doctest::Approx(-1.0));
  CHECK(mcc({0, 5, 0, 0}) == 0.0);
  CHECK(mcc({}) == 0.0);
}

TEST_CASE("gmean examples") {
  // Field order is tp, tn, fp, fn.
  CHECK(gmean({1, 1, 0, 0}) == doctest::Approx(1.0));
  CHECK(gmean({3, 4, 4, 1}) == doctest::Approx(std::sqrt(0.75 * 0.5)));
  CHECK(gmean({3, 4, 4, 1}) == doctest::Approx(0.6124).epsilon(1e-4));
  CHECK(gmean({0, 9, 0, 2}) == 0.0);
}

TEST_CASE("report fields") {
  const auto r = report({3, 4, 4, 1});
  CHECK(r.recall == doctest::Approx(0.75));
  CHECK(r.specificity == doctest::Approx(0.5));
  CHECK(r.precision == doctest::Approx(3.0 / 7));
  CHECK(r.gmean * r.gmean == doctest::Approx(r.recall * r.specificity));
  CHECK(r.counts.total() == 12);
}

TEST_CASE("confusion on perfect and inverted predictions") {
  std::mt19937_64 gen(3);
  const auto net = oracle::random_network(7, 2, 0.4, gen);
  const auto mask = oracle::to_mask(7, {{0, 1, 2}, {3, 4}});
  std::vector<BinaryMatrix> truth, inverted;
  for (const auto& layer : net.layers()) {
    truth.push_back(layer.adjacency());
    BinaryMatrix inv(7);
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = i + 1; j < 7; ++j) inv.set_symmetric(i, j, layer.has_edge(i, j) ? 0 : 1);
    inverted.push_back(inv);
  }
  const auto perfect = confusion(truth, net, mask)[0];
  CHECK(perfect.fp == 0);
  CHECK(perfect.fn == 0);
  CHECK(perfect.total() == mask.unobserved_pairs(0) + mask.unobserved_pairs(1));
  const auto wrong = confusion(inverted, net, mask)[0];
  CHECK(wrong.tp == 0);
  CHECK(wrong.tn == 0);
  CHECK(confusion(truth, net, mask, Scope::per_layer).size() == 2);
}

TEST_CASE("confusion, mcc and gmean agree with a brute-force tally") {
  std::mt19937_64 gen(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + gen() % 7;
    const std::size_t m = 1 + gen() % 4;
    const auto net = oracle::random_network(n, m, 0.35, gen);
    const auto sets = oracle::random_sets(n, m, 0.5, gen);
    const auto pred = oracle::random_predictions(n, m, gen);
    const auto mask = oracle::to_mask(n, sets);

    const auto per = oracle::tally(pred, net, sets);
    const auto pooled = oracle::pool(per);
    const auto got = confusion(pred, net, mask, Scope::per_layer);
    REQUIRE(got.size() == m);
    for (std::size_t l = 0; l < m; ++l) CHECK(oracle::same(per[l], got[l]));
    const auto got_pooled = confusion(pred, net, mask)[0];
    CHECK(oracle::same(pooled, got_pooled));
    CHECK(std::fabs(mcc(got_pooled) - oracle::mcc(pooled)) <= 1e-12);
    CHECK(std::fabs(gmean(got_pooled) - oracle::gmean(pooled)) <= 1e-12);
  }
}

TEST_CASE("mcc is invariant under swapping the classes") {
  std::mt19937_64 gen(2);
  for (int t = 0; t < 500; ++t) {
    const ConfusionCounts c{gen() % 50, gen() % 50, gen() % 50, gen() % 50};
    const ConfusionCounts s{c.tn, c.tp, c.fn, c.fp};
    CHECK(std::fabs(mcc(c) - mcc(s)) <= 1e-12);
    CHECK(mcc(c) >= -1.0);
    CHECK(mcc(c) <= 1.0);
  }
}

TEST_CASE("mae_delta") {
  const auto mask = oracle::to_mask(3, {{0, 1}});
  std::vector<ProbMatrix> a{ProbMatrix(3)}, b{ProbMatrix(3)};
  CHECK(mae_delta(a, a, mask) == 0.0);

  // Exactly one unobserved entry changes, out of two unobserved pairs.
  a[0].set_symmetric(0, 2, 0.2);
  b[0].set_symmetric(0, 2, 0.7);
  b[0].set_symmetric(0, 1, 0.9);  // observed entry, ignored
  CHECK(mae_delta(a, b, mask) == doctest::Approx(0.25));

  const auto single = oracle::to_mask(2, {{}});
  std::vector<ProbMatrix> c{ProbMatrix(2)}, d{ProbMatrix(2)};
  d[0].set_symmetric(0, 1, 0.7);
  c[0].set_symmetric(0, 1, 0.2);
  CHECK(mae_delta(c, d, single) == doctest::Approx(0.5));

  const auto all = oracle::to_mask(3, {{0, 1, 2}});
  CHECK(mae_delta(a, b, all) == 0.0);

  std::mt19937_64 gen(8);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + gen() % 7;
    const std::size_t m = 1 + gen() % 4;
    const auto p = oracle::random_probs(n, m, gen);
    const auto q = oracle::random_probs(n, m, gen);
    const auto sets = oracle::random_sets(n, m, 0.5, gen);
    CHECK(std::fabs(mae_delta(p, q, oracle::to_mask(n, sets)) - oracle::mae(p, q, sets)) <= 1e-12);
  }
}
