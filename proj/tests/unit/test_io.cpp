#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "mplex/errors.hpp"
#include "mplex/io.hpp"
#include "oracles.hpp"

using namespace mplex;

namespace {

ParseResult parse(const std::string& text) {
  std::istringstream in(text);
  return parse_multiplex(in);
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

RunRecord record(Method m, double c, std::size_t rep) {
  RunRecord r;
  r.method = m;
  r.coverage = c;
  r.rep = rep;
  r.seed = 42;
  r.layers = 2;
  r.metrics = report({3, 90, 4, 2});
  r.iterations = 7;
  r.converged = true;
  return r;
}

// Edge set of every layer keyed by label pairs.
std::vector<std::vector<std::pair<std::string, std::string>>> labelled_edges(const MultiplexNetwork& net) {
  std::vector<std::vector<std::pair<std::string, std::string>>> out;
  for (const auto& layer : net.layers()) {
    std::vector<std::pair<std::string, std::string>> e;
    for (auto [i, j] : layer.edges()) {
      auto a = net.node_labels()[i], b = net.node_labels()[j];
      if (b < a) std::swap(a, b);
      e.emplace_back(a, b);
    }
    std::sort(e.begin(), e.end());
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

TEST_CASE("parse_multiplex examples") {
  const auto r = parse("1 a b\n1 b c\n2 a c\n");
  const auto& net = r.network;
  CHECK(net.node_count() == 3);
  CHECK(net.layer_count() == 2);
  CHECK(net.node_labels() == std::vector<std::string>{"a", "b", "c"});
  CHECK(net.layer(0).edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(net.layer(1).edges() == std::vector<Edge>{{0, 2}});
  CHECK(net.layer_name(1) == "2");
  // b touches both edges of layer 1: the hub condition fails.
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("hub") != std::string::npos);

  const auto w = parse("# comment\n\n1 x y 1.0\n");
  CHECK(w.network.layer(0).edge_count() == 1);
  CHECK(w.warnings.empty());

  const auto loop = parse("1 x x\n1 x y\n");
  CHECK(loop.network.layer(0).edge_count() == 1);
  REQUIRE(loop.warnings.size() == 1);
  CHECK(loop.warnings[0].find("self-loop") != std::string::npos);

  const auto dup = parse("L a b\nL b a\nL a b 2\n");
  CHECK(dup.network.layer(0).edge_count() == 1);
  CHECK(dup.warnings.size() == 1);

  const auto zero = parse("A a b\nB a c 0\n");
  CHECK(zero.network.layer_count() == 2);
  CHECK(zero.network.layer(1).edge_count() == 0);
}

TEST_CASE("parse_multiplex errors carry line numbers") {
  try {
    parse("1 a b\n1 a\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  try {
    parse("1 a b\n\n1 a c x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse("1 a b c d e\n"), ParseError);
  CHECK_THROWS_AS(parse("# nothing\n"), InputError);
  CHECK_THROWS_AS(parse("1 a a\n"), InputError);

  std::istringstream mapping("a\nb\n");
  std::istringstream in("1 a z\n");
  CHECK_THROWS_AS(parse_multiplex(in, read_label_mapping(mapping)), ParseError);
}

TEST_CASE("serialize then parse reproduces the network") {
  std::mt19937_64 gen(19);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + gen() % 12;
    const std::size_t m = 1 + gen() % 3;
    auto net = oracle::random_network(n, m, 0.4, gen);
    std::size_t edges = 0;
    for (const auto& l : net.layers()) edges += l.edge_count();
    if (edges == 0) continue;

    std::ostringstream out;
    write_edge_list(net, out);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    std::istringstream in(out.str());
    const auto back = parse_multiplex(in, labels).network;
    REQUIRE(back.layer_count() == m);
    for (std::size_t l = 0; l < m; ++l) CHECK(back.layer(l).adjacency() == net.layer(l).adjacency());
  }
}

TEST_CASE("permuting input lines preserves edge semantics") {
  std::mt19937_64 gen(23);
  for (int t = 0; t < 30; ++t) {
    const auto net = oracle::random_network(10, 2, 0.3, gen);
    std::ostringstream out;
    write_edge_list(net, out);
    auto lines = lines_of(out.str());
    if (lines.empty()) continue;
    // Keep the first line so both parses see the layers in the same order.
    std::shuffle(lines.begin() + 1, lines.end(), gen);
    std::string shuffled;
    for (const auto& l : lines) shuffled += l + "\n";
    const auto a = parse(out.str()).network;
    const auto b = parse(shuffled).network;
    if (a.layer_names() != b.layer_names()) continue;
    CHECK(labelled_edges(a) == labelled_edges(b));

    std::istringstream in_a(out.str()), in_b(shuffled);
    const auto& labels = a.node_labels();
    CHECK(parse_multiplex(in_a, labels).network == parse_multiplex(in_b, labels).network);
  }
}

TEST_CASE("write_results") {
  std::ostringstream empty;
  write_results({}, empty);
  CHECK(empty.str() == "method,coverage,rep,seed,layers,mcc,gmean,tp,tn,fp,fn,iterations,converged\n");

  std::ostringstream one;
  write_results({record(Method::ema, 0.4, 0)}, one);
  const auto rows = lines_of(one.str());
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].rfind("ema,0.4,0,42,2,", 0) == 0);
  CHECK(rows[1].find(",3,90,4,2,7,true") != std::string::npos);

  std::vector<RunRecord> recs;
  for (Method m : {Method::em, Method::ema})
    for (double c : {0.8, 0.2})
      for (std::size_t rep : {1u, 0u}) recs.push_back(record(m, c, rep));
  std::ostringstream many;
  write_results(recs, many);
  const auto all = lines_of(many.str());
  REQUIRE(all.size() == 9);
  const std::vector<std::string> prefixes{"em,0.2,0,", "em,0.2,1,", "em,0.8,0,", "em,0.8,1,",
                                          "ema,0.2,0,", "ema,0.2,1,", "ema,0.8,0,", "ema,0.8,1,"};
  for (std::size_t k = 0; k < prefixes.size(); ++k) CHECK(all[k + 1].rfind(prefixes[k], 0) == 0);

  CHECK_THROWS_AS(write_results(recs, std::filesystem::path("/nonexistent-dir/x.csv")), Error);
}

TEST_CASE("format_g6") {
  CHECK(format_g6(0.123456789) == "0.123457");
  CHECK(format_g6(0.4) == "0.4");
  CHECK(format_g6(1e-5) == "1e-05");
}

TEST_CASE("write_trace") {
  std::ostringstream two;
  write_trace(std::vector<double>{0.3, 0.01}, two);
  CHECK(two.str() == "iteration,mae\n1,0.3\n2,0.01\n");
  std::ostringstream none;
  write_trace(std::vector<double>{}, none);
  CHECK(none.str() == "iteration,mae\n");

  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> e(-9, 0);
  std::vector<double> h;
  for (int k = 0; k < 100; ++k) h.push_back(std::pow(10.0, e(gen)));
  std::ostringstream out;
  write_trace(h, out);
  std::istringstream in(out.str());
  const auto back = read_trace(in);
  REQUIRE(back.size() == h.size());
  for (std::size_t k = 0; k < h.size(); ++k) CHECK(std::fabs(back[k] - h[k]) <= 5e-6 * h[k]);

  CHECK_THROWS_AS(write_trace(h, std::filesystem::path("/nonexistent-dir/t.csv")), Error);
}

TEST_CASE("network_digest distinguishes networks") {
  const auto a = parse("1 a b\n1 b c\n").network;
  const auto b = parse("1 a b\n1 a c\n").network;
  CHECK(network_digest(a) == network_digest(a));
  CHECK(network_digest(a) != network_digest(b));
}
