#include "mplex/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "mplex/errors.hpp"
#include "mplex/rng.hpp"

namespace mplex {

namespace {

double expected_degree(const DegreeLaw& law) {
  if (const auto* p = std::get_if<PoissonLaw>(&law)) return p->mean;
  return std::get<PowerLaw>(law).min_degree;
}

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

}  // namespace

void check_spec(const SyntheticSpec& spec) {
  if (spec.node_count < 2) throw ParameterError("node_count must be at least 2");
  if (spec.layer_count < 1) throw ParameterError("layer_count must be at least 1");
  if (!(spec.overlap >= 0.0 && spec.overlap <= 1.0))
    throw ParameterError("overlap must lie in [0, 1]");
  if (const auto* p = std::get_if<PoissonLaw>(&spec.degree_law)) {
    if (!(p->mean > 0.0)) throw ParameterError("poisson mean must be positive");
  } else {
    const auto& pl = std::get<PowerLaw>(spec.degree_law);
    if (!(pl.exponent > 1.0)) throw ParameterError("power-law exponent must exceed 1");
    if (!(pl.min_degree > 0.0)) throw ParameterError("power-law min_degree must be positive");
  }
  const double cap = static_cast<double>(spec.node_count - 1);
  if (expected_degree(spec.degree_law) > cap)
    throw GenerationError("degree law saturates the layer: " +
                          std::to_string(expected_degree(spec.degree_law)) +
                          " exceeds the maximum degree " + std::to_string(spec.node_count - 1));
}

double link_probability(double d_i, double d_j, double edge_count) {
  const double denom = 2.0 * edge_count - 1.0;
  if (!(denom > 0.0))
    throw ParameterError("link probability needs 2|E| - 1 > 0, got |E| = " +
                         std::to_string(edge_count));
  return std::min(1.0, d_i * d_j / denom);
}

std::vector<double> sample_degrees(const DegreeLaw& law, std::size_t node_count,
                                   std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> d(node_count);
  const double cap = node_count > 0 ? static_cast<double>(node_count - 1) : 0.0;
  if (const auto* p = std::get_if<PoissonLaw>(&law)) {
    std::poisson_distribution<int> dist(p->mean);
    for (auto& x : d) x = std::min(cap, static_cast<double>(dist(rng.engine())));
  } else {
    const auto& pl = std::get<PowerLaw>(law);
    for (auto& x : d) {
      const double u = 1.0 - rng.uniform();  // (0, 1]
      x = std::min(cap, pl.min_degree * std::pow(u, -1.0 / (pl.exponent - 1.0)));
    }
  }
  return d;
}

LayerGraph sample_layer(std::span<const double> degrees, std::uint64_t seed) {
  const std::size_t n = degrees.size();
  if (n < 2) throw ParameterError("sample_layer needs at least two nodes");
  for (double d : degrees)
    if (!(d >= 0.0) || !std::isfinite(d)) throw ParameterError("degrees must be finite and >= 0");

  BinaryMatrix a(n, 0);
  const double total = std::accumulate(degrees.begin(), degrees.end(), 0.0);
  if (total == 0.0) return LayerGraph(std::move(a));

  const double edges = total / 2.0;
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.bernoulli(link_probability(degrees[i], degrees[j], edges))) a.set_symmetric(i, j, 1);
  return LayerGraph(std::move(a));
}

MultiplexNetwork generate_multiplex(const SyntheticSpec& spec) {
  check_spec(spec);
  const std::size_t n = spec.node_count;

  auto draw_layer = [&](std::size_t l) {
    const auto d = sample_degrees(spec.degree_law, n, derive_seed(spec.seed, {l, 0}));
    return sample_layer(d, derive_seed(spec.seed, {l, 1}));
  };

  std::vector<LayerGraph> layers;
  layers.reserve(spec.layer_count);
  layers.push_back(draw_layer(0));
  const auto base_edges = layers.front().edges();

  for (std::size_t l = 1; l < spec.layer_count; ++l) {
    BinaryMatrix a(n, 0);
    std::size_t count = 0;
    Rng copy_rng(derive_seed(spec.seed, {l, 2}));
    for (auto [i, j] : base_edges)
      if (copy_rng.bernoulli(spec.overlap)) {
        a.set_symmetric(i, j, 1);
        ++count;
      }

    const LayerGraph tmpl = draw_layer(l);
    auto fill = tmpl.edges();
    Rng fill_rng(derive_seed(spec.seed, {l, 3}));
    shuffle(fill, fill_rng);
    for (auto [i, j] : fill) {
      if (count >= tmpl.edge_count()) break;
      if (a(i, j) != 0) continue;
      a.set_symmetric(i, j, 1);
      ++count;
    }
    layers.emplace_back(std::move(a));
  }
  return MultiplexNetwork(n, std::move(layers));
}

}  // namespace mplex
