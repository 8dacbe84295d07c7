#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "mplex/multiplex.hpp"

namespace mplex {

struct PoissonLaw {
  double mean = 3.0;
};

/// Continuous Pareto tail d = min_degree * U^(-1/(exponent-1)), capped at n-1.
struct PowerLaw {
  double exponent = 2.5;
  double min_degree = 1.0;
};

using DegreeLaw = std::variant<PoissonLaw, PowerLaw>;

struct SyntheticSpec {
  std::size_t node_count = 100;
  std::size_t layer_count = 2;
  DegreeLaw degree_law = PoissonLaw{};
  /// Probability that a layer-1 edge is copied into each later layer.
  double overlap = 0.0;
  std::uint64_t seed = 0;
};

/// Throws ParameterError on an invalid spec and GenerationError when the
/// degree law cannot be realized on node_count nodes.
void check_spec(const SyntheticSpec& spec);

/// Configuration-model link probability min(1, d_i d_j / (2|E| - 1)).
/// Throws ParameterError when 2|E| - 1 <= 0.
double link_probability(double d_i, double d_j, double edge_count);

/// Draws one expected-degree sequence from the law.
std::vector<double> sample_degrees(const DegreeLaw& law, std::size_t node_count,
                                   std::uint64_t seed);

/// Chung-Lu style layer: every pair links independently with
/// link_probability(d_i, d_j, sum(d) / 2). An all-zero sequence yields an
/// empty layer.
LayerGraph sample_layer(std::span<const double> degrees, std::uint64_t seed);

/// Layer 1 is sampled from the degree law. Every later layer first copies
/// each layer-1 edge with probability `overlap`, then takes edges of an
/// independent template layer (fresh degree sequence), in random order,
/// until it has as many edges as the template.
MultiplexNetwork generate_multiplex(const SyntheticSpec& spec);

}  // namespace mplex
