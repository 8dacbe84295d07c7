#include "mplex/observation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mplex/errors.hpp"
#include "mplex/rng.hpp"

namespace mplex {

ObservationMask::ObservationMask(std::size_t node_count,
                                 std::vector<std::vector<std::size_t>> observed_nodes,
                                 SharingMode mode, std::optional<double> coverage)
    : node_count_(node_count), observed_(std::move(observed_nodes)), mode_(mode) {
  member_.assign(observed_.size(), std::vector<std::uint8_t>(node_count_, 0));
  for (std::size_t l = 0; l < observed_.size(); ++l) {
    auto& nodes = observed_[l];
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    for (std::size_t i : nodes) {
      if (i >= node_count_)
        throw InputError("observed node " + std::to_string(i) + " outside universe of size " +
                         std::to_string(node_count_));
      member_[l][i] = 1;
    }
  }
  if (mode_ == SharingMode::shared)
    for (std::size_t l = 1; l < observed_.size(); ++l)
      if (observed_[l] != observed_[0])
        throw InputError("shared mask must observe the same nodes in every layer");
  coverage_ = coverage ? *coverage : (observed_.empty() ? 0.0 : layer_coverage(0));
}

double ObservationMask::layer_coverage(std::size_t l) const {
  return node_count_ == 0 ? 0.0
                          : static_cast<double>(observed_.at(l).size()) /
                                static_cast<double>(node_count_);
}

std::size_t ObservationMask::unobserved_pairs(std::size_t l) const {
  const std::size_t n = node_count_;
  const std::size_t k = observed_count(l);
  return n * (n - 1) / 2 - (k < 2 ? 0 : k * (k - 1) / 2);
}

std::uint64_t ObservationMask::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  feed(node_count_);
  for (const auto& nodes : observed_) {
    feed(nodes.size());
    for (std::size_t i : nodes) feed(i);
  }
  return h;
}

std::size_t observed_size(std::size_t node_count, double coverage) {
  // The epsilon keeps products such as 0.35 * 10 on the intended side of .5.
  return static_cast<std::size_t>(
      std::floor(coverage * static_cast<double>(node_count) + 0.5 + 1e-9));
}

ObservationMask sample_mask(std::size_t node_count, std::size_t layer_count, double coverage,
                            SharingMode mode, std::uint64_t seed) {
  if (!(coverage > 0.0 && coverage <= 1.0))
    throw ParameterError("coverage must lie in (0, 1], got " + std::to_string(coverage));
  const std::size_t k = observed_size(node_count, coverage);
  if (k < 1)
    throw ParameterError("coverage " + std::to_string(coverage) + " observes no node out of " +
                         std::to_string(node_count));

  Rng rng(seed);
  auto draw = [&] {
    std::vector<std::size_t> perm(node_count);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) std::swap(perm[i], perm[i + rng.below(node_count - i)]);
    perm.resize(k);
    return perm;
  };

  std::vector<std::vector<std::size_t>> sets;
  sets.reserve(layer_count);
  if (mode == SharingMode::shared) {
    sets.assign(layer_count, draw());
  } else {
    for (std::size_t l = 0; l < layer_count; ++l) sets.push_back(draw());
  }
  return ObservationMask(node_count, std::move(sets), mode, coverage);
}

ObservedMultiplex::ObservedMultiplex(ObservationMask mask, std::vector<BinaryMatrix> values)
    : mask_(std::move(mask)), values_(std::move(values)) {
  if (values_.size() != mask_.layer_count())
    throw InputError("observed values and mask disagree on the layer count");
  for (std::size_t l = 0; l < values_.size(); ++l) {
    if (values_[l].size() != mask_.node_count())
      throw InputError("observed values and mask disagree on the node count");
    for (std::size_t i = 0; i < values_[l].size(); ++i)
      for (std::size_t j = 0; j < values_[l].size(); ++j)
        if (!mask_.entry_observed(l, i, j)) values_[l](i, j) = 0;
  }
}

std::optional<std::uint8_t> ObservedMultiplex::entry(std::size_t l, std::size_t i,
                                                     std::size_t j) const {
  if (!observed(l, i, j)) return std::nullopt;
  return values_[l](i, j);
}

std::size_t ObservedMultiplex::observed_edge_count(std::size_t l) const {
  std::size_t count = 0;
  const auto& nodes = mask_.observed_nodes(l);
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = a + 1; b < nodes.size(); ++b)
      if (values_[l](nodes[a], nodes[b]) != 0) ++count;
  return count;
}

std::size_t ObservedMultiplex::defined_entry_count(std::size_t l) const {
  const std::size_t k = mask_.observed_count(l);
  return k < 2 ? 0 : k * (k - 1) / 2;
}

ObservedMultiplex apply_mask(const MultiplexNetwork& net, const ObservationMask& mask) {
  if (mask.node_count() != net.node_count() || mask.layer_count() != net.layer_count())
    throw InputError("mask is " + std::to_string(mask.layer_count()) + " layers x " +
                     std::to_string(mask.node_count()) + " nodes but network is " +
                     std::to_string(net.layer_count()) + " x " + std::to_string(net.node_count()));
  std::vector<BinaryMatrix> values;
  values.reserve(net.layer_count());
  for (const auto& layer : net.layers()) values.push_back(layer.adjacency());
  return ObservedMultiplex(mask, std::move(values));
}

}  // namespace mplex
