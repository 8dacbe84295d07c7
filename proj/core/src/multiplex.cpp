#include "mplex/multiplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mplex/errors.hpp"

namespace mplex {

namespace {

std::size_t count_upper(const BinaryMatrix& a) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a(i, j) != 0) ++count;
  return count;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

  std::size_t size_of(std::size_t x) { return size_[find(x)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace

LayerGraph::LayerGraph(BinaryMatrix adjacency)
    : adjacency_(std::move(adjacency)), edge_count_(count_upper(adjacency_)) {}

LayerGraph LayerGraph::from_edges(std::size_t node_count, const std::vector<Edge>& edges) {
  BinaryMatrix a(node_count, 0);
  for (auto [i, j] : edges) {
    if (i >= node_count || j >= node_count)
      throw InputError("edge (" + std::to_string(i) + ", " + std::to_string(j) +
                       ") outside node universe of size " + std::to_string(node_count));
    if (i == j) continue;
    a.set_symmetric(i, j, 1);
  }
  return LayerGraph(std::move(a));
}

std::size_t LayerGraph::degree(std::size_t i) const {
  const auto r = adjacency_.row(i);
  return static_cast<std::size_t>(
      std::count_if(r.begin(), r.end(), [](std::uint8_t v) { return v != 0; }));
}

std::vector<std::size_t> LayerGraph::degrees() const {
  std::vector<std::size_t> d(node_count());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = degree(i);
  return d;
}

std::vector<Edge> LayerGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::size_t i = 0; i < node_count(); ++i)
    for (std::size_t j = i + 1; j < node_count(); ++j)
      if (adjacency_(i, j) != 0) out.emplace_back(i, j);
  return out;
}

MultiplexNetwork::MultiplexNetwork(std::size_t node_count, std::vector<LayerGraph> layers,
                                   std::vector<std::string> node_labels,
                                   std::vector<std::string> layer_names)
    : node_count_(node_count),
      layers_(std::move(layers)),
      node_labels_(std::move(node_labels)),
      layer_names_(std::move(layer_names)) {
  if (node_count_ == 0) throw InputError("multiplex needs at least one node");
  if (layers_.empty()) throw InputError("multiplex needs at least one layer");
  for (std::size_t l = 0; l < layers_.size(); ++l)
    if (layers_[l].node_count() != node_count_)
      throw InputError("layer " + std::to_string(l + 1) + " is " +
                       std::to_string(layers_[l].node_count()) + "x" +
                       std::to_string(layers_[l].node_count()) + ", expected " +
                       std::to_string(node_count_));
  if (!node_labels_.empty() && node_labels_.size() != node_count_)
    throw InputError("node label count does not match node count");
  if (!layer_names_.empty() && layer_names_.size() != layers_.size())
    throw InputError("layer name count does not match layer count");
}

std::string MultiplexNetwork::layer_name(std::size_t l) const {
  if (l < layer_names_.size()) return layer_names_[l];
  return std::to_string(l + 1);
}

BinaryMatrix aggregate_or(const MultiplexNetwork& net) {
  const std::size_t n = net.node_count();
  BinaryMatrix agg(n, 0);
  for (const auto& layer : net.layers()) {
    const auto& a = layer.adjacency();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && a(i, j) != 0) agg(i, j) = 1;
  }
  return agg;
}

ValidationReport validate(const MultiplexNetwork& net) {
  ValidationReport report;
  const std::size_t n = net.node_count();
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    const auto& a = net.layer(l).adjacency();
    const std::string where = "layer " + net.layer_name(l);
    for (std::size_t i = 0; i < n; ++i) {
      if (a(i, i) != 0)
        report.errors.push_back({IssueKind::self_loop, l, i, i,
                                 where + ": self-loop at node " + std::to_string(i)});
      for (std::size_t j = 0; j < n; ++j) {
        if (a(i, j) > 1)
          report.errors.push_back({IssueKind::non_binary, l, i, j,
                                   where + ": non-binary entry (" + std::to_string(i) + ", " +
                                       std::to_string(j) + ")"});
        if (j > i && a(i, j) != a(j, i))
          report.errors.push_back({IssueKind::asymmetric, l, i, j,
                                   where + ": entry (" + std::to_string(i) + ", " +
                                       std::to_string(j) + ") differs from its transpose"});
      }
    }
    const std::size_t edges = net.layer(l).edge_count();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t d = net.layer(l).degree(i);
      if (!hub_condition_holds(d, edges))
        report.warnings.push_back(
            {IssueKind::hub_node, l, i, i,
             where + ": node " + std::to_string(i) + " has degree " + std::to_string(d) +
                 " of " + std::to_string(edges) + " edges (hub incident to over half the layer)"});
    }
  }
  return report;
}

bool hub_condition_holds(std::size_t degree, std::size_t edges) {
  if (degree == 0) return true;
  // d (2|E| - 1) <= |E|^2, exact in integers.
  const auto d = static_cast<long double>(degree);
  const auto e = static_cast<long double>(edges);
  return d * (2 * e - 1) <= e * e;
}

std::vector<std::size_t> component_sizes(const LayerGraph& layer) {
  const std::size_t n = layer.node_count();
  DisjointSets sets(n);
  for (auto [i, j] : layer.edges()) sets.unite(i, j);

  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < n; ++i)
    if (sets.find(i) == i && layer.degree(i) > 0) sizes.push_back(sets.size_of(i));
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

LayerStats layer_stats(const LayerGraph& layer) {
  LayerStats s;
  for (std::size_t d : layer.degrees())
    if (d > 0) ++s.active_nodes;
  if (s.active_nodes == 0) throw EmptyLayerError("layer has no edges");

  s.edges = layer.edge_count();
  const auto active = static_cast<double>(s.active_nodes);
  const auto edges = static_cast<double>(s.edges);
  s.density = 2.0 * edges / (active * (active - 1.0));
  s.avg_degree = 2.0 * edges / active;

  const auto sizes = component_sizes(layer);
  s.component_count = sizes.size();
  s.gcc_size = sizes.front();
  const double mean = active / static_cast<double>(sizes.size());
  double sq = 0.0;
  for (std::size_t c : sizes) sq += (static_cast<double>(c) - mean) * (static_cast<double>(c) - mean);
  s.mean_cc_size = mean;
  s.cov_cc_size = std::sqrt(sq / static_cast<double>(sizes.size())) / mean;
  return s;
}

}  // namespace mplex
