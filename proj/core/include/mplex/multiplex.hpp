#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mplex/matrix.hpp"

namespace mplex {

using Edge = std::pair<std::size_t, std::size_t>;

/// One relation type of a multiplex: an undirected, unweighted adjacency
/// matrix over the shared node universe.
class LayerGraph {
 public:
  LayerGraph() = default;
  explicit LayerGraph(BinaryMatrix adjacency);

  /// Builds a symmetric layer from an edge list; self-loops and duplicates
  /// are ignored.
  static LayerGraph from_edges(std::size_t node_count, const std::vector<Edge>& edges);

  const BinaryMatrix& adjacency() const noexcept { return adjacency_; }
  std::size_t node_count() const noexcept { return adjacency_.size(); }

  /// Number of unordered linked pairs (i < j).
  std::size_t edge_count() const noexcept { return edge_count_; }

  bool has_edge(std::size_t i, std::size_t j) const { return adjacency_(i, j) != 0; }
  std::size_t degree(std::size_t i) const;
  std::vector<std::size_t> degrees() const;

  /// Edges (i, j) with i < j in row-major order.
  std::vector<Edge> edges() const;

  bool operator==(const LayerGraph&) const = default;

 private:
  BinaryMatrix adjacency_;
  std::size_t edge_count_ = 0;
};

/// Layers sharing one node universe. Only dimensions are checked on
/// construction; structural properties are reported by validate().
class MultiplexNetwork {
 public:
  MultiplexNetwork() = default;
  MultiplexNetwork(std::size_t node_count, std::vector<LayerGraph> layers,
                   std::vector<std::string> node_labels = {},
                   std::vector<std::string> layer_names = {});

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t layer_count() const noexcept { return layers_.size(); }
  const std::vector<LayerGraph>& layers() const noexcept { return layers_; }
  const LayerGraph& layer(std::size_t l) const { return layers_.at(l); }

  /// Empty when the network was not built from labelled input.
  const std::vector<std::string>& node_labels() const noexcept { return node_labels_; }
  const std::vector<std::string>& layer_names() const noexcept { return layer_names_; }

  /// Display name of a layer: its input token, or its 1-based position.
  std::string layer_name(std::size_t l) const;

  bool operator==(const MultiplexNetwork&) const = default;

 private:
  std::size_t node_count_ = 0;
  std::vector<LayerGraph> layers_;
  std::vector<std::string> node_labels_;
  std::vector<std::string> layer_names_;
};

/// OR aggregation: entry (i, j) is 1 iff at least one layer links i and j.
BinaryMatrix aggregate_or(const MultiplexNetwork& net);

enum class IssueKind { asymmetric, self_loop, non_binary, hub_node };

struct Issue {
  IssueKind kind;
  std::size_t layer;
  std::size_t node_a;
  std::size_t node_b;  // equals node_a for node-level issues
  std::string message;
};

struct ValidationReport {
  std::vector<Issue> errors;
  std::vector<Issue> warnings;

  bool ok() const noexcept { return errors.empty(); }
};

/// Structural check. Errors cover asymmetry, self-loops and non-binary
/// entries. A hub warning is issued for every node whose degree d violates
/// the real-root condition of the exact degree update,
/// |E|^2 - 2|E| d + d >= 0, i.e. d > |E|^2 / (2|E| - 1): roughly, the node is
/// incident to more than half of its layer's edges.
ValidationReport validate(const MultiplexNetwork& net);

/// True when degree d satisfies the hub condition for a layer with `edges` edges.
bool hub_condition_holds(std::size_t degree, std::size_t edges);

struct LayerStats {
  std::size_t active_nodes = 0;
  std::size_t edges = 0;
  double density = 0.0;
  double avg_degree = 0.0;
  double mean_cc_size = 0.0;
  std::size_t gcc_size = 0;
  double cov_cc_size = 0.0;
  std::size_t component_count = 0;
};

/// Descriptive statistics over the nodes with degree >= 1. Throws
/// EmptyLayerError when the layer has no edge.
LayerStats layer_stats(const LayerGraph& layer);

/// Sizes of the connected components among active nodes, descending.
std::vector<std::size_t> component_sizes(const LayerGraph& layer);

}  // namespace mplex
