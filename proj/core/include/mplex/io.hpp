#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mplex/multiplex.hpp"
#include "mplex/records.hpp"

namespace mplex {

struct ParseResult {
  MultiplexNetwork network;
  std::vector<std::string> warnings;
};

/// Reads `layer node node [weight]` records. Blank lines and lines starting
/// with '#' are skipped. Nodes and layers are indexed in order of first
/// appearance; records are undirected and duplicates collapse. Self-loops
/// are dropped and weights other than 1 binarized (nonzero -> link), each
/// with a warning. Throws ParseError on a malformed line and InputError when
/// the file holds no edge.
ParseResult parse_multiplex(std::istream& in);

/// As above, but node indices come from `labels` (label k -> index k); a
/// label missing from the mapping is a parse error.
ParseResult parse_multiplex(std::istream& in, const std::vector<std::string>& labels);

/// One label per line; line order defines the index.
std::vector<std::string> read_label_mapping(std::istream& in);

/// Serializes a multiplex as an edge list that parse_multiplex accepts.
/// Unlabelled networks use the node index as the label; an edgeless layer is
/// written as a single zero-weight record so the layer count survives.
void write_edge_list(const MultiplexNetwork& net, std::ostream& out);

/// Edges (i < j) of one binary matrix as `layer a b` lines.
void write_layer_edges(const BinaryMatrix& adjacency, const std::string& layer_name,
                       const std::vector<std::string>& labels, std::ostream& out);

/// FNV-1a digest of the node count and every layer's edge set.
std::uint64_t network_digest(const MultiplexNetwork& net);

/// Formats with 6 significant digits (printf %.6g).
std::string format_g6(double v);

/// Run-level CSV. Rows are sorted by (method name, coverage, rep).
void write_results(std::vector<RunRecord> records, std::ostream& out);
void write_results(const std::vector<RunRecord>& records, const std::filesystem::path& path);

void write_summary(const std::vector<SummaryRow>& rows, std::ostream& out);
void write_summary(const std::vector<SummaryRow>& rows, const std::filesystem::path& path);

/// `iteration,mae` CSV with 1-based iterations.
void write_trace(std::span<const double> mae_history, std::ostream& out);
void write_trace(std::span<const double> mae_history, const std::filesystem::path& path);
std::vector<double> read_trace(std::istream& in);

}  // namespace mplex
