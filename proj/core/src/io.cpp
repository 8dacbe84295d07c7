#include "mplex/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "mplex/errors.hpp"

namespace mplex {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_double(std::string_view s, double& v) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  return ec == std::errc{} && ptr == end;
}

ParseResult parse_impl(std::istream& in, const std::vector<std::string>* fixed) {
  std::unordered_map<std::string, std::size_t> node_index;
  std::vector<std::string> labels;
  if (fixed) {
    labels = *fixed;
    for (std::size_t k = 0; k < labels.size(); ++k) node_index.emplace(labels[k], k);
  }
  std::unordered_map<std::string, std::size_t> layer_index;
  std::vector<std::string> layer_names;
  std::vector<std::vector<Edge>> layer_edges;
  ParseResult result;

  auto node_of = [&](std::string_view tok, std::size_t line_no) {
    const std::string key(tok);
    if (auto it = node_index.find(key); it != node_index.end()) return it->second;
    if (fixed) throw ParseError(line_no, "node '" + key + "' is not in the label mapping");
    node_index.emplace(key, labels.size());
    labels.push_back(key);
    return labels.size() - 1;
  };

  std::string line;
  std::size_t line_no = 0;
  std::size_t edge_records = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tok = split_ws(line);
    if (tok.empty() || tok.front().front() == '#') continue;
    if (tok.size() < 3 || tok.size() > 4)
      throw ParseError(line_no, "expected 'layer node node [weight]', got " +
                                    std::to_string(tok.size()) + " fields");
    double weight = 1.0;
    if (tok.size() == 4 && !parse_double(tok[3], weight))
      throw ParseError(line_no, "weight '" + std::string(tok[3]) + "' is not a number");

    std::size_t layer;
    const std::string layer_key(tok[0]);
    if (auto it = layer_index.find(layer_key); it != layer_index.end()) {
      layer = it->second;
    } else {
      layer = layer_names.size();
      layer_index.emplace(layer_key, layer);
      layer_names.push_back(layer_key);
      layer_edges.emplace_back();
    }
    const std::size_t a = node_of(tok[1], line_no);
    const std::size_t b = node_of(tok[2], line_no);

    if (weight != 1.0)
      result.warnings.push_back("line " + std::to_string(line_no) + ": weight " +
                                std::string(tok[3]) + " binarized (network is unweighted)");
    if (a == b) {
      result.warnings.push_back("line " + std::to_string(line_no) + ": self-loop on '" +
                                std::string(tok[1]) + "' dropped");
      continue;
    }
    if (weight == 0.0) continue;
    layer_edges[layer].emplace_back(a, b);
    ++edge_records;
  }
  if (edge_records == 0) throw InputError("input contains no edges");

  const std::size_t n = labels.size();
  std::vector<LayerGraph> layers;
  layers.reserve(layer_edges.size());
  for (const auto& edges : layer_edges) layers.push_back(LayerGraph::from_edges(n, edges));
  result.network = MultiplexNetwork(n, std::move(layers), std::move(labels), std::move(layer_names));

  const auto report = validate(result.network);
  for (const auto& e : report.errors) throw InputError(e.message);
  for (const auto& w : report.warnings) result.warnings.push_back(w.message);
  return result;
}

void open_or_throw(std::ofstream& f, const std::filesystem::path& path) {
  f.open(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
}

void close_or_throw(std::ofstream& f, const std::filesystem::path& path) {
  f.flush();
  if (!f) throw Error("write to '" + path.string() + "' failed");
}

}  // namespace

ParseResult parse_multiplex(std::istream& in) { return parse_impl(in, nullptr); }

ParseResult parse_multiplex(std::istream& in, const std::vector<std::string>& labels) {
  return parse_impl(in, &labels);
}

std::vector<std::string> read_label_mapping(std::istream& in) {
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    labels.emplace_back(tok.front());
  }
  return labels;
}

void write_layer_edges(const BinaryMatrix& adjacency, const std::string& layer_name,
                       const std::vector<std::string>& labels, std::ostream& out) {
  auto label = [&](std::size_t i) { return i < labels.size() ? labels[i] : std::to_string(i); };
  for (std::size_t i = 0; i < adjacency.size(); ++i)
    for (std::size_t j = i + 1; j < adjacency.size(); ++j)
      if (adjacency(i, j) != 0) out << layer_name << ' ' << label(i) << ' ' << label(j) << '\n';
}

void write_edge_list(const MultiplexNetwork& net, std::ostream& out) {
  const auto label = [&](std::size_t i) {
    return net.node_labels().empty() ? std::to_string(i) : net.node_labels()[i];
  };
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    if (net.layer(l).edge_count() == 0 && net.node_count() >= 2) {
      // A zero-weight record keeps an edgeless layer in place.
      out << net.layer_name(l) << ' ' << label(0) << ' ' << label(1) << " 0\n";
      continue;
    }
    write_layer_edges(net.layer(l).adjacency(), net.layer_name(l), net.node_labels(), out);
  }
}

std::uint64_t network_digest(const MultiplexNetwork& net) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  feed(net.node_count());
  feed(net.layer_count());
  for (const auto& layer : net.layers()) {
    feed(layer.edge_count());
    for (auto [i, j] : layer.edges()) {
      feed(i);
      feed(j);
    }
  }
  return h;
}

std::string format_g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_results(std::vector<RunRecord> records, std::ostream& out) {
  std::stable_sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::make_tuple(to_string(a.method), a.coverage, a.rep) <
           std::make_tuple(to_string(b.method), b.coverage, b.rep);
  });
  out << "method,coverage,rep,seed,layers,mcc,gmean,tp,tn,fp,fn,iterations,converged\n";
  for (const auto& r : records) {
    const auto& c = r.metrics.counts;
    out << to_string(r.method) << ',' << format_g6(r.coverage) << ',' << r.rep << ',' << r.seed
        << ',' << r.layers << ',' << format_g6(r.metrics.mcc) << ',' << format_g6(r.metrics.gmean)
        << ',' << c.tp << ',' << c.tn << ',' << c.fp << ',' << c.fn << ',' << r.iterations << ','
        << (r.converged ? "true" : "false") << '\n';
  }
}

void write_results(const std::vector<RunRecord>& records, const std::filesystem::path& path) {
  std::ofstream f;
  open_or_throw(f, path);
  write_results(records, f);
  close_or_throw(f, path);
}

void write_summary(const std::vector<SummaryRow>& rows, std::ostream& out) {
  out << "method,coverage,runs,mcc_mean,mcc_std,gmean_mean,gmean_std,iterations_mean,"
         "converged_fraction\n";
  for (const auto& r : rows)
    out << to_string(r.method) << ',' << format_g6(r.coverage) << ',' << r.runs << ','
        << format_g6(r.mcc_mean) << ',' << format_g6(r.mcc_std) << ',' << format_g6(r.gmean_mean)
        << ',' << format_g6(r.gmean_std) << ',' << format_g6(r.iterations_mean) << ','
        << format_g6(r.converged_fraction) << '\n';
}

void write_summary(const std::vector<SummaryRow>& rows, const std::filesystem::path& path) {
  std::ofstream f;
  open_or_throw(f, path);
  write_summary(rows, f);
  close_or_throw(f, path);
}

void write_trace(std::span<const double> mae_history, std::ostream& out) {
  out << "iteration,mae\n";
  for (std::size_t k = 0; k < mae_history.size(); ++k)
    out << (k + 1) << ',' << format_g6(mae_history[k]) << '\n';
}

void write_trace(std::span<const double> mae_history, const std::filesystem::path& path) {
  std::ofstream f;
  open_or_throw(f, path);
  write_trace(mae_history, f);
  close_or_throw(f, path);
}

std::vector<double> read_trace(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || line.empty()) continue;
    const auto comma = line.find(',');
    double v = 0.0;
    if (comma == std::string::npos || !parse_double(std::string_view(line).substr(comma + 1), v))
      throw ParseError(line_no, "expected 'iteration,mae'");
    values.push_back(v);
  }
  return values;
}

}  // namespace mplex
