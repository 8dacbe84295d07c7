#include "mplex/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "mplex/errors.hpp"
#include "mplex/io.hpp"
#include "mplex/metrics.hpp"
#include "mplex/rng.hpp"

namespace mplex {

namespace {

constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kBaselineStream = 2;

struct Cell {
  std::size_t coverage_index;
  std::size_t rep;
};

double round12(double v) { return std::round(v * 1e12) / 1e12; }

std::size_t universe_size(const ExperimentConfig& cfg) {
  if (const auto* net = std::get_if<MultiplexNetwork>(&cfg.dataset)) return net->node_count();
  return std::get<SyntheticSpec>(cfg.dataset).node_count;
}

std::size_t layer_count(const ExperimentConfig& cfg) {
  if (const auto* net = std::get_if<MultiplexNetwork>(&cfg.dataset)) return net->layer_count();
  return std::get<SyntheticSpec>(cfg.dataset).layer_count;
}

std::vector<RunRecord> run_cell(const ExperimentConfig& cfg, const Cell& cell) {
  const MultiplexNetwork net = dataset_for_rep(cfg, cell.rep);
  const double c = cfg.coverage_grid[cell.coverage_index];
  const std::uint64_t seed = cell_seed(cfg.base_seed, cell.coverage_index, cell.rep);
  const auto mask = sample_mask(net.node_count(), net.layer_count(), c, cfg.sharing, seed);
  const auto obs = apply_mask(net, mask);
  const auto budget = hidden_edge_counts(net, mask);

  std::vector<RunRecord> out;
  for (Method m : cfg.methods) {
    SolverConfig sc = cfg.solver;
    sc.method = m;
    sc.seed = derive_seed(seed, {m == Method::rm ? kBaselineStream : kInitStream});
    sc.link_budget = budget;

    const auto t0 = std::chrono::steady_clock::now();
    const Reconstruction rec = run(obs, sc);
    const auto t1 = std::chrono::steady_clock::now();

    RunRecord r;
    r.method = m;
    r.coverage = c;
    r.coverage_index = cell.coverage_index;
    r.rep = cell.rep;
    r.seed = seed;
    r.layers = net.layer_count();
    r.metrics = report(confusion(rec.predicted, net, mask, Scope::pooled).front());
    r.iterations = rec.iterations_used;
    r.converged = rec.converged;
    r.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    r.mask_digest = mask.digest();
    out.push_back(r);
  }
  return out;
}

}  // namespace

std::vector<double> default_coverage_grid() { return parse_coverage_grid("0.1:0.9:0.1"); }

void check_experiment(const ExperimentConfig& cfg) {
  if (cfg.coverage_grid.empty()) throw ParameterError("coverage grid is empty");
  for (double c : cfg.coverage_grid)
    if (!(c > 0.0 && c < 1.0))
      throw ParameterError("coverage values must lie in (0, 1), got " + format_g6(c));
  if (cfg.repetitions < 1) throw ParameterError("repetitions must be at least 1");
  if (cfg.methods.empty()) throw ParameterError("no method selected");
  if (cfg.workers < 1) throw ParameterError("workers must be at least 1");
  check_config(cfg.solver);
  if (const auto* spec = std::get_if<SyntheticSpec>(&cfg.dataset)) check_spec(*spec);
  const bool needs_layers =
      std::find(cfg.methods.begin(), cfg.methods.end(), Method::ema) != cfg.methods.end();
  if (needs_layers && layer_count(cfg) < 2)
    throw PreconditionError("EMA needs a multiplex with at least 2 layers");
}

std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t coverage_index, std::size_t rep) {
  return derive_seed(base_seed, {coverage_index, rep});
}

MultiplexNetwork dataset_for_rep(const ExperimentConfig& cfg, std::size_t rep) {
  if (const auto* net = std::get_if<MultiplexNetwork>(&cfg.dataset)) return *net;
  SyntheticSpec spec = std::get<SyntheticSpec>(cfg.dataset);
  spec.seed = derive_seed(spec.seed, {rep});
  return generate_multiplex(spec);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  check_experiment(cfg);
  ExperimentResult result;

  const std::size_t n = universe_size(cfg);
  std::vector<Cell> cells;
  for (std::size_t ci = 0; ci < cfg.coverage_grid.size(); ++ci) {
    if (observed_size(n, cfg.coverage_grid[ci]) < 1) {
      result.warnings.push_back("coverage " + format_g6(cfg.coverage_grid[ci]) +
                                " observes no node out of " + std::to_string(n) + "; skipped");
      continue;
    }
    for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) cells.push_back({ci, rep});
  }

  std::vector<std::vector<RunRecord>> slots(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < cells.size(); k = next++) {
      try {
        slots[k] = run_cell(cfg, cells[k]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cells.size();
      }
    }
  };

  const std::size_t threads = std::min(cfg.workers, std::max<std::size_t>(cells.size(), 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  for (auto& s : slots)
    for (auto& r : s) result.records.push_back(std::move(r));
  return result;
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  if (records.empty()) throw InputError("cannot summarize an empty record set");
  std::map<std::pair<std::string, double>, std::vector<const RunRecord*>> groups;
  for (const auto& r : records) groups[{std::string(to_string(r.method)), r.coverage}].push_back(&r);

  std::vector<SummaryRow> rows;
  for (const auto& [key, group] : groups) {
    SummaryRow row;
    row.method = group.front()->method;
    row.coverage = key.second;
    row.runs = group.size();
    const auto count = static_cast<double>(group.size());
    double mcc = 0, gm = 0, it = 0, conv = 0;
    for (const auto* r : group) {
      mcc += r->metrics.mcc;
      gm += r->metrics.gmean;
      it += static_cast<double>(r->iterations);
      conv += r->converged ? 1.0 : 0.0;
    }
    row.mcc_mean = mcc / count;
    row.gmean_mean = gm / count;
    row.iterations_mean = it / count;
    row.converged_fraction = conv / count;
    double mcc_sq = 0, gm_sq = 0;
    for (const auto* r : group) {
      mcc_sq += (r->metrics.mcc - row.mcc_mean) * (r->metrics.mcc - row.mcc_mean);
      gm_sq += (r->metrics.gmean - row.gmean_mean) * (r->metrics.gmean - row.gmean_mean);
    }
    row.mcc_std = std::sqrt(mcc_sq / count);
    row.gmean_std = std::sqrt(gm_sq / count);
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> parse_coverage_grid(std::string_view text) {
  auto number = [&](std::string_view s) {
    const std::string str(s);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(str, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != str.size())
      throw ParameterError("invalid coverage value '" + str + "'");
    return v;
  };

  std::vector<double> grid;
  if (text.find(':') != std::string_view::npos) {
    const auto a = text.find(':');
    const auto b = text.find(':', a + 1);
    if (b == std::string_view::npos)
      throw ParameterError("coverage range must be start:stop:step");
    const double start = number(text.substr(0, a));
    const double stop = number(text.substr(a + 1, b - a - 1));
    const double step = number(text.substr(b + 1));
    if (!(step > 0.0) || stop < start) throw ParameterError("invalid coverage range");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t k = 0; k < count; ++k)
      grid.push_back(round12(start + static_cast<double>(k) * step));
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto comma = text.find(',', pos);
      const auto piece = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
      if (!piece.empty()) grid.push_back(number(piece));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  }
  if (grid.empty()) throw ParameterError("coverage grid is empty");
  return grid;
}

std::vector<Method> parse_methods(std::string_view text) {
  std::vector<Method> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto piece = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    if (!piece.empty()) {
      const Method m = parse_method(piece);
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw ParameterError("no method selected");
  return out;
}

void write_manifest(const ExperimentConfig& cfg, std::uint64_t dataset_digest, std::ostream& out,
                    bool include_timestamp) {
  using nlohmann::ordered_json;
  ordered_json j;
  if (const auto* spec = std::get_if<SyntheticSpec>(&cfg.dataset)) {
    ordered_json law;
    if (const auto* p = std::get_if<PoissonLaw>(&spec->degree_law)) {
      law = {{"kind", "poisson"}, {"mean", p->mean}};
    } else {
      const auto& pl = std::get<PowerLaw>(spec->degree_law);
      law = {{"kind", "powerlaw"}, {"exponent", pl.exponent}, {"min_degree", pl.min_degree}};
    }
    j["dataset"] = {{"kind", "synthetic"},
                    {"nodes", spec->node_count},
                    {"layers", spec->layer_count},
                    {"degree_law", law},
                    {"overlap", spec->overlap},
                    {"seed", spec->seed}};
  } else {
    const auto& net = std::get<MultiplexNetwork>(cfg.dataset);
    j["dataset"] = {{"kind", "edge_list"}, {"nodes", net.node_count()}, {"layers", net.layer_count()}};
  }
  char digest[17];
  std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(dataset_digest));
  j["dataset"]["digest"] = digest;
  j["coverage_grid"] = cfg.coverage_grid;
  j["repetitions"] = cfg.repetitions;
  std::vector<std::string> methods;
  for (Method m : cfg.methods) methods.emplace_back(to_string(m));
  j["methods"] = methods;
  j["base_seed"] = cfg.base_seed;
  j["sharing"] = to_string(cfg.sharing);
  j["workers"] = cfg.workers;
  j["solver"] = {{"tolerance", cfg.solver.tolerance},
                 {"max_iterations", cfg.solver.max_iterations},
                 {"aggregate_threshold", cfg.solver.aggregate_threshold},
                 {"binarization", to_string(cfg.solver.binarization)},
                 {"threshold", cfg.solver.threshold},
                 {"edge_estimate_mode", to_string(cfg.solver.edge_estimate_mode)}};
  if (include_timestamp) {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["timestamp"] = buf;
  }
  out << j.dump(2) << '\n';
}

}  // namespace mplex
