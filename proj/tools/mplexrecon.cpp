// mplexrecon: statistics, reconstruction, experiments and synthetic
// generation for multiplex networks.

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mplex/errors.hpp"
#include "mplex/generator.hpp"
#include "mplex/harness.hpp"
#include "mplex/io.hpp"
#include "mplex/metrics.hpp"
#include "mplex/multiplex.hpp"
#include "mplex/observation.hpp"
#include "mplex/rng.hpp"
#include "mplex/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;

mplex::ParseResult load_network(const std::string& path) {
  if (path == "-") {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    return mplex::parse_multiplex(buf);
  }
  std::ifstream f(path);
  if (!f) throw mplex::InputError("cannot open '" + path + "'");
  return mplex::parse_multiplex(f);
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

double parse_number(std::string_view s, const char* what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw mplex::ParameterError(std::string("invalid ") + what + " '" + std::string(s) + "'");
  return v;
}

// "poisson:MEAN" or "powerlaw:EXPONENT[:MIN_DEGREE]".
mplex::DegreeLaw parse_degree_law(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts[0] == "poisson" && parts.size() == 2)
    return mplex::PoissonLaw{parse_number(parts[1], "poisson mean")};
  if (parts[0] == "powerlaw" && (parts.size() == 2 || parts.size() == 3)) {
    mplex::PowerLaw law{parse_number(parts[1], "power-law exponent"), 1.0};
    if (parts.size() == 3) law.min_degree = parse_number(parts[2], "power-law min degree");
    return law;
  }
  throw mplex::ParameterError("degree law must be poisson:MEAN or powerlaw:EXP[:MIN], got '" +
                              std::string(text) + "'");
}

mplex::SyntheticSpec spec_from_json(const ordered_json& j) {
  mplex::SyntheticSpec spec;
  spec.node_count = j.value("nodes", spec.node_count);
  spec.layer_count = j.value("layers", spec.layer_count);
  spec.overlap = j.value("overlap", spec.overlap);
  spec.seed = j.value("seed", spec.seed);
  if (j.contains("degree_law")) {
    const auto& law = j["degree_law"];
    if (law.is_string()) {
      spec.degree_law = parse_degree_law(law.get<std::string>());
    } else {
      const auto kind = law.value("kind", std::string("poisson"));
      if (kind == "poisson")
        spec.degree_law = mplex::PoissonLaw{law.value("mean", 3.0)};
      else if (kind == "powerlaw")
        spec.degree_law = mplex::PowerLaw{law.value("exponent", 2.5), law.value("min_degree", 1.0)};
      else
        throw mplex::ParameterError("unknown degree law kind '" + kind + "'");
    }
  }
  return spec;
}

mplex::SyntheticSpec load_spec(const std::string& arg) {
  try {
    if (!arg.empty() && arg.front() == '{') return spec_from_json(ordered_json::parse(arg));
    std::ifstream f(arg);
    if (!f) throw mplex::InputError("cannot open '" + arg + "'");
    return spec_from_json(ordered_json::parse(f));
  } catch (const nlohmann::json::exception& e) {
    throw mplex::InputError(std::string("synthetic spec: ") + e.what());
  }
}

std::string file_token(const std::string& name) {
  std::string out;
  for (char ch : name)
    out += std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' ? ch : '_';
  return out;
}

ordered_json metrics_json(const mplex::MetricReport& r) {
  return {{"mcc", r.mcc},
          {"gmean", r.gmean},
          {"recall", r.recall},
          {"specificity", r.specificity},
          {"precision", r.precision},
          {"tp", r.counts.tp},
          {"tn", r.counts.tn},
          {"fp", r.counts.fp},
          {"fn", r.counts.fn}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw mplex::Error("cannot open '" + path.string() + "' for writing");
  f << text;
  if (!f.flush()) throw mplex::Error("write to '" + path.string() + "' failed");
}

// ---- stats ----

struct StatsArgs {
  std::string input;
};

int cmd_stats(const StatsArgs& a) {
  auto parsed = load_network(a.input);
  print_warnings(parsed.warnings);
  const auto& net = parsed.network;
  std::printf("%-16s %7s %7s %12s %8s %8s %6s %6s\n", "layer", "nodes", "edges", "density_e-3",
              "avg_deg", "mean_cc", "gcc", "cov");
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    const auto name = net.layer_name(l);
    if (net.layer(l).edge_count() == 0) {
      std::printf("%-16s %7s\n", name.c_str(), "empty");
      continue;
    }
    const auto s = mplex::layer_stats(net.layer(l));
    std::printf("%-16s %7zu %7zu %12.2f %8.2f %8.2f %6zu %6.2f\n", name.c_str(), s.active_nodes,
                s.edges, s.density * 1e3, s.avg_degree, s.mean_cc_size, s.gcc_size,
                s.cov_cc_size);
  }
  return 0;
}

// ---- reconstruct ----

struct ReconstructArgs {
  std::string input;
  double coverage = 0.5;
  std::string method = "ema";
  std::uint64_t seed = 0;
  double tol = mplex::SolverConfig{}.tolerance;
  std::size_t max_iters = mplex::SolverConfig{}.max_iterations;
  double aggregate_threshold = mplex::SolverConfig{}.aggregate_threshold;
  std::string sharing = "per_layer";
  std::string binarize = "top_k";
  double threshold = mplex::SolverConfig{}.threshold;
  std::string edge_estimate = "self_consistent";
  std::string out_prefix = "recon";
  std::string trace;
};

int cmd_reconstruct(const ReconstructArgs& a) {
  auto parsed = load_network(a.input);
  print_warnings(parsed.warnings);
  const auto& net = parsed.network;

  mplex::SolverConfig cfg;
  cfg.method = mplex::parse_method(a.method);
  cfg.tolerance = a.tol;
  cfg.max_iterations = a.max_iters;
  cfg.aggregate_threshold = a.aggregate_threshold;
  cfg.binarization = mplex::parse_binarization(a.binarize);
  cfg.threshold = a.threshold;
  cfg.edge_estimate_mode = mplex::parse_edge_estimate_mode(a.edge_estimate);
  cfg.seed = mplex::derive_seed(a.seed, {1});
  mplex::check_config(cfg);
  if (cfg.method == mplex::Method::ema && net.layer_count() < 2)
    throw mplex::PreconditionError("EMA needs a multiplex with at least 2 layers, got " +
                                   std::to_string(net.layer_count()));

  const auto sharing = mplex::parse_sharing_mode(a.sharing);
  const auto mask = mplex::sample_mask(net.node_count(), net.layer_count(), a.coverage, sharing,
                                       mplex::derive_seed(a.seed, {0}));
  const auto obs = mplex::apply_mask(net, mask);
  cfg.link_budget = mplex::hidden_edge_counts(net, mask);

  const auto rec = mplex::run(obs, cfg);

  std::size_t unobserved = 0;
  for (std::size_t l = 0; l < net.layer_count(); ++l) unobserved += mask.unobserved_pairs(l);

  ordered_json j;
  j["method"] = a.method;
  j["coverage"] = a.coverage;
  j["seed"] = a.seed;
  j["sharing"] = a.sharing;
  j["binarization"] = a.binarize;
  j["tolerance"] = a.tol;
  j["max_iterations"] = a.max_iters;
  j["nodes"] = net.node_count();
  j["layers"] = net.layer_count();
  j["converged"] = rec.converged;
  j["iterations"] = rec.iterations_used;
  j["unobserved_entries"] = unobserved;
  mplex::MetricReport pooled;
  if (unobserved == 0) {
    j["metrics"] = ordered_json::object();
    j["note"] = "no unobserved entries";
  } else {
    pooled = mplex::report(mplex::confusion(rec.predicted, net, mask)[0]);
    j["metrics"] = metrics_json(pooled);
    ordered_json per_layer = ordered_json::array();
    const auto counts = mplex::confusion(rec.predicted, net, mask, mplex::Scope::per_layer);
    for (std::size_t l = 0; l < counts.size(); ++l) {
      auto m = metrics_json(mplex::report(counts[l]));
      m["layer"] = net.layer_name(l);
      per_layer.push_back(std::move(m));
    }
    j["per_layer"] = std::move(per_layer);
  }

  const fs::path prefix(a.out_prefix);
  if (prefix.has_parent_path()) fs::create_directories(prefix.parent_path());
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    std::ostringstream os;
    mplex::write_layer_edges(rec.predicted[l], net.layer_name(l), net.node_labels(), os);
    write_text(a.out_prefix + "." + file_token(net.layer_name(l)) + ".edges", os.str());
  }
  write_text(a.out_prefix + ".metrics.json", j.dump(2) + "\n");
  if (!a.trace.empty()) mplex::write_trace(rec.state.mae_history, fs::path(a.trace));

  if (unobserved == 0)
    std::printf("no unobserved entries; iterations=%zu converged=%s\n", rec.iterations_used,
                rec.converged ? "true" : "false");
  else
    std::printf("mcc=%s gmean=%s iterations=%zu converged=%s\n",
                mplex::format_g6(pooled.mcc).c_str(), mplex::format_g6(pooled.gmean).c_str(),
                rec.iterations_used, rec.converged ? "true" : "false");
  return 0;
}

// ---- experiment ----

struct ExperimentArgs {
  std::string input;
  std::string synthetic_spec;
  std::string coverages = "0.1:0.9:0.1";
  std::size_t reps = 50;
  std::string methods = "ema,em,rm";
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::string out = "experiment";
  double tol = mplex::SolverConfig{}.tolerance;
  std::size_t max_iters = mplex::SolverConfig{}.max_iterations;
  double aggregate_threshold = mplex::SolverConfig{}.aggregate_threshold;
  std::string sharing = "per_layer";
  std::string binarize = "top_k";
  double threshold = mplex::SolverConfig{}.threshold;
  std::string edge_estimate = "self_consistent";
};

int cmd_experiment(const ExperimentArgs& a) {
  mplex::ExperimentConfig cfg;
  std::uint64_t digest = 0;
  if (!a.input.empty()) {
    auto parsed = load_network(a.input);
    print_warnings(parsed.warnings);
    digest = mplex::network_digest(parsed.network);
    cfg.dataset = std::move(parsed.network);
  } else {
    const auto spec = load_spec(a.synthetic_spec);
    mplex::check_spec(spec);
    digest = mplex::network_digest(mplex::generate_multiplex(spec));
    cfg.dataset = spec;
  }
  cfg.coverage_grid = mplex::parse_coverage_grid(a.coverages);
  cfg.repetitions = a.reps;
  cfg.methods = mplex::parse_methods(a.methods);
  cfg.base_seed = a.seed;
  cfg.workers = a.workers;
  cfg.sharing = mplex::parse_sharing_mode(a.sharing);
  cfg.solver.tolerance = a.tol;
  cfg.solver.max_iterations = a.max_iters;
  cfg.solver.aggregate_threshold = a.aggregate_threshold;
  cfg.solver.binarization = mplex::parse_binarization(a.binarize);
  cfg.solver.threshold = a.threshold;
  cfg.solver.edge_estimate_mode = mplex::parse_edge_estimate_mode(a.edge_estimate);
  mplex::check_config(cfg.solver);
  mplex::check_experiment(cfg);

  const auto result = mplex::run_experiment(cfg);
  print_warnings(result.warnings);
  if (result.records.empty()) throw mplex::InputError("no coverage value observes any node");

  const fs::path dir(a.out);
  fs::create_directories(dir);
  mplex::write_results(result.records, dir / "runs.csv");
  mplex::write_summary(mplex::summarize(result.records), dir / "summary.csv");
  std::ostringstream manifest;
  mplex::write_manifest(cfg, digest, manifest);
  write_text(dir / "manifest.json", manifest.str());
  std::printf("%zu runs written to %s\n", result.records.size(), dir.string().c_str());
  return 0;
}

// ---- generate ----

struct GenerateArgs {
  std::size_t nodes = 100;
  std::size_t layers = 2;
  std::string degree_law = "poisson:3";
  double overlap = 0.0;
  std::uint64_t seed = 0;
  std::string out = "-";
};

int cmd_generate(const GenerateArgs& a) {
  mplex::SyntheticSpec spec{a.nodes, a.layers, parse_degree_law(a.degree_law), a.overlap, a.seed};
  const auto net = mplex::generate_multiplex(spec);
  std::ostringstream os;
  mplex::write_edge_list(net, os);
  if (a.out == "-")
    std::cout << os.str();
  else
    write_text(a.out, os.str());
  return 0;
}

void add_solver_flags(CLI::App* sub, double& tol, std::size_t& max_iters, double& agg,
                      std::string& sharing, std::string& binarize, double& threshold,
                      std::string& edge_estimate) {
  sub->add_option("--tol", tol, "Convergence tolerance on the mean absolute change")
      ->capture_default_str();
  sub->add_option("--max-iters", max_iters, "Iteration budget")->capture_default_str();
  sub->add_option("--aggregate-threshold", agg, "Aggregate acceptance threshold in (0, 1)")
      ->capture_default_str();
  sub->add_option("--sharing", sharing, "Observation mask mode: per_layer or shared")
      ->capture_default_str();
  sub->add_option("--binarize", binarize,
                  "threshold, or top_k (as many links as are hidden per layer)")
      ->capture_default_str();
  sub->add_option("--threshold", threshold, "Probability threshold for --binarize threshold")
      ->capture_default_str();
  sub->add_option("--edge-estimate", edge_estimate,
                  "Edge count estimate: self_consistent or coverage_scaled")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplex network reconstruction from partial observations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "mplexrecon 0.1.0");

  StatsArgs stats;
  auto* s = app.add_subcommand("stats", "Per-layer statistics table");
  s->add_option("input,--input", stats.input, "Edge list path, or - for stdin")->required();

  ReconstructArgs rec;
  auto* r = app.add_subcommand("reconstruct", "Hide nodes at random and reconstruct the network");
  r->add_option("--input", rec.input, "Edge list path, or - for stdin")->required();
  r->add_option("--coverage", rec.coverage, "Fraction of observed nodes in (0, 1]")
      ->capture_default_str();
  r->add_option("--method", rec.method, "ema, em or rm")->capture_default_str();
  r->add_option("--seed", rec.seed, "Seed for the mask and the solver")->capture_default_str();
  add_solver_flags(r, rec.tol, rec.max_iters, rec.aggregate_threshold, rec.sharing, rec.binarize,
                   rec.threshold, rec.edge_estimate);
  r->add_option("--out-prefix", rec.out_prefix,
                "Output prefix: PREFIX.<layer>.edges and PREFIX.metrics.json")
      ->capture_default_str();
  r->add_option("--trace", rec.trace, "Write the convergence trace CSV here");

  ExperimentArgs exp;
  auto* e = app.add_subcommand("experiment", "Coverage sweep with repeated paired runs");
  auto* in_opt = e->add_option("--input", exp.input, "Edge list path, or - for stdin");
  auto* spec_opt = e->add_option("--synthetic-spec", exp.synthetic_spec,
                                 "Synthetic family as a JSON file or inline JSON object");
  in_opt->excludes(spec_opt);
  spec_opt->excludes(in_opt);
  e->add_option("--coverages", exp.coverages, "start:stop:step or comma list")
      ->capture_default_str();
  e->add_option("--reps", exp.reps, "Repetitions per coverage")->capture_default_str();
  e->add_option("--methods", exp.methods, "Comma list of ema, em, rm")->capture_default_str();
  e->add_option("--seed", exp.seed, "Base seed")->capture_default_str();
  e->add_option("--workers", exp.workers, "Worker threads")->capture_default_str();
  e->add_option("--out", exp.out, "Output directory")->capture_default_str();
  add_solver_flags(e, exp.tol, exp.max_iters, exp.aggregate_threshold, exp.sharing, exp.binarize,
                   exp.threshold, exp.edge_estimate);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a synthetic multiplex edge list");
  g->add_option("--nodes", gen.nodes, "Node count")->capture_default_str();
  g->add_option("--layers", gen.layers, "Layer count")->capture_default_str();
  g->add_option("--degree-law", gen.degree_law, "poisson:MEAN or powerlaw:EXP[:MIN]")
      ->capture_default_str();
  g->add_option("--overlap", gen.overlap, "Probability of copying each layer-1 edge")
      ->capture_default_str();
  g->add_option("--seed", gen.seed, "Seed")->capture_default_str();
  g->add_option("--out", gen.out, "Output path, or - for stdout")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*s) return cmd_stats(stats);
    if (*r) return cmd_reconstruct(rec);
    if (*e) {
      if (exp.input.empty() && exp.synthetic_spec.empty())
        throw mplex::InputError("experiment needs --input or --synthetic-spec");
      return cmd_experiment(exp);
    }
    return cmd_generate(gen);
  } catch (const mplex::SolverError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitInput;
  }
}
