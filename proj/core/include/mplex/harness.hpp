#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mplex/generator.hpp"
#include "mplex/multiplex.hpp"
#include "mplex/observation.hpp"
#include "mplex/records.hpp"
#include "mplex/solver.hpp"

namespace mplex {

std::vector<double> default_coverage_grid();

struct ExperimentConfig {
  /// A fixed network, or a synthetic family redrawn for every repetition
  /// (repetition r uses the spec seed derived from (spec.seed, r)).
  std::variant<MultiplexNetwork, SyntheticSpec> dataset;
  std::vector<double> coverage_grid = default_coverage_grid();
  std::size_t repetitions = 50;
  std::vector<Method> methods = {Method::ema, Method::em, Method::rm};
  /// Template; method, seed and link budget are set per run.
  SolverConfig solver;
  std::uint64_t base_seed = 0;
  SharingMode sharing = SharingMode::per_layer;
  std::size_t workers = 1;
};

struct ExperimentResult {
  std::vector<RunRecord> records;
  std::vector<std::string> warnings;
};

/// Throws ParameterError on an invalid configuration.
void check_experiment(const ExperimentConfig& cfg);

/// Mask seed of a (coverage index, repetition) cell.
std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t coverage_index, std::size_t rep);

/// Network a repetition is evaluated on.
MultiplexNetwork dataset_for_rep(const ExperimentConfig& cfg, std::size_t rep);

/// Every method of a (coverage, rep) cell is evaluated on the same mask and
/// scored on pooled confusion counts over the unobserved entries. The random
/// baseline (and top_k binarization) is granted the true number of hidden
/// links per layer. Records come back sorted by (coverage index, rep,
/// method order in cfg.methods) whatever the worker count. Coverages that
/// observe no node are skipped with a warning.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Per (method, coverage) mean and population standard deviation, ordered by
/// method name then coverage. Throws InputError on an empty input.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

/// "start:stop:step" (inclusive of stop up to rounding) or "a,b,c".
std::vector<double> parse_coverage_grid(std::string_view text);

std::vector<Method> parse_methods(std::string_view text);

/// JSON echo of the configuration plus the dataset digest. The timestamp is
/// the only field that varies between identical invocations.
void write_manifest(const ExperimentConfig& cfg, std::uint64_t dataset_digest, std::ostream& out,
                    bool include_timestamp = true);

}  // namespace mplex
