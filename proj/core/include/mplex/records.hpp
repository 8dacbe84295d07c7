#pragma once

#include <cstdint>
#include <string>

#include "mplex/metrics.hpp"
#include "mplex/solver.hpp"

namespace mplex {

/// One (method, coverage, repetition) evaluation.
struct RunRecord {
  Method method = Method::ema;
  double coverage = 0.0;
  std::size_t coverage_index = 0;
  std::size_t rep = 0;
  /// Mask seed; identical for every method of a (coverage, rep) cell.
  std::uint64_t seed = 0;
  std::size_t layers = 0;
  MetricReport metrics;
  std::size_t iterations = 0;
  bool converged = false;
  double wall_seconds = 0.0;
  std::uint64_t mask_digest = 0;
};

/// Mean and population standard deviation per (method, coverage).
struct SummaryRow {
  Method method = Method::ema;
  double coverage = 0.0;
  std::size_t runs = 0;
  double mcc_mean = 0.0;
  double mcc_std = 0.0;
  double gmean_mean = 0.0;
  double gmean_std = 0.0;
  double iterations_mean = 0.0;
  double converged_fraction = 0.0;
};

}  // namespace mplex
