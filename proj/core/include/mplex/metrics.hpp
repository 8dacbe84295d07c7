#pragma once

#include <cstdint>
#include <vector>

#include "mplex/matrix.hpp"
#include "mplex/multiplex.hpp"
#include "mplex/observation.hpp"

namespace mplex {

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const noexcept { return tp + tn + fp + fn; }
  ConfusionCounts& operator+=(const ConfusionCounts& o) noexcept {
    tp += o.tp;
    tn += o.tn;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  bool operator==(const ConfusionCounts&) const = default;
};

struct MetricReport {
  double mcc = 0.0;
  double gmean = 0.0;
  double recall = 0.0;
  double specificity = 0.0;
  double precision = 0.0;
  ConfusionCounts counts;
};

enum class Scope { pooled, per_layer };

/// Confusion counts over unobserved entries (i < j) only. Returns one entry
/// per layer for per_layer scope, a single summed entry for pooled scope.
std::vector<ConfusionCounts> confusion(const std::vector<BinaryMatrix>& predicted,
                                       const MultiplexNetwork& truth, const ObservationMask& mask,
                                       Scope scope = Scope::pooled);

/// Matthews correlation; 0 when any marginal is empty.
double mcc(const ConfusionCounts& c);

/// sqrt(recall * specificity); a ratio with a zero denominator counts as 0.
double gmean(const ConfusionCounts& c);

MetricReport report(const ConfusionCounts& c);

/// Mean |next - prev| over the unobserved entries (i < j) of all layers;
/// 0 when nothing is unobserved.
double mae_delta(const std::vector<ProbMatrix>& prev, const std::vector<ProbMatrix>& next,
                 const ObservationMask& mask);

}  // namespace mplex
