#include "mplex/metrics.hpp"

#include <cmath>

#include "mplex/errors.hpp"

namespace mplex {

namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::vector<ConfusionCounts> confusion(const std::vector<BinaryMatrix>& predicted,
                                       const MultiplexNetwork& truth, const ObservationMask& mask,
                                       Scope scope) {
  const std::size_t layers = truth.layer_count();
  const std::size_t n = truth.node_count();
  if (predicted.size() != layers || mask.layer_count() != layers || mask.node_count() != n)
    throw InputError("confusion: predicted, truth and mask dimensions disagree");

  std::vector<ConfusionCounts> per_layer(layers);
  for (std::size_t l = 0; l < layers; ++l) {
    if (predicted[l].size() != n) throw InputError("confusion: predicted matrix has wrong size");
    const auto& t = truth.layer(l).adjacency();
    auto& c = per_layer[l];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (mask.entry_observed(l, i, j)) continue;
        const bool p = predicted[l](i, j) != 0;
        const bool y = t(i, j) != 0;
        if (p && y)
          ++c.tp;
        else if (p)
          ++c.fp;
        else if (y)
          ++c.fn;
        else
          ++c.tn;
      }
  }
  if (scope == Scope::per_layer) return per_layer;
  ConfusionCounts pooled;
  for (const auto& c : per_layer) pooled += c;
  return {pooled};
}

double mcc(const ConfusionCounts& c) {
  const auto tp = static_cast<double>(c.tp);
  const auto tn = static_cast<double>(c.tn);
  const auto fp = static_cast<double>(c.fp);
  const auto fn = static_cast<double>(c.fn);
  const double a = tp + fp, b = tp + fn, d = tn + fp, e = tn + fn;
  if (a == 0.0 || b == 0.0 || d == 0.0 || e == 0.0) return 0.0;
  // Square roots taken pairwise so the product cannot overflow.
  return (tp * tn - fp * fn) / (std::sqrt(a * b) * std::sqrt(d * e));
}

double gmean(const ConfusionCounts& c) {
  return std::sqrt(ratio(c.tp, c.tp + c.fn) * ratio(c.tn, c.tn + c.fp));
}

MetricReport report(const ConfusionCounts& c) {
  MetricReport r;
  r.counts = c;
  r.mcc = mcc(c);
  r.gmean = gmean(c);
  r.recall = ratio(c.tp, c.tp + c.fn);
  r.specificity = ratio(c.tn, c.tn + c.fp);
  r.precision = ratio(c.tp, c.tp + c.fp);
  return r;
}

double mae_delta(const std::vector<ProbMatrix>& prev, const std::vector<ProbMatrix>& next,
                 const ObservationMask& mask) {
  if (prev.size() != next.size() || prev.size() != mask.layer_count())
    throw InputError("mae_delta: layer counts disagree");
  double sum = 0.0;
  std::uint64_t count = 0;
  for (std::size_t l = 0; l < prev.size(); ++l) {
    const std::size_t n = prev[l].size();
    if (next[l].size() != n || mask.node_count() != n)
      throw InputError("mae_delta: matrix sizes disagree");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (mask.entry_observed(l, i, j)) continue;
        sum += std::abs(next[l](i, j) - prev[l](i, j));
        ++count;
      }
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

}  // namespace mplex
