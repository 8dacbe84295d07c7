#include "mplex/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mplex/errors.hpp"
#include "mplex/metrics.hpp"
#include "mplex/rng.hpp"

namespace mplex {

namespace {

constexpr std::uint64_t kTieBreakStream = 0x71eb;

void require_shapes(const BeliefState& state, const ObservedMultiplex& obs) {
  if (state.prob.size() != obs.layer_count() || state.degrees.size() != obs.layer_count() ||
      state.edge_estimates.size() != obs.layer_count())
    throw InputError("belief state and observation disagree on the layer count");
  for (const auto& p : state.prob)
    if (p.size() != obs.node_count())
      throw InputError("belief state and observation disagree on the node count");
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::ema: return "ema";
    case Method::em: return "em";
    case Method::rm: return "rm";
  }
  return "?";
}

std::string_view to_string(Binarization b) {
  return b == Binarization::threshold ? "threshold" : "top_k";
}

std::string_view to_string(EdgeEstimateMode m) {
  return m == EdgeEstimateMode::self_consistent ? "self_consistent" : "coverage_scaled";
}

std::string_view to_string(SharingMode m) {
  return m == SharingMode::shared ? "shared" : "per_layer";
}

Method parse_method(std::string_view s) {
  if (s == "ema") return Method::ema;
  if (s == "em") return Method::em;
  if (s == "rm") return Method::rm;
  throw ParameterError("unknown method '" + std::string(s) + "' (expected ema, em or rm)");
}

Binarization parse_binarization(std::string_view s) {
  if (s == "threshold") return Binarization::threshold;
  if (s == "top_k" || s == "topk") return Binarization::top_k;
  throw ParameterError("unknown binarization '" + std::string(s) + "' (expected threshold or top_k)");
}

EdgeEstimateMode parse_edge_estimate_mode(std::string_view s) {
  if (s == "self_consistent") return EdgeEstimateMode::self_consistent;
  if (s == "coverage_scaled") return EdgeEstimateMode::coverage_scaled;
  throw ParameterError("unknown edge estimate mode '" + std::string(s) + "'");
}

SharingMode parse_sharing_mode(std::string_view s) {
  if (s == "shared") return SharingMode::shared;
  if (s == "per_layer") return SharingMode::per_layer;
  throw ParameterError("unknown sharing mode '" + std::string(s) + "' (expected shared or per_layer)");
}

void check_config(const SolverConfig& cfg) {
  if (!(cfg.tolerance > 0.0)) throw ParameterError("tolerance must be positive");
  if (cfg.max_iterations < 1) throw ParameterError("max_iterations must be at least 1");
  if (!(cfg.aggregate_threshold > 0.0 && cfg.aggregate_threshold < 1.0))
    throw ParameterError("aggregate threshold must lie in (0, 1)");
  if (!(cfg.threshold >= 0.0 && cfg.threshold <= 1.0))
    throw ParameterError("binarization threshold must lie in [0, 1]");
}

BeliefState initialize(const ObservedMultiplex& obs, const SolverConfig& cfg) {
  const std::size_t n = obs.node_count();
  const auto upper = static_cast<double>(n);
  Rng rng(cfg.seed);

  BeliefState s;
  s.edge_estimate_mode = cfg.edge_estimate_mode;
  for (std::size_t l = 0; l < obs.layer_count(); ++l) {
    std::vector<double> d(n);
    for (auto& x : d) x = rng.uniform(1.0, upper);

    const double c = obs.mask().layer_coverage(l);
    const double scaled_edges =
        c > 0.0 ? static_cast<double>(obs.observed_edge_count(l)) / (c * c) : 0.0;
    if (cfg.anchor_initial_degrees) {
      const double factor = 2.0 * std::max(1.0, scaled_edges) /
                            std::accumulate(d.begin(), d.end(), 0.0);
      for (auto& x : d) x *= factor;
    }

    ProbMatrix p(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        p.set_symmetric(i, j, obs.observed(l, i, j) ? obs.value(l, i, j) : rng.uniform());

    const double edges = cfg.edge_estimate_mode == EdgeEstimateMode::self_consistent
                             ? 0.5 * std::accumulate(d.begin(), d.end(), 0.0)
                             : scaled_edges;
    s.prob.push_back(std::move(p));
    s.degrees.push_back(std::move(d));
    s.edge_estimates.push_back(edges);
  }
  return s;
}

void e_step(BeliefState& state, const ObservedMultiplex& obs) {
  require_shapes(state, obs);
  const std::size_t n = obs.node_count();
  for (std::size_t l = 0; l < obs.layer_count(); ++l) {
    const double denom = 2.0 * state.edge_estimates[l] - 1.0;
    if (!(denom > 0.0))
      throw SolverError("layer " + std::to_string(l + 1) + ": edge estimate " +
                        std::to_string(state.edge_estimates[l]) +
                        " is degenerate (the E-step needs |E| > 1/2)");
    const auto& d = state.degrees[l];
    auto& p = state.prob[l];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!obs.observed(l, i, j)) p.set_symmetric(i, j, std::min(1.0, d[i] * d[j] / denom));
  }
}

void a_step(BeliefState& state, const ObservedMultiplex& obs, double aggregate_threshold) {
  require_shapes(state, obs);
  const std::size_t layers = obs.layer_count();
  if (layers < 2)
    throw PreconditionError("the aggregation step needs at least 2 layers, got " +
                            std::to_string(layers));
  const std::size_t n = obs.node_count();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double none = 1.0;
      bool hidden = false;
      for (std::size_t l = 0; l < layers; ++l) {
        const bool seen = obs.observed(l, i, j);
        hidden = hidden || !seen;
        none *= 1.0 - (seen ? static_cast<double>(obs.value(l, i, j)) : state.prob[l](i, j));
      }
      if (!hidden) continue;
      const double agg = 1.0 - none;
      const bool accept = agg >= aggregate_threshold && agg > 0.0;
      for (std::size_t l = 0; l < layers; ++l) {
        if (obs.observed(l, i, j)) continue;
        const double v = accept ? std::min(1.0, state.prob[l](i, j) / agg) : 0.0;
        state.prob[l].set_symmetric(i, j, v);
      }
    }
}

void m_step(BeliefState& state) {
  for (std::size_t l = 0; l < state.prob.size(); ++l) {
    const auto& p = state.prob[l];
    auto& d = state.degrees[l];
    d.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      const auto r = p.row(i);
      d[i] = std::accumulate(r.begin(), r.end(), 0.0);
    }
    if (state.edge_estimate_mode == EdgeEstimateMode::self_consistent)
      state.edge_estimates[l] = 0.5 * std::accumulate(d.begin(), d.end(), 0.0);
  }
}

void m_step_exact(BeliefState& state) {
  for (std::size_t l = 0; l < state.prob.size(); ++l) {
    const auto& p = state.prob[l];
    const double edges = state.edge_estimates[l];
    std::vector<double> d(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      const auto r = p.row(i);
      const double s = std::accumulate(r.begin(), r.end(), 0.0);
      const double disc = edges * edges - 2.0 * edges * s + s;
      if (disc < 0.0)
        throw SolverError("layer " + std::to_string(l + 1) + ", node " + std::to_string(i) +
                          ": exact degree update infeasible (expected degree " +
                          std::to_string(s) + " vs |E| = " + std::to_string(edges) +
                          "); the node is a hub incident to over half of the layer's edges");
      d[i] = s * (2.0 * edges - 1.0) / (edges + std::sqrt(disc));
    }
    state.degrees[l] = std::move(d);
  }
}

std::vector<BinaryMatrix> binarize(const BeliefState& state, const ObservedMultiplex& obs,
                                   const SolverConfig& cfg) {
  require_shapes(state, obs);
  const std::size_t n = obs.node_count();
  const std::size_t layers = obs.layer_count();
  if (cfg.binarization == Binarization::top_k && cfg.link_budget.size() != layers)
    throw ParameterError("top_k binarization needs one link budget per layer");

  std::vector<BinaryMatrix> out;
  out.reserve(layers);
  for (std::size_t l = 0; l < layers; ++l) {
    BinaryMatrix b(n, 0);
    const auto& p = state.prob[l];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (obs.observed(l, i, j)) b.set_symmetric(i, j, obs.value(l, i, j));

    if (cfg.binarization == Binarization::threshold) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!obs.observed(l, i, j) && p(i, j) >= cfg.threshold) b.set_symmetric(i, j, 1);
    } else {
      struct Candidate {
        double prob;
        std::uint64_t key;
        std::size_t i, j;
      };
      Rng rng(derive_seed(cfg.seed, {kTieBreakStream, l}));
      std::vector<Candidate> cand;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!obs.observed(l, i, j)) cand.push_back({p(i, j), rng.next(), i, j});
      const std::size_t k = cfg.link_budget[l];
      if (k > cand.size())
        throw ParameterError("layer " + std::to_string(l + 1) + ": link budget " +
                             std::to_string(k) + " exceeds " + std::to_string(cand.size()) +
                             " unobserved entries");
      auto before = [](const Candidate& a, const Candidate& b) {
        return a.prob != b.prob ? a.prob > b.prob : a.key < b.key;
      };
      std::nth_element(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end(),
                       before);
      for (std::size_t r = 0; r < k; ++r) b.set_symmetric(cand[r].i, cand[r].j, 1);
    }
    out.push_back(std::move(b));
  }
  return out;
}

Reconstruction run(const ObservedMultiplex& obs, const SolverConfig& cfg,
                   const StepObserver& observer) {
  check_config(cfg);
  if (cfg.method == Method::rm) return random_baseline(obs, cfg.link_budget, cfg.seed);
  if (cfg.method == Method::ema && obs.layer_count() < 2)
    throw PreconditionError("EMA needs a multiplex with at least 2 layers, got " +
                            std::to_string(obs.layer_count()) + "; use method em instead");

  auto notify = [&](StepKind k, const BeliefState& s) {
    if (observer) observer(k, s);
  };

  Reconstruction rec;
  auto& state = rec.state;
  state = initialize(obs, cfg);
  notify(StepKind::initialize, state);

  std::vector<ProbMatrix> previous = state.prob;
  for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
    e_step(state, obs);
    notify(StepKind::e_step, state);
    if (cfg.method == Method::ema) {
      a_step(state, obs, cfg.aggregate_threshold);
      notify(StepKind::a_step, state);
    }
    m_step(state);
    notify(StepKind::m_step, state);

    const double eps = mae_delta(previous, state.prob, obs.mask());
    state.mae_history.push_back(eps);
    state.iteration = it;
    rec.iterations_used = it;
    if (eps < cfg.tolerance) {
      rec.converged = true;
      break;
    }
    previous = state.prob;
  }
  rec.predicted = binarize(state, obs, cfg);
  return rec;
}

Reconstruction random_baseline(const ObservedMultiplex& obs,
                               const std::vector<std::size_t>& link_budget, std::uint64_t seed) {
  const std::size_t n = obs.node_count();
  const std::size_t layers = obs.layer_count();
  if (link_budget.size() != layers)
    throw ParameterError("random baseline needs one link budget per layer");

  Reconstruction rec;
  rec.converged = true;
  rec.state.edge_estimates.assign(layers, 0.0);
  rec.state.degrees.assign(layers, std::vector<double>(n, 0.0));
  Rng rng(seed);
  for (std::size_t l = 0; l < layers; ++l) {
    BinaryMatrix b(n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> cand;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (obs.observed(l, i, j))
          b.set_symmetric(i, j, obs.value(l, i, j));
        else
          cand.emplace_back(i, j);
      }
    const std::size_t k = link_budget[l];
    if (k > cand.size())
      throw ParameterError("layer " + std::to_string(l + 1) + ": link budget " +
                           std::to_string(k) + " exceeds " + std::to_string(cand.size()) +
                           " unobserved entries");
    for (std::size_t r = 0; r < k; ++r) {
      std::swap(cand[r], cand[r + rng.below(cand.size() - r)]);
      b.set_symmetric(cand[r].first, cand[r].second, 1);
    }
    ProbMatrix p(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) = b(i, j);
    rec.state.prob.push_back(std::move(p));
    rec.predicted.push_back(std::move(b));
  }
  return rec;
}

std::vector<std::size_t> hidden_edge_counts(const MultiplexNetwork& truth,
                                            const ObservationMask& mask) {
  if (mask.layer_count() != truth.layer_count() || mask.node_count() != truth.node_count())
    throw InputError("mask and network dimensions disagree");
  std::vector<std::size_t> counts(truth.layer_count(), 0);
  for (std::size_t l = 0; l < truth.layer_count(); ++l)
    for (auto [i, j] : truth.layer(l).edges())
      if (!mask.entry_observed(l, i, j)) ++counts[l];
  return counts;
}

}  // namespace mplex
