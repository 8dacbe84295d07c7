#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "mplex/matrix.hpp"
#include "mplex/observation.hpp"

namespace mplex {

enum class Method { ema, em, rm };
enum class Binarization { threshold, top_k };

/// How the unobservable complete edge count |E| of a layer is estimated.
///   self_consistent: |E| = sum(d) / 2, recomputed after every M-step.
///   coverage_scaled: |E| = |E_obs| / c^2, fixed at initialization.
enum class EdgeEstimateMode { self_consistent, coverage_scaled };

std::string_view to_string(Method m);
std::string_view to_string(Binarization b);
std::string_view to_string(EdgeEstimateMode m);
std::string_view to_string(SharingMode m);
Method parse_method(std::string_view s);
Binarization parse_binarization(std::string_view s);
EdgeEstimateMode parse_edge_estimate_mode(std::string_view s);
SharingMode parse_sharing_mode(std::string_view s);

struct SolverConfig {
  Method method = Method::ema;
  double tolerance = 1e-5;
  std::size_t max_iterations = 200;
  /// tau_A: an estimated aggregate entry counts as a link when >= this.
  double aggregate_threshold = 0.5;
  Binarization binarization = Binarization::threshold;
  double threshold = 0.5;
  EdgeEstimateMode edge_estimate_mode = EdgeEstimateMode::self_consistent;
  /// Rescale the U(1, N) initial degrees of each layer so that their sum is
  /// 2 * max(1, |E_obs| / c^2). The overall degree scale is a neutral
  /// direction of the self-consistent iteration, so without anchoring the
  /// initial density (about 1/2) persists for hundreds of iterations.
  bool anchor_initial_degrees = true;
  std::uint64_t seed = 0;
  /// Positive predictions per layer; required by top_k and by rm.
  std::vector<std::size_t> link_budget;
};

/// Throws ParameterError on out-of-range fields.
void check_config(const SolverConfig& cfg);

/// Per-layer beliefs: link probabilities q(Z), degree estimates d and edge
/// count estimates |E|. Observed entries of `prob` always hold the observed
/// adjacency.
struct BeliefState {
  std::vector<ProbMatrix> prob;
  std::vector<std::vector<double>> degrees;
  std::vector<double> edge_estimates;
  EdgeEstimateMode edge_estimate_mode = EdgeEstimateMode::self_consistent;
  std::size_t iteration = 0;
  std::vector<double> mae_history;

  bool operator==(const BeliefState&) const = default;
};

struct Reconstruction {
  BeliefState state;
  std::vector<BinaryMatrix> predicted;
  bool converged = false;
  std::size_t iterations_used = 0;
};

/// Degrees ~ U(1, N) (optionally rescaled, see anchor_initial_degrees),
/// unobserved probabilities ~ U(0, 1), observed entries set to the
/// observation. Deterministic in cfg.seed.
BeliefState initialize(const ObservedMultiplex& obs, const SolverConfig& cfg);

/// Configuration-model update of every unobserved entry:
/// p_ij = min(1, d_i d_j / (2|E| - 1)). Throws SolverError when a layer's
/// edge estimate is <= 1/2.
void e_step(BeliefState& state, const ObservedMultiplex& obs);

/// Aggregation step. For every pair, the OR aggregate of the current beliefs
/// (observed values where defined) is thresholded at `aggregate_threshold`;
/// unobserved entries are then rescaled to p / a_hat where the aggregate is
/// accepted and zeroed where it is rejected. Throws PreconditionError on a
/// single-layer input.
void a_step(BeliefState& state, const ObservedMultiplex& obs, double aggregate_threshold);

/// Approximate degree update d_i = sum_j p_ij; in self_consistent mode also
/// |E| = sum(d) / 2.
void m_step(BeliefState& state);

/// Exact degree root d_i = |E| - sqrt(|E|^2 - 2|E| S_i + S_i), S_i = sum_j p_ij.
/// Edge estimates are left unchanged. Throws SolverError when the
/// discriminant is negative (a hub touching over half of the layer's edges).
void m_step_exact(BeliefState& state);

enum class StepKind { initialize, e_step, a_step, m_step };
using StepObserver = std::function<void(StepKind, const BeliefState&)>;

/// Iterates E (-> A for ema) -> M until the mean absolute change of the
/// unobserved probabilities drops below cfg.tolerance or the iteration budget
/// is spent. Non-convergence is reported through Reconstruction::converged.
/// method == rm delegates to random_baseline with cfg.link_budget.
Reconstruction run(const ObservedMultiplex& obs, const SolverConfig& cfg,
                   const StepObserver& observer = {});

/// Binary prediction from a belief state: observed entries copied, the rest
/// thresholded or, for top_k, the link_budget[l] most probable unobserved
/// entries of each layer (ties broken by a seeded random key).
std::vector<BinaryMatrix> binarize(const BeliefState& state, const ObservedMultiplex& obs,
                                   const SolverConfig& cfg);

/// Uniform baseline: exactly link_budget[l] unobserved entries of layer l
/// set to 1, drawn without replacement.
Reconstruction random_baseline(const ObservedMultiplex& obs,
                               const std::vector<std::size_t>& link_budget, std::uint64_t seed);

/// Per-layer count of true links hidden by the mask.
std::vector<std::size_t> hidden_edge_counts(const MultiplexNetwork& truth,
                                            const ObservationMask& mask);

}  // namespace mplex
