#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mplex/multiplex.hpp"

namespace mplex {

enum class SharingMode { shared, per_layer };

/// Observed node set of every layer. An entry (i, j) of layer l is observed
/// iff both i and j are observed in l; unobserved nodes hide all of their
/// incident entries.
class ObservationMask {
 public:
  ObservationMask() = default;
  ObservationMask(std::size_t node_count, std::vector<std::vector<std::size_t>> observed_nodes,
                  SharingMode mode, std::optional<double> coverage = std::nullopt);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t layer_count() const noexcept { return observed_.size(); }
  double coverage() const noexcept { return coverage_; }
  SharingMode sharing_mode() const noexcept { return mode_; }

  /// Sorted observed node indices of layer l.
  const std::vector<std::size_t>& observed_nodes(std::size_t l) const { return observed_.at(l); }
  std::size_t observed_count(std::size_t l) const { return observed_.at(l).size(); }

  /// Fraction of the universe observed in layer l.
  double layer_coverage(std::size_t l) const;

  bool node_observed(std::size_t l, std::size_t i) const { return member_[l][i] != 0; }
  bool entry_observed(std::size_t l, std::size_t i, std::size_t j) const {
    return i != j && member_[l][i] != 0 && member_[l][j] != 0;
  }

  /// Number of unobserved unordered pairs of layer l.
  std::size_t unobserved_pairs(std::size_t l) const;

  /// FNV-1a digest of the observed sets; equal masks give equal digests.
  std::uint64_t digest() const;

  bool operator==(const ObservationMask&) const = default;

 private:
  std::size_t node_count_ = 0;
  std::vector<std::vector<std::size_t>> observed_;
  std::vector<std::vector<std::uint8_t>> member_;
  SharingMode mode_ = SharingMode::per_layer;
  double coverage_ = 0.0;
};

/// round(c * n) with halves rounded up.
std::size_t observed_size(std::size_t node_count, double coverage);

/// Uniform random observed sets of size observed_size(n, c). Throws
/// ParameterError unless 0 < c <= 1 and the set is non-empty.
ObservationMask sample_mask(std::size_t node_count, std::size_t layer_count, double coverage,
                            SharingMode mode, std::uint64_t seed);

/// Ground truth seen through a mask. Unobserved entries carry no value.
class ObservedMultiplex {
 public:
  ObservedMultiplex(ObservationMask mask, std::vector<BinaryMatrix> values);

  const ObservationMask& mask() const noexcept { return mask_; }
  std::size_t node_count() const noexcept { return mask_.node_count(); }
  std::size_t layer_count() const noexcept { return mask_.layer_count(); }

  bool observed(std::size_t l, std::size_t i, std::size_t j) const {
    return mask_.entry_observed(l, i, j);
  }
  /// Observed value, or nullopt for an unobserved entry.
  std::optional<std::uint8_t> entry(std::size_t l, std::size_t i, std::size_t j) const;

  /// Value of an entry known to be observed.
  std::uint8_t value(std::size_t l, std::size_t i, std::size_t j) const { return values_[l](i, j); }

  std::size_t observed_edge_count(std::size_t l) const;
  std::size_t defined_entry_count(std::size_t l) const;

 private:
  ObservationMask mask_;
  std::vector<BinaryMatrix> values_;
};

/// Projects the ground truth onto the mask. Throws InputError when the
/// mask and network dimensions differ.
ObservedMultiplex apply_mask(const MultiplexNetwork& net, const ObservationMask& mask);

}  // namespace mplex
