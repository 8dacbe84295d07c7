#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mplex {

/// Dense row-major n x n matrix. Adjacency and probability matrices of a
/// layer are stored in full so row sums are contiguous scans.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }

  T& operator()(std::size_t i, std::size_t j) {
    assert(i < n_ && j < n_);
    return data_[i * n_ + j];
  }
  const T& operator()(std::size_t i, std::size_t j) const {
    assert(i < n_ && j < n_);
    return data_[i * n_ + j];
  }

  /// Writes v at (i, j) and (j, i).
  void set_symmetric(std::size_t i, std::size_t j, T v) {
    (*this)(i, j) = v;
    (*this)(j, i) = v;
  }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  std::span<const T> values() const { return data_; }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using BinaryMatrix = SquareMatrix<std::uint8_t>;
using ProbMatrix = SquareMatrix<double>;

}  // namespace mplex
