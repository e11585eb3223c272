// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "expsig/word.hpp"

namespace expsig {

/// Refuse tensor allocations beyond this many coefficients unless the caller
/// raises the cap explicitly.
inline constexpr std::size_t kDefaultCoefficientCap = 10'000'000;

/// Element of the tensor algebra over R^d truncated at level N. One dense
/// array per level; level k holds d^k coefficients addressed by
/// Word::flat_index.
class TensorSeries {
public:
  TensorSeries(int dimension, int truncation,
               std::size_t coefficient_cap = kDefaultCoefficientCap);

  /// Multiplicative unit: 1 at level 0, zero elsewhere.
  static TensorSeries unit(int dimension, int truncation);

  int dimension() const noexcept { return dimension_; }
  int truncation() const noexcept { return truncation_; }

  std::span<double> level(int k);
  std::span<const double> level(int k) const;

  double scalar() const { return levels_[0][0]; }
  void set_scalar(double v) { levels_[0][0] = v; }

  /// Coefficient at word w; w no longer than the truncation.
  double coefficient(const Word& w) const;

  /// Right-multiplies this series by exp(v) for a level-1 segment v, in
  /// place: the polyline building block. scratch is reused across calls and
  /// grows to hold all levels of exp(v) - 1.
  void concat_segment(std::span<const double> v, std::vector<double>& scratch);

private:
  int dimension_ = 1;
  int truncation_ = 0;
  std::vector<std::vector<double>> levels_;
};

/// Truncated tensor product (graded convolution) of a and b. Both operands
/// must share dimension and truncation.
TensorSeries tensor_mul(const TensorSeries& a, const TensorSeries& b);

/// exp(v) = 1 + v + v^{x2}/2! + ... truncated at the given level. v must be
/// finite.
TensorSeries tensor_exp(std::span<const double> v, int truncation,
                        std::size_t coefficient_cap = kDefaultCoefficientCap);

/// Signature of the piecewise linear path with the given per-segment
/// increment vectors (each of length `dimension`).
TensorSeries signature_of_piecewise_linear(
    std::span<const std::vector<double>> increments, int dimension,
    int truncation);

/// Coefficient of s at word w; throws when w is longer than the truncation or
/// uses letters outside the alphabet.
double project_word(const TensorSeries& s, const Word& w);

}  // namespace expsig
