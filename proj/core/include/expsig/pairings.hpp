// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "expsig/word.hpp"

namespace expsig {

/// Perfect matching of {1, ..., 2n}: n pairs (l, j), each with l < j, listed
/// in increasing order of l. Indices are 1-based positions.
struct Pairing {
  std::vector<std::pair<int, int>> pairs;

  std::size_t size() const noexcept { return pairs.size(); }
  friend bool operator==(const Pairing&, const Pairing&) = default;
};

/// All perfect matchings of {1, ..., 2n}, produced by recursively pairing the
/// smallest unmatched element with every larger unmatched partner in
/// increasing order. Count is (2n-1)!!. Refuses 2n > 16.
std::vector<Pairing> enumerate_pairings(int n);

/// The nearest-neighbour matching {(1,2), (3,4), ..., (2n-1, 2n)}.
Pairing canonical_pairing(int n);

/// True when every letter occurs an even number of times in w (vacuously true
/// for the empty word).
bool is_even_word(const Word& w);

/// The matchings of positions of w that pair equal letters only. |w| must be
/// even; the empty word yields the single empty matching.
std::vector<Pairing> compatible_pairings(const Word& w);

/// E[X_1 ... X_k] for a centered jointly Gaussian vector with the given
/// covariance: the sum over perfect matchings of products of pair
/// covariances. Odd k gives 0; k = 0 gives 1. cov must be symmetric within
/// 1e-12.
double wick_moment(const Eigen::MatrixXd& cov);

}  // namespace expsig
