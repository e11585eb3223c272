// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "expsig/kernels.hpp"
#include "expsig/tensor_series.hpp"
#include "expsig/word.hpp"

namespace expsig {

/// Covariance of the 2^m dyadic increments of one process component on
/// [0, T]: c(i, j) = int int f over cell [t_{i-1}, t_i] x [t_{j-1}, t_j]
/// with t_k = k T / 2^m (0-based storage). Symmetric positive semidefinite
/// Gram matrix; sum of all entries equals R(T, T).
struct CellCovariance {
  int depth = 0;
  double horizon = 0.0;
  Eigen::MatrixXd c;
};

/// Increment covariance at dyadic depth m, one rectangle integral per cell;
/// closed-form covariance increments where the kernel has one. m <= 12
/// (4096^2 matrix guard).
CellCovariance dyadic_c_matrix(const Kernel& k, int depth, double horizon);

/// Exact expected-signature coefficient of the dyadic interpolation W(m) at
/// word w: sum over equal-letter matchings pi and nondecreasing cell tuples
/// 1 <= k_1 <= ... <= k_2n <= 2^m of the tuple's repetition weight
/// 1/prod_r (#{k = r})! times prod_{(l,j) in pi} c(k_l, k_j). Deterministic,
/// no sampling. Odd and non-even words give exactly 0; the empty word 1.
/// Refuses runs with more than 10^8 tuples (use the MC oracle instead).
double discrete_expected_word(const Word& w, const CellCovariance& c);

/// sum_k |c(k, k)|: total diagonal mass, the quantity whose decay in m makes
/// the repeated-cell terms vanish in the limit.
double diagonal_mass(const CellCovariance& c);

/// Per-word sample mean and stderr of the truncated signature of the dyadic
/// interpolation, estimated from `samples` Gaussian paths.
struct MCEstimate {
  int dimension = 0;
  int truncation = 0;
  int depth = 0;
  double horizon = 0.0;
  std::uint64_t seed = 0;
  std::int64_t samples = 0;
  TensorSeries mean;
  TensorSeries std_error;
};

/// MC oracle: factor c = L L^T (Cholesky; eigenvalue-clipping fallback for
/// near-singular c, eigenvalues below -1e-10 are a hard numeric error), draw
/// d iid standard normal vectors per sample, map through L to increments,
/// accumulate signature coefficients streaming (paths are never stored).
/// Samples are drawn in blocks with per-block substreams and combined in
/// block order, so a fixed seed gives a reproducible estimate. N <= 6.
MCEstimate mc_signature_estimate(const Kernel& k, int dimension, int depth,
                                 int truncation, double horizon,
                                 std::int64_t samples, std::uint64_t seed);

}  // namespace expsig
