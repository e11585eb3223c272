// SPDX-License-Identifier: Apache-2.0
#include "expsig/discrete_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "expsig/errors.hpp"
#include "expsig/pairings.hpp"
#include "expsig/rng.hpp"

namespace expsig {

namespace {

constexpr int kMaxDepth = 12;
constexpr double kMaxTupleCount = 1e8;
constexpr double kEigenvalueClipFloor = -1e-10;
constexpr std::uint64_t kStreamPathMc = 3;
constexpr std::int64_t kBlockSamples = 256;

// C(cells + 2n - 1, 2n): number of nondecreasing tuples, evaluated in
// floating point (only compared against the guard).
double tuple_count(double cells, int tuple_len) {
  double r = 1.0;
  for (int i = 1; i <= tuple_len; ++i) {
    r *= (cells + tuple_len - i) / static_cast<double>(i);
  }
  return r;
}

// Compensated accumulator; the tuple sum adds up to 10^8 terms of mixed
// magnitude and the level-2 identity is checked to 1e-12.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

CellCovariance dyadic_c_matrix(const Kernel& k, int depth, double horizon) {
  if (depth < 0) {
    throw ArgumentError("dyadic covariance: depth must be >= 0");
  }
  if (depth > kMaxDepth) {
    throw ResourceError("dyadic covariance: depth " + std::to_string(depth) +
                        " exceeds the cap of " + std::to_string(kMaxDepth));
  }
  if (!std::isfinite(horizon) || !(horizon > 0.0)) {
    throw ArgumentError("dyadic covariance: horizon must be positive");
  }
  const int cells = 1 << depth;
  const double step = horizon / static_cast<double>(cells);
  CellCovariance out;
  out.depth = depth;
  out.horizon = horizon;
  out.c.resize(cells, cells);
  for (int i = 0; i < cells; ++i) {
    for (int j = i; j < cells; ++j) {
      const double v = k.rect_increment_cov(i * step, (i + 1) * step,
                                            j * step, (j + 1) * step);
      if (!std::isfinite(v)) {
        throw NumericError("dyadic covariance: non-finite cell integral");
      }
      out.c(i, j) = v;
      out.c(j, i) = v;  // mirrored, so symmetry is exact
    }
  }
  return out;
}

double discrete_expected_word(const Word& w, const CellCovariance& cov) {
  if (w.empty()) return 1.0;
  if (w.size() % 2 != 0 || !is_even_word(w)) return 0.0;
  const int len = static_cast<int>(w.size());
  const int cells = 1 << cov.depth;
  if (tuple_count(cells, len) > kMaxTupleCount) {
    throw ResourceError(
        "discrete oracle: word \"" + w.to_string() + "\" at depth " +
        std::to_string(cov.depth) + " needs more than 1e8 cell tuples; "
        "use the MC oracle for this word/depth");
  }
  const auto pairings = compatible_pairings(w);
  const auto& c = cov.c;

  // DFS over nondecreasing tuples k_1 <= ... <= k_len, maintaining the
  // repetition weight 1/prod_r (#{k = r})! incrementally: appending a value
  // equal to the previous one extends a run of length `run` and divides the
  // weight by the new run length.
  std::vector<int> tuple(static_cast<std::size_t>(len));
  KahanSum total;
  auto extend = [&](auto&& self, int pos, int min_cell, double weight,
                    int run) -> void {
    if (pos == len) {
      double pairing_sum = 0.0;
      for (const Pairing& pi : pairings) {
        double product = 1.0;
        for (auto [l, j] : pi.pairs) {
          product *= c(tuple[static_cast<std::size_t>(l - 1)],
                       tuple[static_cast<std::size_t>(j - 1)]);
        }
        pairing_sum += product;
      }
      total.add(weight * pairing_sum);
      return;
    }
    for (int cell = min_cell; cell < cells; ++cell) {
      tuple[static_cast<std::size_t>(pos)] = cell;
      const bool extends_run = pos > 0 && cell == min_cell;
      const int new_run = extends_run ? run + 1 : 1;
      self(self, pos + 1, cell, extends_run ? weight / new_run : weight,
           new_run);
    }
  };
  extend(extend, 0, 0, 1.0, 1);
  return total.sum;
}

double diagonal_mass(const CellCovariance& cov) {
  double total = 0.0;
  for (int i = 0; i < cov.c.rows(); ++i) {
    total += std::abs(cov.c(i, i));
  }
  return total;
}

MCEstimate mc_signature_estimate(const Kernel& k, int dimension, int depth,
                                 int truncation, double horizon,
                                 std::int64_t samples, std::uint64_t seed) {
  if (dimension < 1) {
    throw ArgumentError("path oracle: dimension must be >= 1");
  }
  if (truncation < 0) {
    throw ArgumentError("path oracle: truncation must be >= 0");
  }
  if (truncation > 6) {
    throw ResourceError("path oracle: truncation " +
                        std::to_string(truncation) + " exceeds the cap of 6");
  }
  if (samples < 1) {
    throw ArgumentError("path oracle: need at least one sample");
  }

  const CellCovariance cov = dyadic_c_matrix(k, depth, horizon);
  const auto cells = static_cast<Eigen::Index>(cov.c.rows());

  // One factorization shared by all samples and components (components are
  // iid, so one L serves every coordinate).
  Eigen::MatrixXd factor;
  Eigen::LLT<Eigen::MatrixXd> llt(cov.c);
  if (llt.info() == Eigen::Success) {
    factor = llt.matrixL();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov.c);
    if (eig.info() != Eigen::Success) {
      throw NumericError("path oracle: eigendecomposition failed");
    }
    Eigen::VectorXd lambda = eig.eigenvalues();
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
      if (lambda[i] < kEigenvalueClipFloor) {
        throw NumericError(
            "path oracle: increment covariance has eigenvalue " +
            std::to_string(lambda[i]) +
            " below the clip floor; the kernel is not positive semidefinite");
      }
      lambda[i] = std::max(lambda[i], 0.0);
    }
    factor = eig.eigenvectors() * lambda.cwiseSqrt().asDiagonal();
  }

  TensorSeries sum(dimension, truncation);
  TensorSeries sum_sq(dimension, truncation);
  TensorSeries signature = TensorSeries::unit(dimension, truncation);
  std::vector<double> scratch;
  std::vector<double> segment(static_cast<std::size_t>(dimension));
  Eigen::MatrixXd normals;
  Eigen::MatrixXd increments;

  std::int64_t done = 0;
  for (std::uint64_t block = 0; done < samples; ++block) {
    const std::int64_t in_block = std::min(kBlockSamples, samples - done);
    auto rng = substream(seed, kStreamPathMc, block);
    std::normal_distribution<double> gauss(0.0, 1.0);
    normals.resize(cells, static_cast<Eigen::Index>(in_block) * dimension);
    for (Eigen::Index col = 0; col < normals.cols(); ++col) {
      for (Eigen::Index row = 0; row < cells; ++row) {
        normals(row, col) = gauss(rng);
      }
    }
    increments.noalias() = factor * normals;  // one GEMM per block

    for (std::int64_t s = 0; s < in_block; ++s) {
      signature = TensorSeries::unit(dimension, truncation);
      for (Eigen::Index cell = 0; cell < cells; ++cell) {
        for (int comp = 0; comp < dimension; ++comp) {
          segment[static_cast<std::size_t>(comp)] = increments(
              cell, static_cast<Eigen::Index>(s) * dimension + comp);
        }
        signature.concat_segment(segment, scratch);
      }
      for (int level = 0; level <= truncation; ++level) {
        auto src = signature.level(level);
        auto acc = sum.level(level);
        auto acc_sq = sum_sq.level(level);
        for (std::size_t i = 0; i < src.size(); ++i) {
          acc[i] += src[i];
          acc_sq[i] += src[i] * src[i];
        }
      }
    }
    done += in_block;
  }

  MCEstimate out{dimension, truncation,
                 depth,     horizon,
                 seed,      samples,
                 TensorSeries(dimension, truncation),
                 TensorSeries(dimension, truncation)};
  const auto n = static_cast<double>(samples);
  for (int level = 0; level <= truncation; ++level) {
    auto s1 = sum.level(level);
    auto s2 = sum_sq.level(level);
    auto mean = out.mean.level(level);
    auto se = out.std_error.level(level);
    for (std::size_t i = 0; i < s1.size(); ++i) {
      mean[i] = s1[i] / n;
      if (samples > 1) {
        const double var =
            std::max(0.0, (s2[i] - s1[i] * s1[i] / n) / (n - 1.0));
        se[i] = std::sqrt(var / n);
      }
      if (!std::isfinite(mean[i]) || !std::isfinite(se[i])) {
        throw NumericError("path oracle: non-finite estimate");
      }
    }
  }
  return out;
}

}  // namespace expsig
