// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "expsig/kernels.hpp"
#include "expsig/quadrature.hpp"
#include "expsig/word.hpp"

namespace expsig {

/// One expected-signature coefficient. Entries exist exactly for even words
/// (every letter occurring an even number of times); all other coefficients
/// are identically zero and never estimated.
struct TermEntry {
  Word word;
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t pairing_count = 0;  // |compatible_pairings(word)|
};

struct ExpectedSignatureReport {
  int dimension = 0;
  int truncation = 0;
  double horizon = 0.0;
  std::string kernel;            // Kernel::describe() of the source process
  QuadratureSettings settings;   // echo of the request
  std::vector<TermEntry> terms;  // deterministic order: by level, then word
};

/// E[coefficient of w in the signature of W over [0, T]] for a d-dimensional
/// process with iid components driven by kernel k: the sum over equal-letter
/// matchings of the simplex integral of prod f(u_j, u_l). Odd-length and
/// non-even words return exactly {0, 0} without touching the quadrature; the
/// empty word returns {1, 0}. Pairing stderrs combine root-sum-square
/// (independent substreams per matching). The MC streams are derived from
/// (settings.seed, letter pattern of w), so words equal up to letter renaming
/// give bit-identical results.
QuadratureResult expected_word_coefficient(const Word& w, const Kernel& k,
                                           double horizon,
                                           const QuadratureSettings& settings);

/// Full report over every even word of length <= N (empty word included,
/// value 1). Guards: d <= 4 and N <= 8. Words equal up to letter renaming
/// share one quadrature result, since components are iid copies.
ExpectedSignatureReport expected_signature(const Kernel& k, int dimension,
                                           int truncation, double horizon,
                                           const QuadratureSettings& settings);

/// Exact expected signature of d-dimensional Brownian motion over [0, T]:
/// level 2n is (T/2)^n/n! (sum_i e_i (x) e_i)^n, so a word's coefficient is
/// (T/2)^n/n! when it is a chain of n adjacent equal-letter pairs and 0
/// otherwise. Same report shape and guards as expected_signature.
ExpectedSignatureReport brownian_expected_signature(int dimension,
                                                    int truncation,
                                                    double horizon);

/// The canonical-pairing term I_n on [0, 1] for fBm with Hurst index
/// H in (1/2, 1): deterministic for n <= 3 via the reduced integral.
QuadratureResult canonical_In(int n, double hurst,
                              const QuadratureSettings& settings);

/// (1 - 2^{1-2H})/2: bound on every non-canonical pairing term of a single
/// off-diagonal covariance factor; evaluates the closed form for any finite
/// H (0 at H = 1/2, 1/4 at H = 1).
double cross_pairing_bound(double hurst);

/// fBm coefficient at even word w over horizon T via the unit-horizon
/// integral: the change of variables u -> u/T in the simplex integral emits
/// T^{2H-2} per covariance factor and T per coordinate, hence a factor
/// T^{2Hn} on the unit-horizon value for |w| = 2n.
QuadratureResult fbm_coefficient_closed_scaling(const Word& w, double hurst,
                                                double horizon,
                                                const QuadratureSettings& settings);

}  // namespace expsig
