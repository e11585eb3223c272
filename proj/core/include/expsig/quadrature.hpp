// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "expsig/kernels.hpp"
#include "expsig/pairings.hpp"

namespace expsig {

enum class QuadratureMethod {
  MonteCarlo,                 // sorted-uniform simplex sampling
  SortedStratifiedMonteCarlo, // Latin-hypercube strata per coordinate
  Reduced,                    // canonical-pairing dimensional reduction
};

struct QuadratureSettings {
  QuadratureMethod method = QuadratureMethod::MonteCarlo;
  std::int64_t samples = 100'000;  // per batch; >= 1000 for MC methods
  std::uint64_t seed = 0;
  // Batch until stderr/|value| drops below this (0 = single batch), up to
  // max_batches batches of `samples` each.
  double target_rel_stderr = 0.0;
  int max_batches = 64;
};

struct QuadratureResult {
  double value = 0.0;
  double std_error = 0.0;  // 0 for deterministic paths
  std::int64_t samples_used = 0;
  std::int64_t nonfinite_samples = 0;  // skipped evaluations, see below
};

/// MC estimate of int_{Delta_2n(T)} prod_{(l,j) in pi} f(u_j, u_l) du over
/// the ordered simplex 0 <= u_1 < ... < u_2n <= T: draw 2n uniforms, sort
/// (collisions redrawn), average the product, scale by the simplex volume
/// T^{2n}/(2n)!. Non-finite products are counted and skipped; the run aborts
/// once they exceed 0.1% of the draws. Identical settings give bit-identical
/// results (per-batch substreams, batch-order combination).
QuadratureResult simplex_pairing_integral(const Pairing& pi, const Kernel& k,
                                          int n, double horizon,
                                          const QuadratureSettings& settings);

/// The canonical-pairing coefficient on [0, 1] after integrating out the
/// even-indexed simplex coordinates:
///   I_n = H^n int_{0<v_1<...<v_n<1} prod_j (v_{j+1} - v_j)^{2H-1} dv,
/// with v_{n+1} = 1. The integrand is bounded; n <= 3 is evaluated by
/// iterated Gauss-Jacobi rules (deterministic, stderr 0), larger n by
/// sorted-uniform MC with the MC fields of `settings`. H = 1/2 returns the
/// exact (1/2)^n/n!.
QuadratureResult reduced_canonical_integral(int n, double hurst,
                                            const QuadratureSettings& settings);

/// 2H(2H-1) int int_{0<x<y<1} (y-x)^{2H-2} dx dy evaluated through the
/// singular-endpoint Jacobi rule; analytically equals 1, so the return value
/// measures how well that path handles the |y-x|^{2H-2} blowup.
double unit_square_normalization(double hurst);

}  // namespace expsig
