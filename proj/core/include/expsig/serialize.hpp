// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "expsig/discrete_oracle.hpp"
#include "expsig/expected_signature.hpp"
#include "expsig/quadrature.hpp"
#include "expsig/word.hpp"

namespace expsig {

/// Stable wire names of the quadrature methods ("mc",
/// "sorted-stratified-mc", "reduced").
std::string method_name(QuadratureMethod method);

/// Inverse of method_name; unknown names are an argument error.
QuadratureMethod parse_method(const std::string& name);

/// Compute-report JSON:
///   { "meta": {kernel, d, N, T, seed, method, samples},
///     "terms": [{"word": "1,1,2,2", "value": x, "stderr": s, "pairings": p}] }
/// Keys sorted, floats shortest-round-trip; identical reports give identical
/// bytes.
std::string to_json(const ExpectedSignatureReport& report);

/// Path-MC estimate in the same terms schema (meta gains the dyadic depth
/// "m"); one term per even word up to the truncation.
std::string to_json(const MCEstimate& estimate, const std::string& kernel);

/// One row of the three-oracle comparison table, with pairwise agreement
/// within 3 combined error bars. The discrete oracle's error bar is its
/// last refinement step |D_m - D_{m-1}|.
struct VerifyRow {
  Word word;
  double theorem_value = 0.0;
  double theorem_stderr = 0.0;
  double discrete_value = 0.0;
  double discrete_err = 0.0;
  double mc_value = 0.0;
  double mc_stderr = 0.0;
  bool agree_theorem_discrete = false;
  bool agree_theorem_mc = false;
  bool agree_discrete_mc = false;

  bool pass() const noexcept {
    return agree_theorem_discrete && agree_theorem_mc && agree_discrete_mc;
  }
};

struct VerifyReport {
  int dimension = 0;
  int truncation = 0;
  double horizon = 0.0;
  std::string kernel;
  QuadratureSettings settings;
  int depth = 0;     // discrete-oracle dyadic depth
  int mc_depth = 0;  // path-oracle dyadic depth
  std::int64_t mc_samples = 0;
  std::vector<VerifyRow> rows;

  bool pass() const noexcept;
};

std::string to_json(const VerifyReport& report);

/// One row of the Hurst sweep: the canonical term, its gap to the Brownian
/// value 1/(2^n n!), the cross-pairing bound, and the largest observed
/// non-canonical pairing term.
struct SweepRow {
  double hurst = 0.0;
  double canonical_term = 0.0;
  double brownian_gap = 0.0;
  double cross_bound = 0.0;
  double max_noncanonical = 0.0;
};

/// CSV with a header line; one row per H, floats shortest-round-trip.
std::string to_csv(std::span<const SweepRow> rows);

}  // namespace expsig
