// SPDX-License-Identifier: Apache-2.0
#include "expsig/expected_signature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "expsig/errors.hpp"
#include "expsig/pairings.hpp"
#include "expsig/rng.hpp"

namespace expsig {

namespace {

constexpr int kMaxReportDimension = 4;
constexpr int kMaxReportTruncation = 8;

// Letter pattern of w: letters renamed to 1, 2, ... in order of first
// occurrence. Words with equal patterns have equal coefficients when the
// components are iid, and are given identical MC streams.
Word letter_pattern(const Word& w) {
  std::vector<int> renamed;
  renamed.reserve(w.size());
  std::map<int, int> name;
  for (int letter : w.letters()) {
    auto [it, inserted] = name.emplace(letter, static_cast<int>(name.size()) + 1);
    renamed.push_back(it->second);
  }
  return Word(std::move(renamed));
}

std::uint64_t word_stream_seed(std::uint64_t seed, const Word& pattern) {
  std::uint64_t x = mix64(seed ^ 0x657870736967ULL);
  for (int letter : pattern.letters()) {
    x = mix64(x ^ static_cast<std::uint64_t>(letter));
  }
  return x;
}

void validate_report_request(int dimension, int truncation, double horizon) {
  if (dimension < 1) {
    throw ArgumentError("expected signature: dimension must be >= 1");
  }
  if (truncation < 0) {
    throw ArgumentError("expected signature: truncation must be >= 0");
  }
  if (!std::isfinite(horizon) || !(horizon > 0.0)) {
    throw ArgumentError("expected signature: horizon must be positive");
  }
  if (dimension > kMaxReportDimension) {
    throw ResourceError("expected signature: dimension " +
                        std::to_string(dimension) + " exceeds the cap of " +
                        std::to_string(kMaxReportDimension));
  }
  if (truncation > kMaxReportTruncation) {
    throw ResourceError("expected signature: truncation " +
                        std::to_string(truncation) + " exceeds the cap of " +
                        std::to_string(kMaxReportTruncation));
  }
}

// Even words of each even level <= truncation, in flat-index order per
// level. The empty word leads.
std::vector<Word> even_words(int dimension, int truncation) {
  std::vector<Word> out;
  out.emplace_back();
  for (int level = 2; level <= truncation; level += 2) {
    std::size_t total = 1;
    for (int i = 0; i < level; ++i) total *= static_cast<std::size_t>(dimension);
    for (std::size_t idx = 0; idx < total; ++idx) {
      Word w = Word::from_flat_index(dimension, level, idx);
      if (is_even_word(w)) out.push_back(std::move(w));
    }
  }
  return out;
}

}  // namespace

QuadratureResult expected_word_coefficient(const Word& w, const Kernel& k,
                                           double horizon,
                                           const QuadratureSettings& settings) {
  if (w.empty()) {
    QuadratureResult unit;
    unit.value = 1.0;
    return unit;
  }
  if (w.size() % 2 != 0 || !is_even_word(w)) {
    return QuadratureResult{};
  }
  const int n = static_cast<int>(w.size()) / 2;
  const Word pattern = letter_pattern(w);
  const std::uint64_t base_seed = word_stream_seed(settings.seed, pattern);
  const auto pairings = compatible_pairings(pattern);

  QuadratureResult total;
  double variance = 0.0;
  for (std::size_t p = 0; p < pairings.size(); ++p) {
    QuadratureSettings per_pairing = settings;
    per_pairing.seed = mix64(base_seed ^ p);
    const auto part =
        simplex_pairing_integral(pairings[p], k, n, horizon, per_pairing);
    total.value += part.value;
    variance += part.std_error * part.std_error;
    total.samples_used += part.samples_used;
    total.nonfinite_samples += part.nonfinite_samples;
  }
  total.std_error = std::sqrt(variance);
  return total;
}

ExpectedSignatureReport expected_signature(const Kernel& k, int dimension,
                                           int truncation, double horizon,
                                           const QuadratureSettings& settings) {
  validate_report_request(dimension, truncation, horizon);
  ExpectedSignatureReport report;
  report.dimension = dimension;
  report.truncation = truncation;
  report.horizon = horizon;
  report.kernel = k.describe();
  report.settings = settings;

  std::map<Word, QuadratureResult> by_pattern;
  for (Word& w : even_words(dimension, truncation)) {
    const Word pattern = letter_pattern(w);
    auto it = by_pattern.find(pattern);
    if (it == by_pattern.end()) {
      it = by_pattern
               .emplace(pattern,
                        expected_word_coefficient(w, k, horizon, settings))
               .first;
    }
    TermEntry entry;
    entry.value = it->second.value;
    entry.std_error = it->second.std_error;
    entry.pairing_count =
        static_cast<std::int64_t>(compatible_pairings(w).size());
    entry.word = std::move(w);
    report.terms.push_back(std::move(entry));
  }
  return report;
}

ExpectedSignatureReport brownian_expected_signature(int dimension,
                                                    int truncation,
                                                    double horizon) {
  validate_report_request(dimension, truncation, horizon);
  ExpectedSignatureReport report;
  report.dimension = dimension;
  report.truncation = truncation;
  report.horizon = horizon;
  report.kernel = "brownian";
  for (Word& w : even_words(dimension, truncation)) {
    TermEntry entry;
    entry.pairing_count =
        static_cast<std::int64_t>(compatible_pairings(w).size());
    const int n = static_cast<int>(w.size()) / 2;
    bool adjacent_pairs = true;
    for (int i = 0; i < n; ++i) {
      if (w[static_cast<std::size_t>(2 * i)] !=
          w[static_cast<std::size_t>(2 * i + 1)]) {
        adjacent_pairs = false;
        break;
      }
    }
    if (adjacent_pairs) {
      double value = 1.0;
      for (int i = 1; i <= n; ++i) value *= horizon / 2.0 / i;
      entry.value = value;
    }
    entry.word = std::move(w);
    report.terms.push_back(std::move(entry));
  }
  return report;
}

QuadratureResult canonical_In(int n, double hurst,
                              const QuadratureSettings& settings) {
  if (!std::isfinite(hurst) || !(hurst > 0.5) || !(hurst < 1.0)) {
    throw ArgumentError("canonical term: hurst index must lie in (1/2, 1)");
  }
  return reduced_canonical_integral(n, hurst, settings);
}

double cross_pairing_bound(double hurst) {
  if (!std::isfinite(hurst)) {
    throw ArgumentError("cross-pairing bound: hurst index must be finite");
  }
  return 0.5 * (1.0 - std::pow(2.0, 1.0 - 2.0 * hurst));
}

QuadratureResult fbm_coefficient_closed_scaling(const Word& w, double hurst,
                                                double horizon,
                                                const QuadratureSettings& settings) {
  if (w.empty() || w.size() % 2 != 0 || !is_even_word(w)) {
    throw ArgumentError(
        "fbm scaling: the word must be even and of positive even length");
  }
  if (!std::isfinite(horizon) || !(horizon > 0.0)) {
    throw ArgumentError("fbm scaling: horizon must be positive");
  }
  const FbmKernel kernel(hurst);
  const int n = static_cast<int>(w.size()) / 2;
  auto result = expected_word_coefficient(w, kernel, 1.0, settings);
  const double scale = std::pow(horizon, 2.0 * hurst * n);
  result.value *= scale;
  result.std_error *= scale;
  return result;
}

}  // namespace expsig
