// SPDX-License-Identifier: Apache-2.0
#include "expsig/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "expsig/errors.hpp"
#include "expsig/gauss_rules.hpp"
#include "expsig/rng.hpp"

namespace expsig {

namespace {

// Stream tags keep the two MC entry points decorrelated under a shared seed.
constexpr std::uint64_t kStreamSimplex = 1;
constexpr std::uint64_t kStreamReduced = 2;

constexpr double kNonFiniteAbortFraction = 1e-3;
constexpr int kMaxCollisionRedraws = 64;

double factorial(int m) {
  double r = 1.0;
  for (int i = 2; i <= m; ++i) r *= i;
  return r;  // exact in double for m <= 16
}

void require_mc_settings(const QuadratureSettings& s) {
  if (s.method == QuadratureMethod::Reduced) {
    throw ArgumentError(
        "quadrature: the reduced method applies only to the canonical "
        "pairing; call reduced_canonical_integral");
  }
  if (s.samples < 1000) {
    throw ArgumentError("quadrature: MC methods require samples >= 1000");
  }
  if (s.max_batches < 1) {
    throw ArgumentError("quadrature: max_batches must be >= 1");
  }
  if (!(s.target_rel_stderr >= 0.0)) {
    throw ArgumentError("quadrature: target relative error must be >= 0");
  }
}

// Mean/variance accumulator over batches; combination is in batch-index
// order, so a fixed seed gives bit-identical results.
struct RunningMoments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::int64_t count = 0;
  std::int64_t nonfinite = 0;

  void add(double x) {
    if (!std::isfinite(x)) {
      ++nonfinite;
      return;
    }
    sum += x;
    sum_sq += x * x;
    ++count;
  }
  double mean() const { return count > 0 ? sum / static_cast<double>(count) : 0.0; }
  double stderr_of_mean() const {
    if (count < 2) return 0.0;
    const double n = static_cast<double>(count);
    const double var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
    return std::sqrt(var / n);
  }
};

// One batch of `count` sorted-uniform points in [0, horizon]^dim; `product`
// maps a sorted point to the integrand value.
void sorted_uniform_batch(std::mt19937_64& rng, std::int64_t count, int dim,
                          double horizon,
                          const std::function<double(const double*)>& product,
                          RunningMoments& acc) {
  std::uniform_real_distribution<double> unif(0.0, horizon);
  std::vector<double> u(static_cast<std::size_t>(dim));
  for (std::int64_t i = 0; i < count; ++i) {
    int redraws = 0;
    for (;;) {
      for (auto& x : u) x = unif(rng);
      std::sort(u.begin(), u.end());
      if (std::adjacent_find(u.begin(), u.end()) == u.end()) break;
      if (++redraws > kMaxCollisionRedraws) {
        throw NumericError("quadrature: persistent coordinate collisions");
      }
    }
    acc.add(product(u.data()));
  }
}

// Latin-hypercube batch: every coordinate is split into `count` equal strata
// visited in an independently shuffled order, so each marginal is sampled
// once per stratum. Unbiased for the mean, lower variance near the singular
// diagonals than iid draws.
void stratified_batch(std::mt19937_64& rng, std::int64_t count, int dim,
                      double horizon,
                      const std::function<double(const double*)>& product,
                      RunningMoments& acc) {
  const auto n = static_cast<std::size_t>(count);
  std::vector<std::vector<std::uint32_t>> strata(
      static_cast<std::size_t>(dim));
  for (auto& perm : strata) {
    perm.resize(n);
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
  }
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double cell = horizon / static_cast<double>(count);
  std::vector<double> u(static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i < n; ++i) {
    int redraws = 0;
    for (;;) {
      for (std::size_t c = 0; c < u.size(); ++c) {
        u[c] = (static_cast<double>(strata[c][i]) + unif(rng)) * cell;
      }
      std::sort(u.begin(), u.end());
      if (std::adjacent_find(u.begin(), u.end()) == u.end()) break;
      if (++redraws > kMaxCollisionRedraws) {
        throw NumericError("quadrature: persistent coordinate collisions");
      }
    }
    acc.add(product(u.data()));
  }
}

// Shared batch loop: run batches until the relative-error target is met or
// the batch cap is hit, then rescale the raw sorted-point mean by `scale`
// (the simplex volume).
QuadratureResult run_batched_mc(const QuadratureSettings& s,
                                std::uint64_t stream_tag, int dim,
                                double horizon, double scale,
                                const std::function<double(const double*)>& product) {
  const bool stratified =
      s.method == QuadratureMethod::SortedStratifiedMonteCarlo;
  RunningMoments acc;
  int batches = 0;
  for (; batches < s.max_batches; ++batches) {
    auto rng = substream(s.seed, stream_tag,
                         static_cast<std::uint64_t>(batches));
    if (stratified) {
      stratified_batch(rng, s.samples, dim, horizon, product, acc);
    } else {
      sorted_uniform_batch(rng, s.samples, dim, horizon, product, acc);
    }
    const std::int64_t drawn = acc.count + acc.nonfinite;
    if (acc.nonfinite >
        std::max<std::int64_t>(
            16, static_cast<std::int64_t>(kNonFiniteAbortFraction *
                                          static_cast<double>(drawn)))) {
      throw NumericError(
          "quadrature: non-finite integrand values exceeded the abort "
          "threshold (" +
          std::to_string(acc.nonfinite) + " of " + std::to_string(drawn) +
          " draws)");
    }
    if (s.target_rel_stderr <= 0.0) break;
    const double value = acc.mean();
    if (value != 0.0 &&
        acc.stderr_of_mean() / std::abs(value) < s.target_rel_stderr) {
      break;
    }
  }
  QuadratureResult out;
  out.value = acc.mean() * scale;
  out.std_error = acc.stderr_of_mean() * scale;
  out.samples_used = acc.count;
  out.nonfinite_samples = acc.nonfinite;
  if (!std::isfinite(out.value) || !std::isfinite(out.std_error)) {
    throw NumericError("quadrature: non-finite estimate");
  }
  return out;
}

void validate_pairing_of(const Pairing& pi, int n) {
  if (static_cast<int>(pi.pairs.size()) != n) {
    throw ArgumentError("quadrature: pairing size does not match n");
  }
  std::vector<bool> seen(static_cast<std::size_t>(2 * n), false);
  for (const auto& [l, j] : pi.pairs) {
    if (l < 1 || j < 1 || l > 2 * n || j > 2 * n || l >= j) {
      throw ArgumentError("quadrature: pairing entries must satisfy 1 <= l < j <= 2n");
    }
    if (seen[static_cast<std::size_t>(l - 1)] ||
        seen[static_cast<std::size_t>(j - 1)]) {
      throw ArgumentError("quadrature: pairing reuses an index");
    }
    seen[static_cast<std::size_t>(l - 1)] = true;
    seen[static_cast<std::size_t>(j - 1)] = true;
  }
}

}  // namespace

QuadratureResult simplex_pairing_integral(const Pairing& pi, const Kernel& k,
                                          int n, double horizon,
                                          const QuadratureSettings& settings) {
  if (n < 1 || 2 * n > 16) {
    throw ResourceError("quadrature: supported word lengths are 2..16");
  }
  if (!std::isfinite(horizon) || !(horizon > 0.0)) {
    throw ArgumentError("quadrature: horizon must be positive and finite");
  }
  validate_pairing_of(pi, n);
  require_mc_settings(settings);

  const int dim = 2 * n;
  const double scale = std::pow(horizon, dim) / factorial(dim);
  const auto& pairs = pi.pairs;
  auto product = [&pairs, &k](const double* u) {
    double p = 1.0;
    for (const auto& [l, j] : pairs) p *= k.f(u[j - 1], u[l - 1]);
    return p;
  };
  return run_batched_mc(settings, kStreamSimplex, dim, horizon, scale,
                        product);
}

QuadratureResult reduced_canonical_integral(int n, double hurst,
                                            const QuadratureSettings& settings) {
  if (n < 1) {
    throw ArgumentError("reduced integral: n must be >= 1");
  }
  if (!std::isfinite(hurst) || !(hurst >= 0.5) || !(hurst < 1.0)) {
    throw ArgumentError("reduced integral: hurst index must lie in [1/2, 1)");
  }
  if (hurst == 0.5) {
    QuadratureResult out;
    out.value = std::pow(0.5, n) / factorial(n);
    return out;
  }

  const double h = hurst;
  if (n <= 3) {
    // Iterated rule for G_k(v) = int_0^v (v - t)^{2H-1} G_{k-1}(t) dt,
    // G_0 = 1, via t = v(1 - s):
    //   G_k(v) = v^{2H} int_0^1 s^{2H-1} G_{k-1}(v(1-s)) ds.
    // Scaling gives G_{k-1}(lambda v) = lambda^{2(k-1)H} G_{k-1}(v), so the
    // (1-s)^{2(k-1)H} factor is folded into the Jacobi weight; the rule then
    // integrates the remaining factor exactly.
    constexpr int kPoints = 16;
    std::vector<QuadratureRule> rules;
    rules.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
      rules.push_back(
          gauss_jacobi_unit(kPoints, 2.0 * (k - 1) * h, 2.0 * h - 1.0));
    }
    std::function<double(int, double)> eval_g = [&](int k, double v) {
      if (k == 0) return 1.0;
      const auto& rule = rules[static_cast<std::size_t>(k - 1)];
      const double lower_degree = 2.0 * (k - 1) * h;
      double acc = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double one_minus_s = 1.0 - rule.nodes[i];
        acc += rule.weights[i] * eval_g(k - 1, v * one_minus_s) /
               std::pow(one_minus_s, lower_degree);
      }
      return std::pow(v, 2.0 * h) * acc;
    };
    QuadratureResult out;
    out.value = std::pow(h, n) * eval_g(n, 1.0);
    double evaluations = 1.0;
    for (int k = 0; k < n; ++k) evaluations *= kPoints;
    out.samples_used = static_cast<std::int64_t>(evaluations);
    if (!std::isfinite(out.value)) {
      throw NumericError("reduced integral: non-finite deterministic value");
    }
    return out;
  }

  // Bounded integrand (exponent 2H-1 > 0): plain sorted-uniform MC on the
  // n-dimensional reduced simplex.
  require_mc_settings(settings);
  const double exponent = 2.0 * h - 1.0;
  auto product = [n, exponent](const double* v) {
    double p = 1.0;
    for (int j = 0; j < n; ++j) {
      const double next = (j + 1 < n) ? v[j + 1] : 1.0;
      p *= std::pow(next - v[j], exponent);
    }
    return p;
  };
  auto result = run_batched_mc(settings, kStreamReduced, n, 1.0,
                               std::pow(h, n) / factorial(n), product);
  return result;
}

double unit_square_normalization(double hurst) {
  if (!std::isfinite(hurst) || !(hurst > 0.5) || !(hurst < 1.0)) {
    throw ArgumentError("normalization: hurst index must lie in (1/2, 1)");
  }
  // int int_{0<x<y<1} (y-x)^{2H-2} dx dy = int_0^1 w^{2H-2} (1-w) dw after
  // w = y - x; the w^{2H-2} blowup at 0 goes into the Jacobi weight.
  const auto rule = gauss_jacobi_unit(32, 0.0, 2.0 * hurst - 2.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    acc += rule.weights[i] * (1.0 - rule.nodes[i]);
  }
  return 2.0 * hurst * (2.0 * hurst - 1.0) * acc;
}

}  // namespace expsig
