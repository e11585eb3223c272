// SPDX-License-Identifier: Apache-2.0
#pragma once
//
// Test-side reference implementations, kept deliberately independent of the
// library internals: closed forms straight from the literature plus a
// polyline iterated-integral evaluator that works in polynomial coefficients
// instead of the tensor algebra. Tolerances asserted in the test files were
// frozen against these oracles.

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "expsig/word.hpp"

namespace oracle {

// Fractional Brownian motion covariance R(s, t) = (s^2H + t^2H - |t-s|^2H)/2.
inline double fbm_covariance(double s, double t, double hurst) {
  return 0.5 * (std::pow(s, 2.0 * hurst) + std::pow(t, 2.0 * hurst) -
                std::pow(std::abs(t - s), 2.0 * hurst));
}

// Covariance density of fBm increments off the diagonal.
inline double fbm_f(double u, double v, double hurst) {
  return hurst * (2.0 * hurst - 1.0) *
         std::pow(std::abs(u - v), 2.0 * hurst - 2.0);
}

// E[(W_t - W_s)(W_tau - W_sigma)] as the four-corner covariance combination.
inline double fbm_rect(double s, double t, double sigma, double tau,
                       double hurst) {
  return fbm_covariance(t, tau, hurst) - fbm_covariance(t, sigma, hurst) -
         fbm_covariance(s, tau, hurst) + fbm_covariance(s, sigma, hurst);
}

inline double double_factorial(int k) {
  double r = 1.0;
  for (int v = k; v > 1; v -= 2) r *= v;
  return r;
}

inline double factorial(int k) { return std::tgamma(k + 1.0); }

// Canonical-pairing integral on [0, 1]. Each step of the nested integral
//   G_k(v) = int_0^v (v - t)^{2H-1} G_{k-1}(t) dt,  G_0 = 1,
// maps the pure power v^{2(k-1)H} to v^{2kH} times Beta(2H, 2(k-1)H + 1),
// which telescopes to I_n = H^n Gamma(2H)^n / Gamma(2nH + 1).
inline double closed_canonical_integral(int n, double hurst) {
  return std::pow(hurst, n) * std::pow(std::tgamma(2.0 * hurst), n) /
         std::tgamma(2.0 * n * hurst + 1.0);
}

// Iterated integral of the uniform-speed polyline with the given per-segment
// increments, at one word. On each segment the prefix integrals are
// polynomials in the local coordinate, so the recursion
//   S_j(s) = S_j(0) + inc[w_j] * int_0^s S_{j-1}
// is exact coefficient arithmetic with no quadrature anywhere.
inline double polyline_word_integral(
    const expsig::Word& w, const std::vector<std::vector<double>>& increments) {
  const std::size_t k = w.size();
  std::vector<double> start(k + 1, 0.0);
  start[0] = 1.0;
  for (const auto& inc : increments) {
    std::vector<std::vector<double>> polys(k + 1);
    polys[0] = {1.0};
    for (std::size_t j = 1; j <= k; ++j) {
      const double c = inc[static_cast<std::size_t>(w[j - 1]) - 1];
      std::vector<double> p(polys[j - 1].size() + 1, 0.0);
      p[0] = start[j];
      for (std::size_t r = 0; r < polys[j - 1].size(); ++r) {
        p[r + 1] = c * polys[j - 1][r] / static_cast<double>(r + 1);
      }
      polys[j] = std::move(p);
    }
    for (std::size_t j = 1; j <= k; ++j) {
      double v = 0.0;
      for (double a : polys[j]) v += a;
      start[j] = v;
    }
  }
  return start[k];
}

// Multiset of interleavings of u and v with multiplicities: the right-hand
// side of the shuffle identity S(u) S(v) = sum_w <shuffle(u,v), w> S(w).
inline void shuffle_rec(const std::vector<int>& u, std::size_t iu,
                        const std::vector<int>& v, std::size_t iv,
                        std::vector<int>& acc,
                        std::map<expsig::Word, double>& out) {
  if (iu == u.size() && iv == v.size()) {
    out[expsig::Word(acc)] += 1.0;
    return;
  }
  if (iu < u.size()) {
    acc.push_back(u[iu]);
    shuffle_rec(u, iu + 1, v, iv, acc, out);
    acc.pop_back();
  }
  if (iv < v.size()) {
    acc.push_back(v[iv]);
    shuffle_rec(u, iu, v, iv + 1, acc, out);
    acc.pop_back();
  }
}

inline std::map<expsig::Word, double> shuffle_expand(
    const std::vector<int>& u, const std::vector<int>& v) {
  std::map<expsig::Word, double> out;
  std::vector<int> acc;
  shuffle_rec(u, 0, v, 0, acc, out);
  return out;
}

// Random polyline with increments in [-1/2, 1/2]^d.
inline std::vector<std::vector<double>> random_polyline(std::mt19937_64& rng,
                                                        int segments,
                                                        int dimension) {
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  std::vector<std::vector<double>> inc(segments,
                                       std::vector<double>(dimension));
  for (auto& seg : inc) {
    for (auto& x : seg) x = unif(rng);
  }
  return inc;
}

}  // namespace oracle
