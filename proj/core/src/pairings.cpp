// SPDX-License-Identifier: Apache-2.0
#include "expsig/pairings.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "expsig/errors.hpp"

namespace expsig {

namespace {

// Recursively matches the smallest unmatched element against each larger
// unmatched partner in increasing order; `accept(l, j)` filters partners.
template <typename Accept>
void enumerate_matchings(int count, const Accept& accept,
                         std::vector<Pairing>& out) {
  std::vector<bool> used(static_cast<std::size_t>(count) + 1, false);
  Pairing current;
  current.pairs.reserve(static_cast<std::size_t>(count) / 2);

  auto recurse = [&](auto&& self) -> void {
    int smallest = 0;
    for (int i = 1; i <= count; ++i) {
      if (!used[static_cast<std::size_t>(i)]) {
        smallest = i;
        break;
      }
    }
    if (smallest == 0) {
      out.push_back(current);
      return;
    }
    used[static_cast<std::size_t>(smallest)] = true;
    for (int j = smallest + 1; j <= count; ++j) {
      if (used[static_cast<std::size_t>(j)] || !accept(smallest, j)) continue;
      used[static_cast<std::size_t>(j)] = true;
      current.pairs.emplace_back(smallest, j);
      self(self);
      current.pairs.pop_back();
      used[static_cast<std::size_t>(j)] = false;
    }
    used[static_cast<std::size_t>(smallest)] = false;
  };
  recurse(recurse);
}

}  // namespace

std::vector<Pairing> enumerate_pairings(int n) {
  if (n < 1) {
    throw ArgumentError("pairings: n must be a positive integer");
  }
  if (2 * n > 16) {
    throw ResourceError("pairings: 2n = " + std::to_string(2 * n) +
                        " exceeds the cap of 16 elements");
  }
  std::vector<Pairing> out;
  enumerate_matchings(2 * n, [](int, int) { return true; }, out);
  return out;
}

Pairing canonical_pairing(int n) {
  if (n < 1) {
    throw ArgumentError("pairings: n must be a positive integer");
  }
  Pairing out;
  out.pairs.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    out.pairs.emplace_back(2 * i - 1, 2 * i);
  }
  return out;
}

bool is_even_word(const Word& w) {
  int counts[256] = {};
  for (int letter : w.letters()) {
    if (letter < 1 || letter > 255) {
      throw ArgumentError("even-word test: letter outside supported range");
    }
    ++counts[letter];
  }
  for (int c : counts) {
    if (c % 2 != 0) return false;
  }
  return true;
}

std::vector<Pairing> compatible_pairings(const Word& w) {
  if (w.size() % 2 != 0) {
    throw ArgumentError("compatible pairings: word length must be even");
  }
  if (w.empty()) {
    return {Pairing{}};
  }
  if (w.size() > 16) {
    throw ResourceError("compatible pairings: word length " +
                        std::to_string(w.size()) + " exceeds the cap of 16");
  }
  auto letters = w.letters();
  std::vector<Pairing> out;
  enumerate_matchings(
      static_cast<int>(w.size()),
      [&](int l, int j) {
        return letters[static_cast<std::size_t>(l - 1)] ==
               letters[static_cast<std::size_t>(j - 1)];
      },
      out);
  return out;
}

double wick_moment(const Eigen::MatrixXd& cov) {
  if (cov.rows() != cov.cols()) {
    throw ArgumentError("wick_moment: covariance matrix must be square");
  }
  const int k = static_cast<int>(cov.rows());
  if (k == 0) return 1.0;
  if (k % 2 != 0) return 0.0;
  if (k > 16) {
    throw ResourceError("wick_moment: " + std::to_string(k) +
                        " factors exceed the cap of 16");
  }
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (std::abs(cov(i, j) - cov(j, i)) > 1e-12) {
        throw ArgumentError("wick_moment: covariance not symmetric within 1e-12");
      }
    }
  }
  double total = 0.0;
  for (const Pairing& pairing : enumerate_pairings(k / 2)) {
    double product = 1.0;
    for (auto [l, j] : pairing.pairs) {
      product *= cov(l - 1, j - 1);
    }
    total += product;
  }
  return total;
}

}  // namespace expsig
