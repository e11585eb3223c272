// SPDX-License-Identifier: Apache-2.0
#include "expsig/tensor_series.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "expsig/errors.hpp"

namespace expsig {

namespace {

void check_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw ArgumentError(std::string(what) + ": non-finite input coefficient");
    }
  }
}

}  // namespace

TensorSeries::TensorSeries(int dimension, int truncation,
                           std::size_t coefficient_cap)
    : dimension_(dimension), truncation_(truncation) {
  if (dimension < 1) {
    throw ArgumentError("tensor: dimension must be >= 1");
  }
  if (truncation < 0) {
    throw ArgumentError("tensor: truncation must be >= 0");
  }
  std::size_t level_size = 1;
  std::size_t total = 0;
  levels_.reserve(static_cast<std::size_t>(truncation) + 1);
  for (int k = 0; k <= truncation; ++k) {
    total += level_size;
    if (total > coefficient_cap) {
      throw ResourceError("tensor: " + std::to_string(total) +
                          "+ coefficients exceed cap of " +
                          std::to_string(coefficient_cap));
    }
    levels_.emplace_back(level_size, 0.0);
    if (k < truncation) {
      if (level_size > coefficient_cap / static_cast<std::size_t>(dimension)) {
        throw ResourceError("tensor: level sizes exceed coefficient cap");
      }
      level_size *= static_cast<std::size_t>(dimension);
    }
  }
}

TensorSeries TensorSeries::unit(int dimension, int truncation) {
  TensorSeries s(dimension, truncation);
  s.set_scalar(1.0);
  return s;
}

std::span<double> TensorSeries::level(int k) {
  if (k < 0 || k > truncation_) {
    throw ArgumentError("tensor: level " + std::to_string(k) +
                        " outside 0.." + std::to_string(truncation_));
  }
  return levels_[static_cast<std::size_t>(k)];
}

std::span<const double> TensorSeries::level(int k) const {
  if (k < 0 || k > truncation_) {
    throw ArgumentError("tensor: level " + std::to_string(k) +
                        " outside 0.." + std::to_string(truncation_));
  }
  return levels_[static_cast<std::size_t>(k)];
}

double TensorSeries::coefficient(const Word& w) const {
  if (w.size() > static_cast<std::size_t>(truncation_)) {
    throw ArgumentError("tensor: word of length " + std::to_string(w.size()) +
                        " beyond truncation " + std::to_string(truncation_));
  }
  return levels_[w.size()][w.flat_index(dimension_)];
}

void TensorSeries::concat_segment(std::span<const double> v,
                                  std::vector<double>& scratch) {
  if (static_cast<int>(v.size()) != dimension_) {
    throw ArgumentError("concat_segment: segment has wrong dimension");
  }
  check_finite(v, "concat_segment");
  if (truncation_ == 0) return;

  const int d = dimension_;
  const int n = truncation_;

  // scratch packs the levels 1..n of exp(v): e_q = v^{(x)q} / q!.
  std::vector<std::size_t> offset(static_cast<std::size_t>(n) + 1, 0);
  std::size_t total = 0;
  for (int q = 1; q <= n; ++q) {
    offset[static_cast<std::size_t>(q)] = total;
    total += levels_[static_cast<std::size_t>(q)].size();
  }
  if (scratch.size() < total) scratch.resize(total);

  for (int i = 0; i < d; ++i) scratch[i] = v[static_cast<std::size_t>(i)];
  for (int q = 2; q <= n; ++q) {
    const double inv = 1.0 / q;
    const double* prev = scratch.data() + offset[static_cast<std::size_t>(q - 1)];
    double* cur = scratch.data() + offset[static_cast<std::size_t>(q)];
    const std::size_t prev_size = levels_[static_cast<std::size_t>(q - 1)].size();
    for (std::size_t i = 0; i < prev_size; ++i) {
      const double pv = prev[i] * inv;
      for (int j = 0; j < d; ++j) {
        cur[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] =
            pv * v[static_cast<std::size_t>(j)];
      }
    }
  }

  // Top-down so every read of a lower level still sees the old value.
  for (int k = n; k >= 1; --k) {
    double* out = levels_[static_cast<std::size_t>(k)].data();
    for (int q = 1; q <= k; ++q) {
      const double* a = levels_[static_cast<std::size_t>(k - q)].data();
      const double* e = scratch.data() + offset[static_cast<std::size_t>(q)];
      const std::size_t a_size = levels_[static_cast<std::size_t>(k - q)].size();
      const std::size_t e_size = levels_[static_cast<std::size_t>(q)].size();
      for (std::size_t ia = 0; ia < a_size; ++ia) {
        const double av = a[ia];
        if (av == 0.0) continue;
        double* dst = out + ia * e_size;
        for (std::size_t ie = 0; ie < e_size; ++ie) dst[ie] += av * e[ie];
      }
    }
  }
}

TensorSeries tensor_mul(const TensorSeries& a, const TensorSeries& b) {
  if (a.dimension() != b.dimension() || a.truncation() != b.truncation()) {
    throw ArgumentError(
        "tensor_mul: operands must share dimension and truncation");
  }
  const int n = a.truncation();
  TensorSeries out(a.dimension(), n);
  for (int k = 0; k <= n; ++k) {
    auto out_level = out.level(k);
    for (int p = 0; p <= k; ++p) {
      auto a_level = a.level(p);
      auto b_level = b.level(k - p);
      for (std::size_t ia = 0; ia < a_level.size(); ++ia) {
        const double av = a_level[ia];
        if (av == 0.0) continue;
        double* dst = out_level.data() + ia * b_level.size();
        for (std::size_t ib = 0; ib < b_level.size(); ++ib) {
          dst[ib] += av * b_level[ib];
        }
      }
    }
  }
  return out;
}

TensorSeries tensor_exp(std::span<const double> v, int truncation,
                        std::size_t coefficient_cap) {
  if (v.empty()) {
    throw ArgumentError("tensor_exp: empty level-1 vector");
  }
  check_finite(v, "tensor_exp");
  const int d = static_cast<int>(v.size());
  TensorSeries out(d, truncation, coefficient_cap);
  out.set_scalar(1.0);
  if (truncation == 0) return out;

  auto first = out.level(1);
  for (int i = 0; i < d; ++i) first[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
  for (int q = 2; q <= truncation; ++q) {
    auto prev = out.level(q - 1);
    auto cur = out.level(q);
    const double inv = 1.0 / q;
    for (std::size_t i = 0; i < prev.size(); ++i) {
      const double pv = prev[i] * inv;
      for (int j = 0; j < d; ++j) {
        cur[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] =
            pv * v[static_cast<std::size_t>(j)];
      }
    }
  }
  return out;
}

TensorSeries signature_of_piecewise_linear(
    std::span<const std::vector<double>> increments, int dimension,
    int truncation) {
  TensorSeries sig = TensorSeries::unit(dimension, truncation);
  std::vector<double> scratch;
  for (const auto& segment : increments) {
    sig.concat_segment(segment, scratch);
  }
  return sig;
}

double project_word(const TensorSeries& s, const Word& w) {
  return s.coefficient(w);
}

}  // namespace expsig
