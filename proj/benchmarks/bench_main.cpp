// SPDX-License-Identifier: Apache-2.0
//
// Microbenchmarks for the hot paths: polyline signature accumulation,
// pairing enumeration, simplex Monte Carlo batches, and the discrete
// oracle's tuple sum.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "expsig/discrete_oracle.hpp"
#include "expsig/kernels.hpp"
#include "expsig/pairings.hpp"
#include "expsig/quadrature.hpp"
#include "expsig/tensor_series.hpp"
#include "expsig/word.hpp"

namespace {

using namespace expsig;

void bm_polyline_signature(benchmark::State& state) {
  const int dimension = static_cast<int>(state.range(0));
  const int truncation = static_cast<int>(state.range(1));
  const int segments = 256;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  std::vector<std::vector<double>> inc(segments,
                                       std::vector<double>(dimension));
  for (auto& seg : inc) {
    for (auto& x : seg) x = unif(rng);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        signature_of_piecewise_linear(inc, dimension, truncation));
  }
  state.SetItemsProcessed(state.iterations() * segments);
}
BENCHMARK(bm_polyline_signature)
    ->Args({2, 4})
    ->Args({2, 6})
    ->Args({4, 4});

void bm_enumerate_pairings(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_pairings(n));
  }
}
BENCHMARK(bm_enumerate_pairings)->Arg(4)->Arg(6)->Arg(8);

void bm_simplex_mc_batch(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const FbmKernel k(0.75);
  QuadratureSettings settings;
  settings.samples = 10'000;
  settings.seed = 1;
  settings.method = state.range(1) == 0
                        ? QuadratureMethod::MonteCarlo
                        : QuadratureMethod::SortedStratifiedMonteCarlo;
  const Pairing pi = canonical_pairing(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        simplex_pairing_integral(pi, k, n, 1.0, settings));
    ++settings.seed;  // fresh stream each round, same cost profile
  }
  state.SetItemsProcessed(state.iterations() * settings.samples);
}
BENCHMARK(bm_simplex_mc_batch)
    ->Args({1, 0})
    ->Args({2, 0})
    ->Args({2, 1})
    ->Args({3, 0});

void bm_discrete_word_sum(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  const FbmKernel k(0.7);
  const CellCovariance cov = dyadic_c_matrix(k, depth, 1.0);
  const Word w{1, 1, 2, 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(discrete_expected_word(w, cov));
  }
}
BENCHMARK(bm_discrete_word_sum)->Arg(4)->Arg(5)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
