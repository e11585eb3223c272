// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate for the expected-signature library: ten end-to-end checks
// covering exact identities, cross-oracle agreement, the Brownian limit, and
// CLI reproducibility. One [PASS]/[FAIL] line per check; the exit code is
// the number of failures. Tolerances are pinned here, next to each check.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "expsig/discrete_oracle.hpp"
#include "expsig/errors.hpp"
#include "expsig/expected_signature.hpp"
#include "expsig/kernels.hpp"
#include "expsig/pairings.hpp"
#include "expsig/quadrature.hpp"
#include "expsig/tensor_series.hpp"
#include "expsig/word.hpp"
#include "oracles.hpp"

using namespace expsig;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool ok,
            const std::string& detail) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << index << ". " << name;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << "\n" << std::flush;
  if (!ok) ++failures;
}

QuadratureSettings mc(std::int64_t samples, std::uint64_t seed,
                      QuadratureMethod method = QuadratureMethod::MonteCarlo) {
  QuadratureSettings s;
  s.method = method;
  s.samples = samples;
  s.seed = seed;
  return s;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

bool within_bars(double a, double ea, double b, double eb) {
  return std::abs(a - b) <= 3.0 * std::sqrt(ea * ea + eb * eb) + 1e-12;
}

// 1. Level-2 exactness: MC within max(1e-3, 3 stderr) of 1/2 and the
//    deterministic reduced path within 1e-8, at H in {0.6, 0.75, 0.9}.
//
//    KNOWN FAILURE at H = 0.6, kept on purpose. The sorted-uniform draw
//    f(u2, u1) = H(2H-1)(u2-u1)^(2H-2) has finite variance only for
//    H > 3/4; at H = 0.6 its tail index is 1.25, the sample mean converges
//    like N^(-1/5), and the bias-to-stderr ratio *grows* with the sample
//    count, so no budget makes the 3-sigma band honest. Measured across
//    seeds at 20k..1M samples roughly 2 runs in 10 miss the band. The
//    stratified method and a 1e6-sample budget below are the best
//    legitimate configuration; the seed is fixed, the outcome recorded.
void check_level2_exactness() {
  bool ok = true;
  std::string detail;
  for (double hurst : {0.6, 0.75, 0.9}) {
    const FbmKernel k(hurst);
    const bool heavy = hurst < 0.65;
    const auto est = expected_word_coefficient(
        Word{1, 1}, k, 1.0,
        mc(heavy ? 1'000'000 : 200'000, 101,
           heavy ? QuadratureMethod::SortedStratifiedMonteCarlo
                 : QuadratureMethod::MonteCarlo));
    const double err = std::abs(est.value - 0.5);
    if (err > std::max(1e-3, 3.0 * est.std_error)) ok = false;
    const auto reduced = canonical_In(1, hurst, mc(1'000, 0));
    if (std::abs(reduced.value - 0.5) > 1e-8) ok = false;
    detail += "H=" + fmt(hurst) + " mc_err=" + fmt(err) +
              " reduced_err=" + fmt(std::abs(reduced.value - 0.5)) + "; ";
  }
  report(1, "level-2 coefficient equals R(1,1)/2", ok, detail);
}

// 2. Level-4 single-letter moment within max(2e-3, 3 stderr) of 1/8 from
//    one million total simplex samples, in under 60 seconds per H.
void check_level4_moment() {
  bool ok = true;
  std::string detail;
  for (double hurst : {0.6, 0.75}) {
    const FbmKernel k(hurst);
    const auto start = std::chrono::steady_clock::now();
    // Three compatible pairings, so 333334 per pairing is 1e6 total draws.
    // Stratification below 0.65 follows the integrator's own default rule.
    const auto est = expected_word_coefficient(
        Word{1, 1, 1, 1}, k, 1.0,
        mc(333'334, 201,
           hurst < 0.65 ? QuadratureMethod::SortedStratifiedMonteCarlo
                        : QuadratureMethod::MonteCarlo));
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start)
            .count();
    const double err = std::abs(est.value - 0.125);
    if (err > std::max(2e-3, 3.0 * est.std_error)) ok = false;
    if (seconds >= 60.0) ok = false;
    detail += "H=" + fmt(hurst) + " err=" + fmt(err) + " n=" +
              std::to_string(est.samples_used) + " t=" + fmt(seconds) +
              "s; ";
  }
  report(2, "level-4 moment equals Isserlis E[W^4]/4!", ok, detail);
}

// 3. Oracle triangle at d=2, H=0.7: theorem quadrature vs discrete (m=6) vs
//    path MC (m=10, 1e5 paths), pairwise within 3 combined error bars for
//    every even word of length <= 4; the discrete value approaches the
//    theorem value monotonically over the last refinement steps.
//
//    The theorem side is assembled pairing by pairing: the canonical
//    pairing's integral comes from the deterministic reduced path (exact
//    for this depth), the cross pairings from 1e7-sample stratified MC.
//    The cross integrands are light-tailed enough for honest error bars,
//    while the canonical integrand at H = 0.7 is not (its square is
//    non-integrable), so an all-MC theorem column would drift a few sigma
//    under its own bars no matter the budget. The discrete column's error
//    bar is its own last refinement step |D(m) - D(m-1)|.
struct HybridTerm {
  double value = 0.0;
  double variance = 0.0;
};

HybridTerm hybrid_theorem_value(const Word& w, const FbmKernel& k,
                                double hurst,
                                std::map<std::string, QuadratureResult>& cache,
                                std::uint64_t& next_seed) {
  HybridTerm out;
  const int n = static_cast<int>(w.size()) / 2;
  const Pairing canonical = canonical_pairing(n);
  for (const Pairing& pi : compatible_pairings(w)) {
    if (pi == canonical) {
      out.value += canonical_In(n, hurst, mc(1'000, 0)).value;
      continue;
    }
    std::string key;
    for (const auto& [l, j] : pi.pairs) {
      key += std::to_string(l) + "-" + std::to_string(j) + ",";
    }
    auto it = cache.find(key);
    if (it == cache.end()) {
      const auto est = simplex_pairing_integral(
          pi, k, n, 1.0,
          mc(10'000'000, next_seed++,
             QuadratureMethod::SortedStratifiedMonteCarlo));
      it = cache.emplace(key, est).first;
    }
    out.value += it->second.value;
    out.variance += it->second.std_error * it->second.std_error;
  }
  return out;
}

void check_oracle_triangle() {
  const double hurst = 0.7;
  const FbmKernel k(hurst);
  bool ok = true;
  std::string detail;

  // The report fixes the even-word list; its MC values are recomputed below.
  const ExpectedSignatureReport skeleton =
      expected_signature(k, 2, 4, 1.0, mc(1'000, 7));
  std::map<std::string, QuadratureResult> cross_cache;
  std::uint64_t cross_seed = 7;
  std::vector<CellCovariance> covs;
  for (int m = 3; m <= 6; ++m) covs.push_back(dyadic_c_matrix(k, m, 1.0));
  const MCEstimate paths = mc_signature_estimate(k, 2, 10, 4, 1.0, 100'000,
                                                 7);

  for (const TermEntry& term : skeleton.terms) {
    if (term.word.empty()) continue;
    const HybridTerm th =
        hybrid_theorem_value(term.word, k, hurst, cross_cache, cross_seed);
    const double th_err = std::sqrt(th.variance);
    const double discrete = discrete_expected_word(term.word, covs.back());
    const double coarse =
        discrete_expected_word(term.word, covs[covs.size() - 2]);
    const double discrete_err = std::abs(discrete - coarse);
    const double mc_value = project_word(paths.mean, term.word);
    const double mc_err = project_word(paths.std_error, term.word);

    if (!within_bars(th.value, th_err, discrete, discrete_err) ||
        !within_bars(th.value, th_err, mc_value, mc_err) ||
        !within_bars(discrete, discrete_err, mc_value, mc_err)) {
      ok = false;
      detail += term.word.to_string() + ": th=" + fmt(th.value) + "+-" +
                fmt(th_err) + " disc=" + fmt(discrete) + "+-" +
                fmt(discrete_err) + " mc=" + fmt(mc_value) + "+-" +
                fmt(mc_err) + "; ";
    }

    // Monotone approach over m = 4,5,6 (the last two refinement steps).
    std::vector<double> gaps;
    for (const CellCovariance& cov : covs) {
      gaps.push_back(
          std::abs(discrete_expected_word(term.word, cov) - th.value));
    }
    if (!(gaps[3] <= gaps[2] && gaps[2] <= gaps[1])) {
      ok = false;
      detail += term.word.to_string() + ": gaps m=3..6 " + fmt(gaps[0]) +
                "," + fmt(gaps[1]) + "," + fmt(gaps[2]) + "," + fmt(gaps[3]) +
                "; ";
    }
  }
  report(3, "oracle triangle agrees pairwise within 3 error bars", ok,
         detail.empty() ? "10 words, m=6 vs mc m=10" : detail);
}

// 4. Lemma-7 level-2 algebraic exactness across depths and kernels.
void check_discrete_level2() {
  bool ok = true;
  std::string detail;
  const FbmKernel fbm(0.75);
  const ExplicitFKernel flat = constant_density_kernel(1.0);
  double worst = 0.0;
  for (int m = 0; m <= 10; ++m) {
    const double fbm_rel =
        std::abs(discrete_expected_word(Word{1, 1},
                                        dyadic_c_matrix(fbm, m, 1.0)) -
                 0.5) /
        0.5;
    const double flat_rel =
        std::abs(discrete_expected_word(Word{1, 1},
                                        dyadic_c_matrix(flat, m, 1.0)) -
                 0.5) /
        0.5;
    worst = std::max({worst, fbm_rel, flat_rel});
  }
  if (worst > 1e-12) ok = false;
  report(4, "discrete level-2 coefficient equals R(T,T)/2 exactly", ok,
         "worst rel err " + fmt(worst) + " over m<=10, fbm and flat");
}

// 5. Normalization identity of the singular-quadrature path.
void check_normalization() {
  const double at75 = std::abs(unit_square_normalization(0.75) - 1.0);
  const double at51 = std::abs(unit_square_normalization(0.51) - 1.0);
  const bool ok = at75 <= 1e-6 && at51 <= 1e-4;
  report(5, "unit-square normalization returns 1", ok,
         "H=0.75 err=" + fmt(at75) + ", H=0.51 err=" + fmt(at51));
}

// 6. Brownian limit: |I_2(H) - 1/8| strictly decreasing toward H = 1/2 and
//    < 0.02 at H = 0.51; non-canonical terms at (1,1,1,1) stay under the
//    cross-pairing bound.
void check_brownian_limit() {
  bool ok = true;
  std::string detail;
  double prev = 1.0;
  for (double hurst : {0.6, 0.55, 0.51}) {
    const double gap =
        std::abs(canonical_In(2, hurst, mc(1'000, 0)).value - 0.125);
    if (gap >= prev) ok = false;
    prev = gap;
    detail += "gap(" + fmt(hurst) + ")=" + fmt(gap) + "; ";
  }
  if (prev >= 0.02) ok = false;

  const Pairing canonical = canonical_pairing(2);
  for (double hurst : {0.55, 0.75}) {
    const FbmKernel k(hurst);
    const double bound = 0.5 * (1.0 - std::pow(2.0, 1.0 - 2.0 * hurst));
    for (const Pairing& pi : enumerate_pairings(2)) {
      if (pi == canonical) continue;
      const auto est = simplex_pairing_integral(
          pi, k, 2, 1.0,
          mc(200'000, 301,
             hurst < 0.65 ? QuadratureMethod::SortedStratifiedMonteCarlo
                          : QuadratureMethod::MonteCarlo));
      if (est.value > bound + 3.0 * est.std_error) {
        ok = false;
        detail += "cross term " + fmt(est.value) + " > bound " + fmt(bound) +
                  " at H=" + fmt(hurst) + "; ";
      }
    }
  }
  report(6, "canonical term approaches 1/8, cross terms obey the bound", ok,
         detail);
}

// 7. Brownian reference coefficients are exact.
void check_brownian_reference() {
  const ExpectedSignatureReport report_bm =
      brownian_expected_signature(2, 4, 1.0);
  double at11 = 0.0, at1122 = 0.0, at1212 = 0.0;
  for (const TermEntry& t : report_bm.terms) {
    if (t.word == Word{1, 1}) at11 = t.value;
    if (t.word == Word{1, 1, 2, 2}) at1122 = t.value;
    if (t.word == Word{1, 2, 1, 2}) at1212 = t.value;
  }
  const bool ok = at11 == 0.5 && at1122 == 0.125 && at1212 == 0.0;
  report(7, "brownian reference coefficients are exact", ok,
         "(1,1)=" + fmt(at11) + " (1,1,2,2)=" + fmt(at1122) + " (1,2,1,2)=" +
             fmt(at1212));
}

// 8. Horizon scaling: the T = 2 level-2 coefficient matches R(2,2)/2 =
//    2^{2H}/2, pinning the T^{2Hn} scaling.
void check_horizon_scaling() {
  const double hurst = 0.75;
  const FbmKernel k(hurst);
  const auto est =
      expected_word_coefficient(Word{1, 1}, k, 2.0, mc(200'000, 401));
  const double want = std::pow(2.0, 2.0 * hurst) / 2.0;
  const double err = std::abs(est.value - want);
  const bool ok = err <= 3.0 * est.std_error;
  report(8, "horizon scaling matches R(T,T)/2 at T=2", ok,
         "value=" + fmt(est.value) + " want=" + fmt(want) + " err=" +
             fmt(err) + " 3se=" + fmt(3.0 * est.std_error));
}

// 9. Chen and shuffle identities on 100 random polylines within 1e-12.
void check_pathwise_identities() {
  std::mt19937_64 rng(20'240'501);
  double worst_chen = 0.0, worst_shuffle = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const int d = 1 + static_cast<int>(rng() % 3);
    const int truncation = 1 + static_cast<int>(rng() % 5);
    const int segments = 2 + static_cast<int>(rng() % 5);
    const auto inc = oracle::random_polyline(rng, segments, d);

    const TensorSeries whole =
        signature_of_piecewise_linear(inc, d, truncation);
    const std::size_t cut = 1 + rng() % (segments - 1);
    const TensorSeries glued = tensor_mul(
        signature_of_piecewise_linear(
            std::vector<std::vector<double>>(inc.begin(), inc.begin() + cut),
            d, truncation),
        signature_of_piecewise_linear(
            std::vector<std::vector<double>>(inc.begin() + cut, inc.end()),
            d, truncation));
    for (int k = 0; k <= truncation; ++k) {
      for (std::size_t i = 0; i < whole.level(k).size(); ++i) {
        worst_chen = std::max(
            worst_chen, std::abs(whole.level(k)[i] - glued.level(k)[i]));
      }
    }

    // One random shuffle pair per polyline with |u| + |v| <= truncation.
    if (truncation < 2) continue;
    const int lu = 1 + static_cast<int>(rng() % (truncation - 1));
    const int lv =
        1 + static_cast<int>(rng() % static_cast<unsigned>(truncation - lu));
    std::vector<int> u(lu), v(lv);
    for (int& x : u) x = 1 + static_cast<int>(rng() % d);
    for (int& x : v) x = 1 + static_cast<int>(rng() % d);
    double rhs = 0.0;
    for (const auto& [w, count] : oracle::shuffle_expand(u, v)) {
      rhs += count * project_word(whole, w);
    }
    const double lhs =
        project_word(whole, Word(u)) * project_word(whole, Word(v));
    worst_shuffle = std::max(worst_shuffle, std::abs(lhs - rhs));
  }
  const bool ok = worst_chen <= 1e-12 && worst_shuffle <= 1e-12;
  report(9, "Chen and shuffle identities hold on random polylines", ok,
         "worst chen=" + fmt(worst_chen) + " shuffle=" + fmt(worst_shuffle));
}

// 10. CLI reproducibility: repeated runs with one seed and config are byte
//     identical, across all three subcommands.
#ifdef EXPSIG_CLI_PATH
std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void check_cli_reproducibility() {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / "expsig_acceptance_cli";
  fs::create_directories(dir);
  const std::string cli = EXPSIG_CLI_PATH;
  const std::vector<std::string> runs = {
      " compute --kernel fbm --hurst 0.7 -d 2 -N 4 -T 1 --samples 20000"
      " --seed 11 --out ",
      " verify --kernel fbm --hurst 0.75 -d 1 -N 2 -m 4 --mc-m 5"
      " --mc-samples 4000 --samples 20000 --seed 11 --out ",
      " hsweep --grid 0.6 0.75 -n 2 --samples 20000 --seed 11 --out ",
  };
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const fs::path out1 = dir / ("run" + std::to_string(i) + "a.txt");
    const fs::path out2 = dir / ("run" + std::to_string(i) + "b.txt");
    const int rc1 =
        std::system((cli + runs[i] + out1.string() + " >/dev/null 2>&1").c_str());
    const int rc2 =
        std::system((cli + runs[i] + out2.string() + " >/dev/null 2>&1").c_str());
    if (rc1 != 0 || rc2 != 0) {
      ok = false;
      detail += "run " + std::to_string(i) + " exit " + std::to_string(rc1) +
                "/" + std::to_string(rc2) + "; ";
      continue;
    }
    const std::string b1 = slurp(out1), b2 = slurp(out2);
    if (b1.empty() || b1 != b2) {
      ok = false;
      detail += "run " + std::to_string(i) + " outputs differ; ";
    }
  }
  report(10, "CLI reruns with a fixed seed are byte-identical", ok,
         detail.empty() ? "compute, verify, hsweep" : detail);
}
#else
void check_cli_reproducibility() {
  report(10, "CLI reruns with a fixed seed are byte-identical", false,
         "CLI binary not built; enable EXPSIG_BUILD_TOOLS");
}
#endif

}  // namespace

int main() {
  check_level2_exactness();
  check_level4_moment();
  check_oracle_triangle();
  check_discrete_level2();
  check_normalization();
  check_brownian_limit();
  check_brownian_reference();
  check_horizon_scaling();
  check_pathwise_identities();
  check_cli_reproducibility();
  if (failures == 0) {
    std::cout << "all acceptance checks passed\n";
  } else {
    std::cout << failures << " acceptance check(s) failed\n";
  }
  return failures;
}
