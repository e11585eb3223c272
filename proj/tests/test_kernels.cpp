// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>
#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "expsig/errors.hpp"
#include "expsig/kernels.hpp"
#include "oracles.hpp"

using namespace expsig;

TEST_SUITE("kernels") {

TEST_CASE("fbm density and covariance match the closed forms") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(0.01, 2.0);
  for (double hurst : {0.55, 0.75, 0.95}) {
    const FbmKernel k(hurst);
    CHECK(k.hurst() == hurst);
    CHECK(k.diagonal_singular());
    CHECK(k.has_closed_form_covariance());
    for (int rep = 0; rep < 50; ++rep) {
      double u = unif(rng), v = unif(rng);
      if (u == v) continue;
      CHECK(k.f(u, v) ==
            doctest::Approx(oracle::fbm_f(u, v, hurst)).epsilon(1e-13));
      CHECK(std::abs(k.f(u, v) - k.f(v, u)) <= 1e-12);
      CHECK(k.covariance(u, v) ==
            doctest::Approx(oracle::fbm_covariance(u, v, hurst))
                .epsilon(1e-13));
    }
  }
}

TEST_CASE("fbm variance is nondecreasing in t") {
  const FbmKernel k(0.75);
  double prev = 0.0;
  for (int i = 1; i <= 40; ++i) {
    const double t = 0.05 * i;
    const double var = k.covariance(t, t);
    CHECK(var >= prev);
    prev = var;
  }
}

TEST_CASE("fbm domain guards") {
  CHECK_THROWS_AS(FbmKernel(0.5), ArgumentError);
  CHECK_THROWS_AS(FbmKernel(1.0), ArgumentError);
  CHECK_THROWS_AS(FbmKernel(0.2), ArgumentError);
  CHECK_THROWS_AS(FbmKernel(std::nan("")), ArgumentError);
  const FbmKernel k(0.75);
  CHECK_THROWS_AS((void)k.f(0.3, 0.3), ArgumentError);
  CHECK_THROWS_AS((void)k.volterra_dK(0.3, 0.3), ArgumentError);
  CHECK_THROWS_AS((void)k.volterra_K(0.3, 0.0), ArgumentError);
}

TEST_CASE("rect increment covariance equals the four-corner combination") {
  const FbmKernel k(0.65);
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unif(0.0, 1.5);
  for (int rep = 0; rep < 50; ++rep) {
    double s = unif(rng), t = unif(rng), sigma = unif(rng), tau = unif(rng);
    if (s > t) std::swap(s, t);
    if (sigma > tau) std::swap(sigma, tau);
    CHECK(k.rect_increment_cov(s, t, sigma, tau) ==
          doctest::Approx(oracle::fbm_rect(s, t, sigma, tau, 0.65))
              .epsilon(1e-11));
  }
}

TEST_CASE("dyadic increment covariance matrices are positive semidefinite") {
  for (double hurst : {0.6, 0.75, 0.9}) {
    const FbmKernel k(hurst);
    const int cells = 16;
    Eigen::MatrixXd c(cells, cells);
    for (int i = 0; i < cells; ++i) {
      for (int j = 0; j < cells; ++j) {
        c(i, j) = k.rect_increment_cov(i / 16.0, (i + 1) / 16.0, j / 16.0,
                                       (j + 1) / 16.0);
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
  }
}

TEST_CASE("singular rectangle quadrature matches the closed form") {
  for (double hurst : {0.6, 0.75}) {
    const FbmKernel k(hurst);
    // Disjoint cells: no singularity inside, band exclusion immaterial.
    const double away = integrate_f_rectangle(k, 0.1, 0.4, 0.5, 0.9, 1e-6);
    CHECK(std::abs(away - k.rect_increment_cov(0.1, 0.4, 0.5, 0.9)) <= 1e-4);
    // Adjacent cells: the singularity sits at one corner, the excluded band
    // holds O(band^2H) mass.
    const double corner = integrate_f_rectangle(k, 0.0, 0.5, 0.5, 1.0, 1e-6);
    CHECK(std::abs(corner - k.rect_increment_cov(0.0, 0.5, 0.5, 1.0)) <= 1e-4);
  }
  // Straddling rectangle, no exclusion: the endpoint-aware path integrates
  // through the diagonal.
  const FbmKernel k(0.75);
  const double full = integrate_f_rectangle(k, 0.0, 1.0, 0.25, 0.75);
  const double closed = k.rect_increment_cov(0.0, 1.0, 0.25, 0.75);
  CHECK(full == doctest::Approx(closed).epsilon(1e-6));
}

TEST_CASE("rectangle quadrature validates its arguments") {
  const FbmKernel k(0.75);
  CHECK_THROWS_AS((void)integrate_f_rectangle(k, 0.5, 0.1, 0.0, 1.0),
                  ArgumentError);
  CHECK_THROWS_AS((void)integrate_f_rectangle(k, 0.0, 1.0, 0.0, 1.0, -1.0),
                  ArgumentError);
  CHECK_THROWS_AS(
      (void)integrate_f_rectangle(k, 0.0, 1.0, 0.0, 1.0, 0.0, -1e-8),
      ArgumentError);
}

TEST_CASE("constant density kernel") {
  const ExplicitFKernel k = constant_density_kernel(2.5);
  CHECK_FALSE(k.diagonal_singular());
  CHECK(k.f(0.3, 0.3) == 2.5);
  CHECK(k.f(0.1, 0.9) == 2.5);
  CHECK(k.has_closed_form_covariance());
  CHECK(k.rect_increment_cov(0.0, 0.5, 0.25, 0.75) ==
        doctest::Approx(2.5 * 0.5 * 0.5).epsilon(1e-14));
  CHECK(k.covariance(0.5, 0.8) == doctest::Approx(2.5 * 0.4).epsilon(1e-14));
}

TEST_CASE("volterra-form fbm reproduces the closed density") {
  const double hurst = 0.75;
  const VolterraKernel vk = fbm_volterra_kernel(hurst);
  const FbmKernel closed(hurst);
  // The K integration runs through an endpoint cutoff, so agreement is at
  // quadrature accuracy, not machine accuracy.
  for (const auto& [u, v] : {std::pair{0.3, 0.7}, {0.9, 0.2}, {0.5, 0.55}}) {
    CHECK(vk.f(u, v) == doctest::Approx(closed.f(u, v)).epsilon(1e-3));
    CHECK(std::abs(vk.f(u, v) - vk.f(v, u)) <= 1e-12);
  }
}

TEST_CASE("regularity screen accepts fbm and flags a non-vanishing kernel") {
  const std::vector<double> grid = {0.1, 0.3, 0.5, 0.7, 0.9};
  CHECK(validate_strict_regularity(fbm_volterra_kernel(0.75), grid, 1.0).ok());
  CHECK(validate_strict_regularity(fbm_volterra_kernel(0.55), grid, 1.0).ok());

  // K := 1 on {s < t} models the Brownian-type jump at the diagonal; its
  // K(r+, r) limit is 1, which the screen must flag at every grid point.
  const VolterraKernel step(
      [](double t, double s) { return s < t ? 1.0 : 0.0; },
      [](double, double) { return 0.0; }, "unit_step",
      /*diagonal_singular=*/false);
  const RegularityReport report =
      validate_strict_regularity(step, grid, 1.0);
  CHECK_FALSE(report.ok());
  CHECK(report.violations.size() == grid.size());

  CHECK_THROWS_AS(
      (void)validate_strict_regularity(step, std::vector<double>{}, 1.0),
      ArgumentError);
  CHECK_THROWS_AS(
      (void)validate_strict_regularity(step, std::vector<double>{1.5}, 1.0),
      ArgumentError);
}

}  // TEST_SUITE("kernels")
