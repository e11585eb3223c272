// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include <doctest.h>

#include "expsig/errors.hpp"
#include "expsig/gauss_rules.hpp"

using namespace expsig;

TEST_SUITE("gauss_rules") {

TEST_CASE("legendre rules integrate polynomials up to degree 2n-1") {
  for (int npoints : {1, 2, 4, 8, 16}) {
    const QuadratureRule rule = gauss_jacobi_unit(npoints, 0.0, 0.0);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(npoints));
    for (int degree = 0; degree <= 2 * npoints - 1; ++degree) {
      double sum = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * std::pow(rule.nodes[i], degree);
      }
      CHECK(sum == doctest::Approx(1.0 / (degree + 1)).epsilon(1e-13));
    }
  }
}

TEST_CASE("jacobi rules integrate the weighted monomials exactly") {
  // integral_0^1 (1-s)^alpha s^(beta+k) ds = B(beta+k+1, alpha+1).
  for (const auto& [alpha, beta] : {std::pair{1.0, 0.5}, {0.0, -0.48},
                                    {-0.5, 0.0}, {2.4, 1.2}}) {
    const QuadratureRule rule = gauss_jacobi_unit(16, alpha, beta);
    for (int k = 0; k <= 31; ++k) {
      double sum = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * std::pow(rule.nodes[i], k);
      }
      CHECK(sum ==
            doctest::Approx(std::beta(beta + k + 1, alpha + 1))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("nodes are interior and increasing, weights positive") {
  const QuadratureRule rule = gauss_jacobi_unit(12, 0.6, -0.3);
  double prev = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    CHECK(rule.nodes[i] > prev);
    CHECK(rule.nodes[i] < 1.0);
    CHECK(rule.weights[i] > 0.0);
    prev = rule.nodes[i];
  }
}

TEST_CASE("invalid rule parameters are rejected") {
  CHECK_THROWS_AS((void)gauss_jacobi_unit(0, 0.0, 0.0), ArgumentError);
  CHECK_THROWS_AS((void)gauss_jacobi_unit(4, -1.0, 0.0), ArgumentError);
  CHECK_THROWS_AS((void)gauss_jacobi_unit(4, 0.0, -1.2), ArgumentError);
}

}  // TEST_SUITE("gauss_rules")
