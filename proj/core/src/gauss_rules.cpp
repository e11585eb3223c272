// SPDX-License-Identifier: Apache-2.0
#include "expsig/gauss_rules.hpp"

#include <cmath>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "expsig/errors.hpp"

namespace expsig {

QuadratureRule gauss_jacobi_unit(int npoints, double alpha, double beta) {
  if (npoints < 1) {
    throw ArgumentError("gauss rule: need at least one node");
  }
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw ArgumentError("gauss rule: weight exponents must exceed -1");
  }

  // Monic Jacobi recurrence coefficients on [-1, 1] for (1-x)^a (1+x)^b.
  const double a = alpha;
  const double b = beta;
  Eigen::VectorXd diag(npoints);
  Eigen::VectorXd subdiag(npoints > 1 ? npoints - 1 : 1);
  diag(0) = (b - a) / (a + b + 2.0);
  for (int k = 1; k < npoints; ++k) {
    const double s = 2.0 * k + a + b;
    diag(k) = (b * b - a * a) / (s * (s + 2.0));
    double bk2;
    if (k == 1) {
      bk2 = 4.0 * (1.0 + a) * (1.0 + b) /
            ((a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0));
    } else {
      bk2 = 4.0 * k * (k + a) * (k + b) * (k + a + b) /
            (s * s * (s + 1.0) * (s - 1.0));
    }
    subdiag(k - 1) = std::sqrt(bk2);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, subdiag.head(std::max(npoints - 1, 0)),
                                Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericError("gauss rule: eigenvalue decomposition failed");
  }

  // Zeroth moment of the [0, 1] weight: B(beta + 1, alpha + 1).
  const double mu0 = std::beta(beta + 1.0, alpha + 1.0);

  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(npoints));
  rule.weights.resize(static_cast<std::size_t>(npoints));
  for (int i = 0; i < npoints; ++i) {
    rule.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 + solver.eigenvalues()(i));
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
  }
  return rule;
}

}  // namespace expsig
