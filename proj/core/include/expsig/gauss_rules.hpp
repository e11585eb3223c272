// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace expsig {

/// Nodes and weights of a quadrature rule on [0, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Jacobi rule for the weight (1-s)^alpha * s^beta on [0, 1]:
///   integral_0^1 (1-s)^alpha s^beta phi(s) ds ~= sum_i w_i phi(s_i),
/// exact for polynomial phi up to degree 2*npoints - 1. Both exponents must
/// exceed -1; alpha = beta = 0 is Gauss-Legendre. Nodes and weights come from
/// the Golub-Welsch eigenvalue decomposition of the Jacobi recurrence matrix,
/// which is what makes power-law endpoint singularities exact rather than
/// merely resolved.
QuadratureRule gauss_jacobi_unit(int npoints, double alpha, double beta);

}  // namespace expsig
