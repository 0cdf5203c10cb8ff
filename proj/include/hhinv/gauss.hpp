#pragma once

#include <vector>

namespace hhinv::quad {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Jacobi rule for the weight (1-x)^alpha (1+x)^beta on [-1, 1].
// Exact for polynomial degree <= 2*order - 1. Requires alpha, beta > -1.
Rule1D gauss_jacobi(int order, double alpha, double beta);

// Generalized Gauss-Laguerre rule for the weight t^alpha e^{-t} on [0, inf).
// Requires alpha > -1. The weights sum to Gamma(alpha + 1).
Rule1D gauss_laguerre(int order, double alpha);

}  // namespace hhinv::quad
