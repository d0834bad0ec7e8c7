#pragma once

#include <vector>

namespace adiosc {

// Spatial partition of [0,1]. Values are immutable after construction and safe
// to share across threads.
struct Partition1D {
  std::vector<double> nodes;   // x_0 = 0 < x_1 < ... < x_N = 1
  std::vector<double> widths;  // h_k = x_k - x_{k-1}
  double h_max = 0.0;
  double h_min = 0.0;

  int elements() const { return static_cast<int>(widths.size()); }
  double quasi_uniformity() const { return h_max / h_min; }
};

// nodes i/N, i = 0..N. Throws std::domain_error for N = 0.
Partition1D uniform_partition(int n);

// General partition from a node list; validates monotonicity and endpoints.
// A quasi-uniformity ratio above 10 is reported on stderr (the solver stays
// correct, only the approximation constants degrade).
Partition1D make_partition(std::vector<double> nodes);

// Gauss-Legendre rule mapped to [0,1]: nodes in (0,1), weights sum to 1,
// exact for polynomials of degree <= 2*count - 1.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int count = 0;
};

// count in [1,16]. Nodes and weights are computed once by Newton iteration on
// the Legendre polynomials (residual <= 1e-15) and cached for the process.
const GaussRule& gauss_rule(int count);

// Tensor grid of collocation points xi_{i,k} = x_{i-1} + lambda_k * h_i with
// per-point quadrature weights h_i * omega_k in each direction.
struct CollocationGrid {
  std::vector<double> xi_x, xi_y;  // size 2*Nx and 2*Ny for the 2-point rule
  std::vector<double> wx, wy;
};

// Requires the 2-point rule (the collocation space is piecewise cubic).
CollocationGrid collocation_grid(const Partition1D& px, const Partition1D& py,
                                 const GaussRule& rule);

}  // namespace adiosc
