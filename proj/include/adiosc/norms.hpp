#pragma once

#include <functional>

#include "adiosc/hermite.hpp"
#include "adiosc/mat.hpp"
#include "adiosc/mesh.hpp"

namespace adiosc {

// Partial derivatives of a comparison function at a fixed time, as needed by
// the Sobolev-norm error measurements (ux..uyy may be empty for level 0).
struct ExactField {
  std::function<double(double, double)> u, ux, uy, uxx, uxy, uyy;
};

struct ErrorReport {
  int n = 0;
  double dt = 0.0;
  double alpha = 0.0;
  // negative = not measured
  double l2 = -1.0, linf = -1.0, h1 = -1.0, h2 = -1.0, nodal = -1.0;
  double wall_seconds = 0.0;
};

// Discrete inner product over the collocation grid:
// sum_{i,j} (h_i w_k)(h_j w_l) u(xi) v(xi).
double discrete_inner(const Mat& u_vals, const Mat& v_vals, const CollocationGrid& grid);

// H^level error of the spline against the exact field by composite 10x10-point
// Gauss quadrature per mesh cell, summing all partials a1+a2 <= level
// (including the mixed one at level 2).
double hnorm_error(const HermiteBasis1D& bx, const HermiteBasis1D& by, const Mat& gamma,
                   const ExactField& exact, int level);

// Max |u - U| over samples_per_cell^2 equally spaced points per cell,
// endpoints included. samples_per_cell >= 2.
double linf_error(const HermiteBasis1D& bx, const HermiteBasis1D& by, const Mat& gamma,
                  const std::function<double(double, double)>& exact, int samples_per_cell);

// Max over all partition nodes (boundary included) of |U_x - u_x| and
// |U_y - u_y|: the superconvergent first-derivative measurement.
double nodal_derivative_error(const HermiteBasis1D& bx, const HermiteBasis1D& by, const Mat& gamma,
                              const std::function<double(double, double)>& exact_x,
                              const std::function<double(double, double)>& exact_y);

// log(e_coarse/e_fine) / log(h_coarse/h_fine); rejects non-positive inputs.
double convergence_rate(double e_coarse, double e_fine, double h_coarse, double h_fine);

}  // namespace adiosc
