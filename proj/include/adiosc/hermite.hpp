#pragma once

#include <array>
#include <functional>
#include <vector>

#include "adiosc/mat.hpp"
#include "adiosc/mesh.hpp"

namespace adiosc {

class ThreadPool;

// C^1 piecewise-cubic Hermite space on a partition of [0,1] with homogeneous
// Dirichlet conditions. Each node carries a value and a slope unknown; the
// value unknowns at x=0 and x=1 are removed, the boundary slopes stay.
// Global unknown ordering (dimension M = 2N):
//   slope(0), value(1), slope(1), value(2), slope(2), ..., slope(N-1), slope(N)
// so the unknowns active on element k occupy a contiguous index range, which
// is what gives the collocation matrices their almost-block-diagonal shape.
struct HermiteBasis1D {
  Partition1D partition;
  int dimension = 0;  // 2N

  int elements() const { return partition.elements(); }
  // -1 for the removed boundary value unknowns
  int value_dof(int node) const {
    return (node >= 1 && node <= elements() - 1) ? 2 * node - 1 : -1;
  }
  int slope_dof(int node) const {
    if (node == 0) return 0;
    if (node == elements()) return dimension - 1;
    return 2 * node;
  }
};

HermiteBasis1D hermite_basis(const Partition1D& p);

// The <=4 basis functions that are nonzero at x, with global indices in
// ascending order. Derivatives are in global coordinates.
struct ActiveBasis {
  int count = 0;
  std::array<int, 4> index{};
  std::array<double, 4> value{};
};

ActiveBasis eval_basis_1d(const HermiteBasis1D& basis, double x, int deriv);

// Collocation matrices at the 2-point Gauss grid, stored by row: row i (one
// Gauss point) has nnz[i] consecutive active columns starting at first_col[i].
//   b[i][k] =  chi_{first_col[i]+k}(xi_i)
//   a[i][k] = -chi''_{first_col[i]+k}(xi_i)
struct CollocationMatrices {
  int m = 0;
  std::vector<int> first_col;
  std::vector<int> nnz;
  std::vector<std::array<double, 4>> b;
  std::vector<std::array<double, 4>> a;

  Mat dense_b() const;
  Mat dense_a() const;
};

CollocationMatrices assemble_matrices(const HermiteBasis1D& basis, const GaussRule& rule);

// y = Op x  with Op one of the two collocation matrices (rows are sparse):
// y(i,:) = sum_k val[i][k] * x(first_col[i]+k, :)
Mat colmat_left_apply(const CollocationMatrices& cm, bool use_a, const Mat& x, ThreadPool* pool);

// y = x Op^T: y(:,i) = sum_k val[i][k] * x(:, first_col[i]+k)
Mat colmat_right_applyt(const Mat& x, const CollocationMatrices& cm, bool use_a, ThreadPool* pool);

// Tensor-product spline evaluation: d^{dx+dy} U / dx^{dx} dy^{dy} at (x,y),
// where U = sum_{ij} gamma(i,j) chi_i(x) psi_j(y). dx, dy in 0..2.
double eval_spline_2d(const HermiteBasis1D& bx, const HermiteBasis1D& by, const Mat& gamma,
                      double x, double y, int dx = 0, int dy = 0);

// Piecewise Hermite bicubic interpolant: matches u, u_x, u_y, u_xy at every
// node. u must vanish on the boundary (checked to 1e-12); the boundary value
// unknowns are omitted, boundary slopes are kept.
Mat hermite_interpolant_2d(const std::function<double(double, double)>& u,
                           const std::function<double(double, double)>& u_x,
                           const std::function<double(double, double)>& u_y,
                           const std::function<double(double, double)>& u_xy,
                           const Partition1D& px, const Partition1D& py);

}  // namespace adiosc
