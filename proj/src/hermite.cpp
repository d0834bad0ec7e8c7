#include "adiosc/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "adiosc/parallel.hpp"

namespace adiosc {

HermiteBasis1D hermite_basis(const Partition1D& p) {
  HermiteBasis1D b;
  b.partition = p;
  b.dimension = 2 * p.elements();
  return b;
}

namespace {

// Cubic Hermite shape functions on the reference coordinate s in [0,1] of an
// element of width h, ordered [left value, left slope, right value, right
// slope]. The slope shapes carry the h factor so that d/dx at the node is 1.
void shape_values(double s, double h, int deriv, double out[4]) {
  switch (deriv) {
    case 0:
      out[0] = 1.0 + s * s * (-3.0 + 2.0 * s);
      out[1] = h * (s * (1.0 + s * (-2.0 + s)));
      out[2] = s * s * (3.0 - 2.0 * s);
      out[3] = h * (s * s * (s - 1.0));
      break;
    case 1:
      out[0] = (6.0 * s * (s - 1.0)) / h;
      out[1] = 1.0 + s * (-4.0 + 3.0 * s);
      out[2] = (6.0 * s * (1.0 - s)) / h;
      out[3] = s * (3.0 * s - 2.0);
      break;
    case 2:
      out[0] = (12.0 * s - 6.0) / (h * h);
      out[1] = (6.0 * s - 4.0) / h;
      out[2] = (6.0 - 12.0 * s) / (h * h);
      out[3] = (6.0 * s - 2.0) / h;
      break;
    default:
      throw std::domain_error("shape_values: derivative order must be 0..2");
  }
}

// 1-based element index containing x, with ties resolved to the left element
// (x exactly at an interior node belongs to the element ending there, which is
// immaterial for C^1 quantities and consistent for C^0 ones).
int find_element(const Partition1D& p, double x) {
  auto it = std::upper_bound(p.nodes.begin(), p.nodes.end(), x);
  int k = static_cast<int>(it - p.nodes.begin());
  k = std::max(1, std::min(k, p.elements()));
  return k;
}

}  // namespace

ActiveBasis eval_basis_1d(const HermiteBasis1D& basis, double x, int deriv) {
  if (x < 0.0 || x > 1.0) throw std::domain_error("eval_basis_1d: x outside [0,1]");
  const Partition1D& p = basis.partition;
  const int k = find_element(p, x);
  const double h = p.widths[k - 1];
  const double s = (x - p.nodes[k - 1]) / h;
  double sh[4];
  shape_values(s, h, deriv, sh);

  const int cand[4] = {basis.value_dof(k - 1), basis.slope_dof(k - 1), basis.value_dof(k),
                       basis.slope_dof(k)};
  ActiveBasis r;
  for (int t = 0; t < 4; ++t) {
    if (cand[t] < 0) continue;  // removed boundary value unknown
    r.index[r.count] = cand[t];
    r.value[r.count] = sh[t];
    ++r.count;
  }
  return r;
}

CollocationMatrices assemble_matrices(const HermiteBasis1D& basis, const GaussRule& rule) {
  if (rule.count != 2)
    throw std::domain_error("assemble_matrices: the cubic space collocates at 2 points/element");
  CollocationMatrices cm;
  cm.m = basis.dimension;
  cm.first_col.assign(cm.m, 0);
  cm.nnz.assign(cm.m, 0);
  cm.b.assign(cm.m, {});
  cm.a.assign(cm.m, {});
  const Partition1D& p = basis.partition;
  for (int k = 1; k <= p.elements(); ++k) {
    for (int q = 0; q < 2; ++q) {
      const int row = 2 * (k - 1) + q;
      const double xi = p.nodes[k - 1] + rule.nodes[q] * p.widths[k - 1];
      const ActiveBasis v0 = eval_basis_1d(basis, xi, 0);
      const ActiveBasis v2 = eval_basis_1d(basis, xi, 2);
      cm.first_col[row] = v0.index[0];
      cm.nnz[row] = v0.count;
      for (int t = 0; t < v0.count; ++t) {
        cm.b[row][t] = v0.value[t];
        cm.a[row][t] = -v2.value[t];
      }
    }
  }
  return cm;
}

Mat CollocationMatrices::dense_b() const {
  Mat d(m, m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < nnz[i]; ++k) d(i, first_col[i] + k) = b[i][k];
  return d;
}

Mat CollocationMatrices::dense_a() const {
  Mat d(m, m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < nnz[i]; ++k) d(i, first_col[i] + k) = a[i][k];
  return d;
}

Mat colmat_left_apply(const CollocationMatrices& cm, bool use_a, const Mat& x, ThreadPool* pool) {
  Mat y(cm.m, x.cols());
  const auto& vals = use_a ? cm.a : cm.b;
  auto body = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      double* yrow = y.row(i);
      for (int k = 0; k < cm.nnz[i]; ++k) {
        const double v = vals[i][k];
        const double* xrow = x.row(cm.first_col[i] + k);
        for (int j = 0; j < x.cols(); ++j) yrow[j] += v * xrow[j];
      }
    }
  };
  if (pool)
    pool->parallel_for(0, cm.m, body);
  else
    body(0, cm.m);
  return y;
}

Mat colmat_right_applyt(const Mat& x, const CollocationMatrices& cm, bool use_a,
                        ThreadPool* pool) {
  Mat y(x.rows(), cm.m);
  const auto& vals = use_a ? cm.a : cm.b;
  auto body = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      const double* xrow = x.row(i);
      double* yrow = y.row(i);
      for (int c = 0; c < cm.m; ++c) {
        double acc = 0.0;
        for (int k = 0; k < cm.nnz[c]; ++k) acc += vals[c][k] * xrow[cm.first_col[c] + k];
        yrow[c] = acc;
      }
    }
  };
  if (pool)
    pool->parallel_for(0, x.rows(), body);
  else
    body(0, x.rows());
  return y;
}

double eval_spline_2d(const HermiteBasis1D& bx, const HermiteBasis1D& by, const Mat& gamma,
                      double x, double y, int dx, int dy) {
  const ActiveBasis ax = eval_basis_1d(bx, x, dx);
  const ActiveBasis ay = eval_basis_1d(by, y, dy);
  double acc = 0.0;
  for (int i = 0; i < ax.count; ++i) {
    double inner = 0.0;
    for (int j = 0; j < ay.count; ++j) inner += gamma(ax.index[i], ay.index[j]) * ay.value[j];
    acc += ax.value[i] * inner;
  }
  return acc;
}

Mat hermite_interpolant_2d(const std::function<double(double, double)>& u,
                           const std::function<double(double, double)>& u_x,
                           const std::function<double(double, double)>& u_y,
                           const std::function<double(double, double)>& u_xy,
                           const Partition1D& px, const Partition1D& py) {
  const HermiteBasis1D bx = hermite_basis(px);
  const HermiteBasis1D by = hermite_basis(py);
  Mat gamma(bx.dimension, by.dimension);
  const int nx = px.elements(), ny = py.elements();
  for (int i = 0; i <= nx; ++i) {
    for (int j = 0; j <= ny; ++j) {
      const double xv = px.nodes[i], yv = py.nodes[j];
      const bool boundary = (i == 0 || i == nx || j == 0 || j == ny);
      const double uv = u(xv, yv);
      if (boundary && std::fabs(uv) > 1e-12)
        throw std::invalid_argument("hermite_interpolant_2d: nonzero boundary value");
      const int vi = bx.value_dof(i), si = bx.slope_dof(i);
      const int vj = by.value_dof(j), sj = by.slope_dof(j);
      if (vi >= 0 && vj >= 0) gamma(vi, vj) = uv;
      if (si >= 0 && vj >= 0) gamma(si, vj) = u_x(xv, yv);
      if (vi >= 0 && sj >= 0) gamma(vi, sj) = u_y(xv, yv);
      if (si >= 0 && sj >= 0) gamma(si, sj) = u_xy(xv, yv);
    }
  }
  return gamma;
}

}  // namespace adiosc
