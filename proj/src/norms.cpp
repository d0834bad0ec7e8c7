#include "adiosc/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace adiosc {

double discrete_inner(const Mat& u_vals, const Mat& v_vals, const CollocationGrid& grid) {
  if (!u_vals.same_shape(v_vals) || u_vals.rows() != static_cast<int>(grid.xi_x.size()) ||
      u_vals.cols() != static_cast<int>(grid.xi_y.size()))
    throw std::invalid_argument("discrete_inner: grid/value shape mismatch");
  double acc = 0.0;
  for (int i = 0; i < u_vals.rows(); ++i) {
    double rowacc = 0.0;
    for (int j = 0; j < u_vals.cols(); ++j) rowacc += grid.wy[j] * u_vals(i, j) * v_vals(i, j);
    acc += grid.wx[i] * rowacc;
  }
  return acc;
}

double hnorm_error(const HermiteBasis1D& bx, const HermiteBasis1D& by, const Mat& gamma,
                   const ExactField& exact, int level) {
  if (level < 0 || level > 2) throw std::invalid_argument("hnorm_error: level must be 0..2");
  if (!exact.u || (level >= 1 && (!exact.ux || !exact.uy)) ||
      (level >= 2 && (!exact.uxx || !exact.uxy || !exact.uyy)))
    throw std::invalid_argument("hnorm_error: missing derivative callbacks for this level");

  const GaussRule& q = gauss_rule(10);
  const Partition1D& px = bx.partition;
  const Partition1D& py = by.partition;
  double acc = 0.0;
  for (int ci = 0; ci < px.elements(); ++ci) {
    for (int cj = 0; cj < py.elements(); ++cj) {
      for (int gi = 0; gi < q.count; ++gi) {
        const double x = px.nodes[ci] + q.nodes[gi] * px.widths[ci];
        const double wxv = px.widths[ci] * q.weights[gi];
        for (int gj = 0; gj < q.count; ++gj) {
          const double y = py.nodes[cj] + q.nodes[gj] * py.widths[cj];
          const double w = wxv * py.widths[cj] * q.weights[gj];
          double cell = 0.0;
          const double d00 = exact.u(x, y) - eval_spline_2d(bx, by, gamma, x, y, 0, 0);
          cell += d00 * d00;
          if (level >= 1) {
            const double d10 = exact.ux(x, y) - eval_spline_2d(bx, by, gamma, x, y, 1, 0);
            const double d01 = exact.uy(x, y) - eval_spline_2d(bx, by, gamma, x, y, 0, 1);
            cell += d10 * d10 + d01 * d01;
          }
          if (level >= 2) {
            const double d20 = exact.uxx(x, y) - eval_spline_2d(bx, by, gamma, x, y, 2, 0);
            const double d11 = exact.uxy(x, y) - eval_spline_2d(bx, by, gamma, x, y, 1, 1);
            const double d02 = exact.uyy(x, y) - eval_spline_2d(bx, by, gamma, x, y, 0, 2);
            cell += d20 * d20 + d11 * d11 + d02 * d02;
          }
          acc += w * cell;
        }
      }
    }
  }
  return std::sqrt(acc);
}

double linf_error(const HermiteBasis1D& bx, const HermiteBasis1D& by, const Mat& gamma,
                  const std::function<double(double, double)>& exact, int samples_per_cell) {
  if (samples_per_cell < 2) throw std::invalid_argument("linf_error: need at least 2 samples/cell");
  const Partition1D& px = bx.partition;
  const Partition1D& py = by.partition;
  const int s = samples_per_cell;
  double m = 0.0;
  for (int ci = 0; ci < px.elements(); ++ci) {
    for (int cj = 0; cj < py.elements(); ++cj) {
      for (int a = 0; a < s; ++a) {
        const double x = px.nodes[ci] + px.widths[ci] * a / (s - 1);
        for (int b = 0; b < s; ++b) {
          const double y = py.nodes[cj] + py.widths[cj] * b / (s - 1);
          const double d = std::fabs(exact(x, y) - eval_spline_2d(bx, by, gamma, x, y, 0, 0));
          m = std::max(m, d);
        }
      }
    }
  }
  return m;
}

double nodal_derivative_error(const HermiteBasis1D& bx, const HermiteBasis1D& by, const Mat& gamma,
                              const std::function<double(double, double)>& exact_x,
                              const std::function<double(double, double)>& exact_y) {
  const Partition1D& px = bx.partition;
  const Partition1D& py = by.partition;
  double m = 0.0;
  for (double x : px.nodes) {
    for (double y : py.nodes) {
      const double dx = std::fabs(exact_x(x, y) - eval_spline_2d(bx, by, gamma, x, y, 1, 0));
      const double dy = std::fabs(exact_y(x, y) - eval_spline_2d(bx, by, gamma, x, y, 0, 1));
      m = std::max(m, std::max(dx, dy));
    }
  }
  return m;
}

double convergence_rate(double e_coarse, double e_fine, double h_coarse, double h_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0))
    throw std::domain_error("convergence_rate: error values must be positive");
  if (!(h_coarse > h_fine) || !(h_fine > 0.0))
    throw std::domain_error("convergence_rate: need h_coarse > h_fine > 0");
  return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

}  // namespace adiosc
