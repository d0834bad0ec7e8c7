#include "adiosc/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "adiosc/hermite.hpp"
#include "adiosc/mesh.hpp"

namespace adiosc {

DenseLU dense_factor(Mat a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("dense factorization needs a square matrix");
  const long n = a.rows();
  DenseLU f;
  f.perm.resize(static_cast<std::size_t>(n));
  for (long c = 0; c < n; ++c) {
    long piv = c;
    for (long r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (std::abs(a(piv, c)) < 1e-300) throw std::runtime_error("dense matrix is singular");
    f.perm[static_cast<std::size_t>(c)] = static_cast<int>(piv);
    if (piv != c)
      for (long j = 0; j < n; ++j) std::swap(a(c, j), a(piv, j));
    for (long r = c + 1; r < n; ++r) {
      const double m = a(r, c) / a(c, c);
      a(r, c) = m;
      for (long j = c + 1; j < n; ++j) a(r, j) -= m * a(c, j);
    }
  }
  f.lu = std::move(a);
  return f;
}

std::vector<double> dense_solve(const DenseLU& f, std::vector<double> b) {
  const long n = f.lu.rows();
  if (static_cast<long>(b.size()) != n)
    throw std::invalid_argument("right-hand side length does not match the factorization");
  // the factorization swapped whole rows, so the stored multipliers live at
  // final row positions: permute b completely before the triangular solves
  for (long c = 0; c < n; ++c) {
    const long piv = f.perm[static_cast<std::size_t>(c)];
    if (piv != c) std::swap(b[static_cast<std::size_t>(c)], b[static_cast<std::size_t>(piv)]);
  }
  for (long c = 0; c < n; ++c)
    for (long r = c + 1; r < n; ++r)
      b[static_cast<std::size_t>(r)] -= f.lu(r, c) * b[static_cast<std::size_t>(c)];
  for (long r = n - 1; r >= 0; --r) {
    double acc = b[static_cast<std::size_t>(r)];
    for (long j = r + 1; j < n; ++j) acc -= f.lu(r, j) * b[static_cast<std::size_t>(j)];
    b[static_cast<std::size_t>(r)] = acc / f.lu(r, r);
  }
  return b;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) {
      const double s = a(i, j);
      for (long k = 0; k < b.rows(); ++k)
        for (long l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = s * b(k, l);
    }
  return out;
}

namespace {

Mat combine(const Mat& b, const Mat& a, double coeff) {
  Mat out(b.rows(), b.cols());
  for (long i = 0; i < b.rows(); ++i)
    for (long j = 0; j < b.cols(); ++j) out(i, j) = b(i, j) + coeff * a(i, j);
  return out;
}

std::vector<double> flatten(const Mat& f) {
  return std::vector<double>(f.data(), f.data() + f.size());
}

Mat reshape(const std::vector<double>& v, long rows, long cols) {
  Mat out(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) out(i, j) = v[static_cast<std::size_t>(i * cols + j)];
  return out;
}

}  // namespace

Mat dense_kron_solve(const Mat& ax, const Mat& bx, const Mat& ay, const Mat& by, double mu,
                     const Mat& f) {
  if (ax.rows() > 32 || ay.rows() > 32)
    throw std::invalid_argument("dense tensor solve is limited to small meshes");
  const Mat op = kron(combine(bx, ax, mu / 2.0), combine(by, ay, mu / 2.0));
  const DenseLU lu = dense_factor(op);
  return reshape(dense_solve(lu, flatten(f)), f.rows(), f.cols());
}

Mat dense_adi_increment(const Mat& ax, const Mat& bx, const Mat& ay, const Mat& by, double mu,
                        const Mat& f, int corrector_passes) {
  Mat v = dense_kron_solve(ax, bx, ay, by, mu, f);
  const double q = mu * mu / 4.0;
  for (int pass = 0; pass < corrector_passes; ++pass) {
    const Mat t = matmul(matmul(ax, v), transpose(ay));
    Mat fc(f.rows(), f.cols());
    for (long i = 0; i < f.rows(); ++i)
      for (long j = 0; j < f.cols(); ++j) fc(i, j) = f(i, j) + q * t(i, j);
    v = dense_kron_solve(ax, bx, ay, by, mu, fc);
  }
  return v;
}

Mat unfactored_cn_solve(const SchemeConfig& cfg) {
  if (cfg.nx > 8 || cfg.ny > 8)
    throw std::invalid_argument("unfactored reference solve is limited to 8 cells per direction");
  if (!(cfg.dt > 0.0) || std::lround(cfg.t_final / cfg.dt) > 200)
    throw std::invalid_argument("unfactored reference solve is limited to 200 steps");
  if (cfg.problem == nullptr) throw std::invalid_argument("no problem attached to the scheme");

  const GaussRule rule = gauss_rule(2);
  const Partition1D px = uniform_partition(cfg.nx);
  const Partition1D py = uniform_partition(cfg.ny);
  const HermiteBasis1D bxb = hermite_basis(px);
  const HermiteBasis1D byb = hermite_basis(py);
  const CollocationGrid grid = collocation_grid(px, py, rule);
  const CollocationMatrices cmx = assemble_matrices(bxb, rule);
  const CollocationMatrices cmy = assemble_matrices(byb, rule);
  const long steps = std::lround(cfg.t_final / cfg.dt);
  const L1Weights w = build_weights(cfg.alpha, cfg.dt, steps);

  const Mat ax = cmx.dense_a(), bx = cmx.dense_b();
  const Mat ay = cmy.dense_a(), by = cmy.dense_b();
  // B (x) B + mu/2 (A (x) B + B (x) A): the true averaged operator, no
  // tensor-product splitting anywhere
  Mat op = kron(bx, by);
  {
    const Mat axby = kron(ax, by);
    const Mat bxay = kron(bx, ay);
    for (long i = 0; i < op.rows(); ++i)
      for (long j = 0; j < op.cols(); ++j)
        op(i, j) += (w.mu / 2.0) * (axby(i, j) + bxay(i, j));
  }
  const DenseLU lu = dense_factor(op);

  const Problem& p = *cfg.problem;
  const long gx = static_cast<long>(grid.xi_x.size());
  const long gy = static_cast<long>(grid.xi_y.size());
  Mat phi_gauss(gx, gy);
  for (long i = 0; i < gx; ++i)
    for (long j = 0; j < gy; ++j) phi_gauss(i, j) = p.phi(grid.xi_x[i], grid.xi_y[j]);

  Mat coeffs = cfg.init_mode == InitMode::interpolant
                   ? hermite_interpolant_2d(p.varphi, p.varphi_x, p.varphi_y, p.varphi_xy, px, py)
                   : Mat(bxb.dimension, byb.dimension);
  std::vector<Mat> history;
  history.reserve(static_cast<std::size_t>(steps));

  for (long n = 1; n <= steps; ++n) {
    Mat favg(gx, gy);
    const double tn = static_cast<double>(n) * cfg.dt;
    const double tm = static_cast<double>(n - 1) * cfg.dt;
    for (long i = 0; i < gx; ++i)
      for (long j = 0; j < gy; ++j)
        favg(i, j) = 0.5 * (p.f(grid.xi_x[i], grid.xi_y[j], tn) + p.f(grid.xi_x[i], grid.xi_y[j], tm));
    const Mat f = assemble_increment_rhs(cmx, cmy, coeffs, history, w, static_cast<int>(n),
                                         phi_gauss, favg, nullptr);
    const Mat e = reshape(dense_solve(lu, flatten(f)), gx, gy);
    for (long i = 0; i < coeffs.rows(); ++i)
      for (long j = 0; j < coeffs.cols(); ++j) coeffs(i, j) += e(i, j);
    history.push_back(
        colmat_right_applyt(colmat_left_apply(cmx, false, e, nullptr), cmy, false, nullptr));
  }
  return coeffs;
}

double naive_l1_history(const L1Weights& w, const std::vector<double>& series, double phi_value) {
  if (series.size() < 2) throw std::invalid_argument("value series needs at least two entries");
  const int n = static_cast<int>(series.size()) - 1;
  if (static_cast<std::size_t>(n) > w.b.size())
    throw std::out_of_range("value series is longer than the weight table");
  double acc = w.b[0] * ((series[static_cast<std::size_t>(n)] -
                          series[static_cast<std::size_t>(n) - 1]) /
                         w.dt);
  for (int j = 1; j <= n - 1; ++j) {
    const double d =
        w.b[static_cast<std::size_t>(n - j - 1)] - w.b[static_cast<std::size_t>(n - j)];
    acc -= d * ((series[static_cast<std::size_t>(j)] - series[static_cast<std::size_t>(j) - 1]) /
                w.dt);
  }
  acc -= w.b[static_cast<std::size_t>(n) - 1] * phi_value;
  return std::pow(w.dt, 1.0 - w.alpha) / gamma_fn(3.0 - w.alpha) * acc;
}

}  // namespace adiosc
