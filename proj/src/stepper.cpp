#include "adiosc/stepper.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace adiosc {

namespace {

// run fn(i) for i in [0, rows), chunked over the pool when one is supplied
template <typename F>
void for_rows(ThreadPool* pool, long rows, F&& fn) {
  if (pool) {
    pool->parallel_for(0, static_cast<int>(rows), [&fn](int lo, int hi) {
      for (int i = lo; i < hi; ++i) fn(static_cast<long>(i));
    });
  } else {
    for (long i = 0; i < rows; ++i) fn(i);
  }
}

long steps_from(const SchemeConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (!(cfg.t_final > 0.0)) throw std::invalid_argument("final time must be positive");
  const double ratio = cfg.t_final / cfg.dt;
  const long m = std::lround(ratio);
  if (m < 1 || std::abs(ratio - static_cast<double>(m)) >
                   1e-12 * std::max(1.0, static_cast<double>(m))) {
    throw std::invalid_argument("time step must divide the final time evenly");
  }
  return m;
}

const SchemeConfig& validated(const SchemeConfig& cfg) {
  if (!(cfg.alpha > 1.0 && cfg.alpha < 2.0))
    throw std::invalid_argument("fractional order must lie strictly between 1 and 2");
  if (cfg.nx < 1 || cfg.ny < 1) throw std::invalid_argument("mesh must have at least one cell");
  if (cfg.problem == nullptr) throw std::invalid_argument("no problem attached to the scheme");
  steps_from(cfg);  // throws when dt does not tile [0, T]
  return cfg;
}

}  // namespace

Mat laplacian_gauss(const CollocationMatrices& cmx, const CollocationMatrices& cmy,
                    const Mat& coeffs, ThreadPool* pool) {
  // u_xx + u_yy at the collocation points; A stores -chi'' so both products
  // enter with a minus sign.
  Mat uxx = colmat_right_applyt(colmat_left_apply(cmx, true, coeffs, pool), cmy, false, pool);
  Mat uyy = colmat_right_applyt(colmat_left_apply(cmx, false, coeffs, pool), cmy, true, pool);
  Mat out(uxx.rows(), uxx.cols());
  const long cols = out.cols();
  for_rows(pool, out.rows(), [&](long i) {
    double* o = out.row(i);
    const double* a = uxx.row(i);
    const double* b = uyy.row(i);
    for (long c = 0; c < cols; ++c) o[c] = -(a[c] + b[c]);
  });
  return out;
}

Mat assemble_increment_rhs(const CollocationMatrices& cmx, const CollocationMatrices& cmy,
                           const Mat& coeffs, const std::vector<Mat>& history,
                           const L1Weights& w, int n, const Mat& phi_gauss, const Mat& f_avg,
                           ThreadPool* pool) {
  if (n < 1 || static_cast<std::size_t>(n) > w.b.size())
    throw std::out_of_range("step index outside the weight table");
  if (history.size() + 1 < static_cast<std::size_t>(n))
    throw std::invalid_argument("history is missing increments for this step");

  Mat lap = laplacian_gauss(cmx, cmy, coeffs, pool);
  if (!lap.same_shape(phi_gauss) || !lap.same_shape(f_avg))
    throw std::invalid_argument("grid shapes disagree in the increment right-hand side");

  Mat f(lap.rows(), lap.cols());
  const long cols = f.cols();
  const double tail = w.dt * w.b[static_cast<std::size_t>(n) - 1];
  for_rows(pool, f.rows(), [&](long i) {
    double* fr = f.row(i);
    // fading-memory sum over past increments, oldest first
    for (int j = 1; j <= n - 1; ++j) {
      const double d = w.b[static_cast<std::size_t>(n - j - 1)] - w.b[static_cast<std::size_t>(n - j)];
      const double* er = history[static_cast<std::size_t>(j) - 1].row(i);
      for (long c = 0; c < cols; ++c) fr[c] += d * er[c];
    }
    const double* ph = phi_gauss.row(i);
    const double* lp = lap.row(i);
    const double* fa = f_avg.row(i);
    for (long c = 0; c < cols; ++c) {
      fr[c] += tail * ph[c];
      fr[c] += w.mu * lp[c];
      fr[c] += w.mu * fa[c];
    }
  });
  return f;
}

AdiStepper::AdiStepper(const SchemeConfig& cfg)
    : cfg_(validated(cfg)),
      rule_(gauss_rule(2)),
      px_(uniform_partition(cfg.nx)),
      py_(uniform_partition(cfg.ny)),
      bx_(hermite_basis(px_)),
      by_(hermite_basis(py_)),
      grid_(collocation_grid(px_, py_, rule_)),
      cmx_(assemble_matrices(bx_, rule_)),
      cmy_(assemble_matrices(by_, rule_)),
      w_(build_weights(cfg.alpha, cfg.dt, steps_from(cfg))) {
  steps_ = static_cast<int>(steps_from(cfg_));
  pool_ = std::make_unique<ThreadPool>(cfg_.threads);
  fx_ = factor_operator(make_abd(cmx_, w_.mu / 2.0), cfg_.backend);
  fy_ = factor_operator(make_abd(cmy_, w_.mu / 2.0), cfg_.backend);

  const Problem& p = *cfg_.problem;
  const long gx = static_cast<long>(grid_.xi_x.size());
  const long gy = static_cast<long>(grid_.xi_y.size());
  phi_gauss_ = Mat(gx, gy);
  for (long i = 0; i < gx; ++i)
    for (long j = 0; j < gy; ++j) phi_gauss_(i, j) = p.phi(grid_.xi_x[i], grid_.xi_y[j]);

  if (cfg_.init_mode == InitMode::interpolant)
    coeffs_ = hermite_interpolant_2d(p.varphi, p.varphi_x, p.varphi_y, p.varphi_xy, px_, py_);
  else
    coeffs_ = Mat(bx_.dimension, by_.dimension);
  hist_.reserve(static_cast<std::size_t>(steps_));
}

Mat AdiStepper::eval_f_gauss(double t) const {
  const Problem& p = *cfg_.problem;
  const long gx = static_cast<long>(grid_.xi_x.size());
  const long gy = static_cast<long>(grid_.xi_y.size());
  Mat out(gx, gy);
  for_rows(pool_.get(), gx, [&](long i) {
    double* o = out.row(i);
    const double x = grid_.xi_x[i];
    for (long j = 0; j < gy; ++j) o[j] = p.f(x, grid_.xi_y[j], t);
  });
  return out;
}

Mat AdiStepper::assemble_rhs(int n) const {
  if (n != n_ + 1) throw std::logic_error("right-hand side requested for a step out of sequence");
  Mat fn = eval_f_gauss(static_cast<double>(n) * cfg_.dt);
  Mat fm = eval_f_gauss(static_cast<double>(n - 1) * cfg_.dt);
  Mat favg(fn.rows(), fn.cols());
  const long rows = favg.rows(), cols = favg.cols();
  for (long i = 0; i < rows; ++i) {
    double* o = favg.row(i);
    const double* a = fn.row(i);
    const double* b = fm.row(i);
    for (long c = 0; c < cols; ++c) o[c] = 0.5 * (a[c] + b[c]);
  }
  return assemble_increment_rhs(cmx_, cmy_, coeffs_, hist_, w_, n, phi_gauss_, favg,
                                pool_.get());
}

void AdiStepper::two_sweep(Mat& f) const {
  const long gx = f.rows(), gy = f.cols();
  // x-direction systems, one per y collocation line
  for_rows(pool_.get(), gy, [&](long c) { fx_->solve_inplace(f.data() + c, gy); });
  // y-direction systems, one per x collocation line
  for_rows(pool_.get(), gx, [&](long i) { fy_->solve_inplace(f.row(i), 1); });
}

void AdiStepper::step() {
  if (n_ >= steps_) throw std::logic_error("time loop already reached the final step");
  const int n = n_ + 1;
  const Mat rhs = assemble_rhs(n);

  Mat v = rhs;
  two_sweep(v);
  // The factored operator adds (mu^2/4) A_x (x) A_y on the left; move that
  // term to the right with the current iterate and re-solve. Two passes leave
  // the splitting residual far below the scheme's own error.
  const double q = w_.mu * w_.mu / 4.0;
  for (int pass = 0; pass < 2; ++pass) {
    Mat t = colmat_right_applyt(colmat_left_apply(cmx_, true, v, pool_.get()), cmy_, true,
                                pool_.get());
    Mat fc(rhs.rows(), rhs.cols());
    const long cols = fc.cols();
    for_rows(pool_.get(), fc.rows(), [&](long i) {
      double* o = fc.row(i);
      const double* r = rhs.row(i);
      const double* tt = t.row(i);
      for (long c = 0; c < cols; ++c) o[c] = r[c] + q * tt[c];
    });
    two_sweep(fc);
    v = std::move(fc);
  }

  const long cols = coeffs_.cols();
  for_rows(pool_.get(), coeffs_.rows(), [&](long i) {
    double* u = coeffs_.row(i);
    const double* dv = v.row(i);
    for (long c = 0; c < cols; ++c) u[c] += dv[c];
  });
  // keep the increment as collocation-point values; the history sum needs
  // nothing else and the evaluation is paid once instead of every step
  hist_.push_back(
      colmat_right_applyt(colmat_left_apply(cmx_, false, v, pool_.get()), cmy_, false,
                          pool_.get()));
  n_ = n;
}

void AdiStepper::run(const Callback& cb) {
  while (n_ < steps_) {
    step();
    if (cb) cb(n_, static_cast<double>(n_) * cfg_.dt, *this);
  }
}

}  // namespace adiosc
