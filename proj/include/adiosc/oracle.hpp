#pragma once

#include <vector>

#include "adiosc/caputo.hpp"
#include "adiosc/mat.hpp"
#include "adiosc/stepper.hpp"

namespace adiosc {

// Deliberately naive dense linear algebra used to cross-check the production
// solvers on small meshes. Nothing here is performance sensitive.

struct DenseLU {
  Mat lu;
  std::vector<int> perm;
};

DenseLU dense_factor(Mat a);
std::vector<double> dense_solve(const DenseLU& f, std::vector<double> b);
Mat kron(const Mat& a, const Mat& b);

// Solves (Bx + mu/2 Ax) (x) (By + mu/2 Ay) vec(V) = vec(F) by forming the
// Kronecker product explicitly. F is indexed x-major like the solver grids.
Mat dense_kron_solve(const Mat& ax, const Mat& bx, const Mat& ay, const Mat& by, double mu,
                     const Mat& f);

// Dense mirror of one predictor/corrector increment solve: the factored
// tensor system above, then `corrector_passes` re-solves with the
// (mu^2/4) Ax V Ay^T term moved to the right-hand side.
Mat dense_adi_increment(const Mat& ax, const Mat& bx, const Mat& ay, const Mat& by, double mu,
                        const Mat& f, int corrector_passes);

// Runs the full time loop with the *unfactored* two-dimensional operator
//   kron(Bx, By) + mu/2 (kron(Ax, By) + kron(Bx, Ay))
// factored densely once. The right-hand side assembly is shared with the
// production stepper, so the two runs differ only in the implicit solve.
// Returns the final coefficient tensor.
Mat unfactored_cn_solve(const SchemeConfig& cfg);

// Direct evaluation of the discrete fractional derivative from a full value
// series u^0..u^n at one point; mirrors l1_caputo_apply term for term.
double naive_l1_history(const L1Weights& w, const std::vector<double>& series, double phi_value);

}  // namespace adiosc
