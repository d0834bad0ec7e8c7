#pragma once

#include <vector>

namespace adiosc {

// Gamma function via the Lanczos approximation (g = 7, 9 coefficients) with a
// reflection branch for x < 1/2. No dependence on platform tgamma.
double gamma_fn(double x);

// L1 convolution coefficients for the Caputo derivative of order alpha in
// (1,2) on a uniform time grid:
//   b_j = (j+1)^{2-alpha} - j^{2-alpha},   mu = Gamma(3-alpha) * dt^alpha.
// The b_j are positive, strictly decreasing, and telescoping:
//   sum_{j=1}^{n} b_{j-1} = n^{2-alpha}.
struct L1Weights {
  double alpha = 0.0;
  double dt = 0.0;
  double mu = 0.0;
  std::vector<double> b;
};

// Throws std::domain_error unless 1 < alpha < 2 strictly and dt > 0.
// b is filled for j = 0..steps-1.
L1Weights build_weights(double alpha, double dt, int steps);

// View of the step-n history coefficients:
//   d_j = b_{n-j-1} - b_{n-j} for j = 1..n-1, and the tail b_{n-1}.
// All d_j > 0 and sum_j d_j + tail = 1 (telescoping).
struct HistoryView {
  const L1Weights* w = nullptr;
  int n = 0;
  int count() const { return n - 1; }
  double diff(int j) const { return w->b[n - j - 1] - w->b[n - j]; }
  double tail() const { return w->b[n - 1]; }
};

HistoryView history_weights(const L1Weights& w, int n);

// L1 approximation of the Caputo derivative at t_{n-1/2} of the scalar series
// v^0..v^n (n = v.size()-1), with initial slope phi_value:
//   dt^{1-alpha}/Gamma(3-alpha) * [ b_0 d_t v^n
//         - sum_{j=1}^{n-1} (b_{n-j-1} - b_{n-j}) d_t v^j - b_{n-1} phi ]
// where d_t v^j = (v^j - v^{j-1})/dt.
double l1_caputo_apply(const L1Weights& w, const std::vector<double>& v, double phi_value);

}  // namespace adiosc
