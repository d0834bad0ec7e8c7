#include "adiosc/caputo.hpp"

#include <cmath>
#include <stdexcept>

namespace adiosc {

double gamma_fn(double x) {
  // Lanczos, g = 7, 9 coefficients.
  static const double c[9] = {0.99999999999980993,     676.5203681218851,
                              -1259.1392167224028,     771.32342877765313,
                              -176.61502916214059,     12.507343278686905,
                              -0.13857109526572012,    9.9843695780195716e-6,
                              1.5056327351493116e-7};
  if (x < 0.5) return M_PI / (std::sin(M_PI * x) * gamma_fn(1.0 - x));
  x -= 1.0;
  double acc = c[0];
  for (int i = 1; i < 9; ++i) acc += c[i] / (x + i);
  const double t = x + 7.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, x + 0.5) * std::exp(-t) * acc;
}

L1Weights build_weights(double alpha, double dt, int steps) {
  if (!(alpha > 1.0 && alpha < 2.0))
    throw std::domain_error("build_weights: alpha must lie strictly in (1,2)");
  if (!(dt > 0.0)) throw std::domain_error("build_weights: dt must be positive");
  if (steps < 1) throw std::domain_error("build_weights: need at least one step");
  L1Weights w;
  w.alpha = alpha;
  w.dt = dt;
  w.mu = gamma_fn(3.0 - alpha) * std::pow(dt, alpha);
  w.b.resize(steps);
  w.b[0] = 1.0;
  // b_j = j^{2-a} * ((1 + 1/j)^{2-a} - 1), evaluated via expm1/log1p in long
  // double: the naive difference of powers loses digits for large j and alpha
  // close to 2.
  const long double q = 2.0L - static_cast<long double>(alpha);
  for (int j = 1; j < steps; ++j) {
    const long double lj = static_cast<long double>(j);
    const long double bj = std::expm1(q * std::log1p(1.0L / lj)) * std::pow(lj, q);
    w.b[j] = static_cast<double>(bj);
  }
  return w;
}

HistoryView history_weights(const L1Weights& w, int n) {
  if (n < 1 || n > static_cast<int>(w.b.size()))
    throw std::domain_error("history_weights: step index out of range");
  return HistoryView{&w, n};
}

double l1_caputo_apply(const L1Weights& w, const std::vector<double>& v, double phi_value) {
  const int n = static_cast<int>(v.size()) - 1;
  if (n < 1) throw std::domain_error("l1_caputo_apply: need at least two samples");
  if (n > static_cast<int>(w.b.size()))
    throw std::domain_error("l1_caputo_apply: series longer than the weight table");
  double acc = w.b[0] * ((v[n] - v[n - 1]) / w.dt);
  for (int j = 1; j <= n - 1; ++j)
    acc -= (w.b[n - j - 1] - w.b[n - j]) * ((v[j] - v[j - 1]) / w.dt);
  acc -= w.b[n - 1] * phi_value;
  return std::pow(w.dt, 1.0 - w.alpha) / gamma_fn(3.0 - w.alpha) * acc;
}

}  // namespace adiosc
