#include "adiosc/problems.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "adiosc/caputo.hpp"

namespace adiosc {

double caputo_power(double alpha, double p, double t) {
  if (!(p > 1.0)) throw std::domain_error("caputo_power: need p > 1");
  if (t == 0.0) {
    if (p > alpha) return 0.0;
    throw std::domain_error("caputo_power: diverges at t = 0 for p <= alpha");
  }
  return gamma_fn(p + 1.0) / gamma_fn(p + 1.0 - alpha) * std::pow(t, p - alpha);
}

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0))
    throw std::domain_error("problem: alpha must lie strictly in (1,2)");
}

std::function<double(double, double)> zero2() {
  return [](double, double) { return 0.0; };
}

}  // namespace

Problem trig_problem(double alpha) {
  check_alpha(alpha);
  const double pi = M_PI;
  const double cap = gamma_fn(3.0 + alpha) / 2.0;  // Caputo of t^{2+alpha} = cap * t^2
  auto S = [pi](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); };
  auto tf = [alpha](double t) { return std::pow(t, 2.0 + alpha); };

  Problem p;
  p.name = "trig";
  p.t_final = 1.0;
  p.varphi = zero2();
  p.phi = zero2();
  p.varphi_x = zero2();
  p.varphi_y = zero2();
  p.varphi_xy = zero2();
  p.f = [S, cap, pi, alpha, tf](double x, double y, double t) {
    return (cap * t * t + 2.0 * pi * pi * tf(t)) * S(x, y);
  };
  p.has_exact = true;
  p.u = [S, tf](double x, double y, double t) { return tf(t) * S(x, y); };
  p.u_t = [S, alpha](double x, double y, double t) {
    return (2.0 + alpha) * std::pow(t, 1.0 + alpha) * S(x, y);
  };
  p.u_x = [pi, tf](double x, double y, double t) {
    return tf(t) * pi * std::cos(pi * x) * std::sin(pi * y);
  };
  p.u_y = [pi, tf](double x, double y, double t) {
    return tf(t) * pi * std::sin(pi * x) * std::cos(pi * y);
  };
  p.u_xy = [pi, tf](double x, double y, double t) {
    return tf(t) * pi * pi * std::cos(pi * x) * std::cos(pi * y);
  };
  p.u_xx = [pi, S, tf](double x, double y, double t) { return -pi * pi * tf(t) * S(x, y); };
  p.u_yy = [pi, S, tf](double x, double y, double t) { return -pi * pi * tf(t) * S(x, y); };
  p.u_caputo = [S, cap](double x, double y, double t) { return cap * t * t * S(x, y); };
  return p;
}

Problem poly_problem(double alpha) {
  check_alpha(alpha);
  const double cap = gamma_fn(3.0 + alpha) / 2.0;
  auto gx = [](double x) { return x * (1.0 - x); };
  auto tf = [alpha](double t) { return std::pow(t, 2.0 + alpha); };

  Problem p;
  p.name = "poly";
  p.t_final = 1.0;
  p.varphi = zero2();
  p.phi = zero2();
  p.varphi_x = zero2();
  p.varphi_y = zero2();
  p.varphi_xy = zero2();
  p.f = [gx, cap, tf](double x, double y, double t) {
    return cap * t * t * gx(x) * gx(y) + tf(t) * 2.0 * (gx(x) + gx(y));
  };
  p.has_exact = true;
  p.u = [gx, tf](double x, double y, double t) { return tf(t) * gx(x) * gx(y); };
  p.u_t = [gx, alpha](double x, double y, double t) {
    return (2.0 + alpha) * std::pow(t, 1.0 + alpha) * gx(x) * gx(y);
  };
  p.u_x = [gx, tf](double x, double y, double t) { return tf(t) * (1.0 - 2.0 * x) * gx(y); };
  p.u_y = [gx, tf](double x, double y, double t) { return tf(t) * gx(x) * (1.0 - 2.0 * y); };
  p.u_xy = [tf](double x, double y, double t) {
    return tf(t) * (1.0 - 2.0 * x) * (1.0 - 2.0 * y);
  };
  p.u_xx = [gx, tf](double x, double y, double t) {
    (void)x;
    return -2.0 * tf(t) * gx(y);
  };
  p.u_yy = [gx, tf](double x, double y, double t) {
    (void)y;
    return -2.0 * tf(t) * gx(x);
  };
  p.u_caputo = [gx, cap](double x, double y, double t) { return cap * t * t * gx(x) * gx(y); };
  return p;
}

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names = {"trig", "poly"};
  return names;
}

Problem make_problem(const std::string& name, double alpha) {
  if (name == "trig") return trig_problem(alpha);
  if (name == "poly") return poly_problem(alpha);
  throw std::invalid_argument("unknown problem '" + name + "'");
}

double pde_residual_max(const Problem& p, int npts, uint64_t seed) {
  if (!p.has_exact) throw std::invalid_argument("pde_residual_max: problem has no exact solution");
  std::mt19937_64 rng(seed);
  auto unit = [&rng] {
    // uniform in (0,1), never exactly 0 or 1
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  };
  double worst = 0.0;
  for (int i = 0; i < npts; ++i) {
    const double x = unit(), y = unit();
    const double t = unit() * p.t_final;
    const double r = p.u_caputo(x, y, t) - (p.u_xx(x, y, t) + p.u_yy(x, y, t)) - p.f(x, y, t);
    worst = std::max(worst, std::fabs(r));
  }
  return worst;
}

ExactField at_time(const Problem& p, double t) {
  ExactField e;
  if (!p.has_exact) return e;
  // capture the callbacks by value so the field outlives the Problem
  e.u = [g = p.u, t](double x, double y) { return g(x, y, t); };
  e.ux = [g = p.u_x, t](double x, double y) { return g(x, y, t); };
  e.uy = [g = p.u_y, t](double x, double y) { return g(x, y, t); };
  e.uxx = [g = p.u_xx, t](double x, double y) { return g(x, y, t); };
  e.uxy = [g = p.u_xy, t](double x, double y) { return g(x, y, t); };
  e.uyy = [g = p.u_yy, t](double x, double y) { return g(x, y, t); };
  return e;
}

}  // namespace adiosc
