#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "adiosc/norms.hpp"

namespace adiosc {

// One instance of the model problem
//   D_t^alpha u = Laplace(u) + f   on (0,1)^2 x (0,T],
//   u = 0 on the boundary,  u(0) = varphi,  u_t(0) = phi,
// with an exact manufactured solution and every derivative the solver or the
// error measurements need. All callbacks are pure.
struct Problem {
  std::string name;
  double t_final = 1.0;

  std::function<double(double, double)> varphi, phi;
  // nodal derivatives of varphi for the Hermite interpolant initialization
  std::function<double(double, double)> varphi_x, varphi_y, varphi_xy;

  std::function<double(double, double, double)> f;  // (x, y, t)

  bool has_exact = false;
  std::function<double(double, double, double)> u, u_t, u_x, u_y, u_xy, u_xx, u_yy;
  // Caputo derivative of order alpha of the exact solution, for the
  // manufactured-solution residual self-check
  std::function<double(double, double, double)> u_caputo;
};

// Exact Caputo derivative of t^p for order alpha in (1,2):
//   Gamma(p+1)/Gamma(p+1-alpha) * t^{p-alpha}.
// Requires p > 1 (so the second derivative is integrable at 0).
double caputo_power(double alpha, double p, double t);

// u = t^{2+alpha} sin(pi x) sin(pi y):
//   varphi = phi = 0,
//   f = [Gamma(3+alpha)/2 * t^2 + 2 pi^2 t^{2+alpha}] sin(pi x) sin(pi y).
Problem trig_problem(double alpha);

// u = t^{2+alpha} x(1-x) y(1-y): the spatial part is exactly representable in
// the piecewise-cubic space, so the measured error is purely temporal.
Problem poly_problem(double alpha);

const std::vector<std::string>& problem_names();
Problem make_problem(const std::string& name, double alpha);

// Max |D_t^alpha u - Laplace(u) - f| over npts seeded random points in
// (0,1)^2 x (0,T]: locks f, u, varphi, phi together before any solver run.
double pde_residual_max(const Problem& p, int npts, uint64_t seed);

// Partial-derivative bundle of the exact solution at a fixed time, for the
// norm measurements.
ExactField at_time(const Problem& p, double t);

}  // namespace adiosc
