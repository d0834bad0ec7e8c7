#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "adiosc/norms.hpp"

#include <array>
#include <cmath>
#include <functional>

#include "adiosc/hermite.hpp"
#include "adiosc/mesh.hpp"
#include "adiosc/problems.hpp"

using namespace adiosc;

namespace {

double bump(double x, double y) { return x * (1.0 - x) * y * (1.0 - y); }

// Values of a scalar field on the 2N x 2N collocation grid.
Mat grid_values(const std::function<double(double, double)>& f, const CollocationGrid& g) {
  Mat v(static_cast<int>(g.xi_x.size()), static_cast<int>(g.xi_y.size()));
  for (int i = 0; i < v.rows(); ++i)
    for (int j = 0; j < v.cols(); ++j) v(i, j) = f(g.xi_x[i], g.xi_y[j]);
  return v;
}

double inner_of_bump(int n) {
  Partition1D p = uniform_partition(n);
  CollocationGrid g = collocation_grid(p, p, gauss_rule(2));
  Mat v = grid_values(bump, g);
  return discrete_inner(v, v, g);
}

}  // namespace

TEST_CASE("discrete inner product of the polynomial bump against frozen values") {
  // Exact integral of bump^2 over the unit square is (1/30)^2 = 1/900.  The
  // two-point rule under-integrates the quartic by O(h^4), so the deficit
  // shrinks 16x per mesh doubling.
  const double i4 = inner_of_bump(4);
  const double i8 = inner_of_bump(8);
  const double i16 = inner_of_bump(16);

  CHECK(i4 == doctest::Approx(1.1096648228021313e-3).epsilon(1e-13));
  CHECK(i8 == doctest::Approx(1.1110206904970574e-3).epsilon(1e-13));
  CHECK(i16 == doctest::Approx(1.1111054597149389e-3).epsilon(1e-13));

  const double exact = 1.0 / 900.0;
  const double e4 = exact - i4;
  const double e8 = exact - i8;
  const double e16 = exact - i16;
  CHECK(e4 > 0.0);
  CHECK(e8 > 0.0);
  CHECK(e16 > 0.0);
  CHECK(e4 / e8 == doctest::Approx(16.0).epsilon(0.02));
  CHECK(e8 / e16 == doctest::Approx(16.0).epsilon(0.02));
}

TEST_CASE("discrete inner product rejects mismatched shapes") {
  Partition1D p = uniform_partition(3);
  CollocationGrid g = collocation_grid(p, p, gauss_rule(2));
  Mat ok(6, 6), bad(6, 4);
  CHECK_THROWS_AS(discrete_inner(ok, bad, g), std::invalid_argument);
  CHECK_THROWS_AS(discrete_inner(bad, bad, g), std::invalid_argument);
}

TEST_CASE("norms of the zero spline against closed-form integrals") {
  // With zero coefficients the "error" is just the norm of the exact field:
  // u = sin(pi x) sin(pi y) at t = 1 for the trig problem.
  Problem p = trig_problem(1.5);
  ExactField field = at_time(p, 1.0);
  HermiteBasis1D b = hermite_basis(uniform_partition(6));
  Mat zero(b.dimension, b.dimension, 0.0);

  const double pi = M_PI;
  const double l2 = 0.5;                                            // sqrt(1/4)
  const double h1 = std::sqrt(0.25 + pi * pi / 2.0);                // adds |grad u|^2
  const double h2 = std::sqrt(0.25 + pi * pi / 2.0 + 0.75 * pi * pi * pi * pi);

  CHECK(hnorm_error(b, b, zero, field, 0) == doctest::Approx(l2).epsilon(1e-12));
  CHECK(hnorm_error(b, b, zero, field, 1) == doctest::Approx(h1).epsilon(1e-12));
  CHECK(hnorm_error(b, b, zero, field, 2) == doctest::Approx(h2).epsilon(1e-12));

  // Peak of |u| is 1 at the center node, which the sampler hits exactly.
  CHECK(linf_error(b, b, zero, field.u, 5) == 1.0);

  // Largest nodal derivative of u is pi (e.g. u_x at x = 0, y = 1/2).
  CHECK(nodal_derivative_error(b, b, zero, field.ux, field.uy) == doctest::Approx(pi).epsilon(1e-15));
}

TEST_CASE("interpolant error drops at the expected order per norm level") {
  Problem p = trig_problem(1.5);
  ExactField f = at_time(p, 1.0);

  auto errs = [&](int n) {
    HermiteBasis1D b = hermite_basis(uniform_partition(n));
    Mat g = hermite_interpolant_2d(f.u, f.ux, f.uy, f.uxy, b.partition, b.partition);
    return std::array<double, 3>{hnorm_error(b, b, g, f, 0), hnorm_error(b, b, g, f, 1),
                                 hnorm_error(b, b, g, f, 2)};
  };
  auto coarse = errs(6);
  auto fine = errs(12);

  const double r0 = convergence_rate(coarse[0], fine[0], 1.0 / 6, 1.0 / 12);
  const double r1 = convergence_rate(coarse[1], fine[1], 1.0 / 6, 1.0 / 12);
  const double r2 = convergence_rate(coarse[2], fine[2], 1.0 / 6, 1.0 / 12);
  CHECK(r0 > 3.6);
  CHECK(r0 < 4.4);
  CHECK(r1 > 2.6);
  CHECK(r1 < 3.4);
  CHECK(r2 > 1.6);
  CHECK(r2 < 2.4);
}

TEST_CASE("norm helpers validate their arguments") {
  Problem p = trig_problem(1.5);
  ExactField field = at_time(p, 1.0);
  HermiteBasis1D b = hermite_basis(uniform_partition(2));
  Mat zero(b.dimension, b.dimension, 0.0);

  CHECK_THROWS_AS(hnorm_error(b, b, zero, field, 3), std::invalid_argument);
  CHECK_THROWS_AS(hnorm_error(b, b, zero, field, -1), std::invalid_argument);

  ExactField bare;
  bare.u = field.u;  // no derivative callbacks
  CHECK(hnorm_error(b, b, zero, bare, 0) > 0.0);
  CHECK_THROWS_AS(hnorm_error(b, b, zero, bare, 1), std::invalid_argument);
  CHECK_THROWS_AS(hnorm_error(b, b, zero, bare, 2), std::invalid_argument);

  CHECK_THROWS_AS(linf_error(b, b, zero, field.u, 1), std::invalid_argument);
}

TEST_CASE("convergence rate formula and guards") {
  CHECK(convergence_rate(8.0, 1.0, 1.0, 0.5) == doctest::Approx(3.0).epsilon(1e-14));
  // Halving h with a 16x error drop is fourth order.
  CHECK(convergence_rate(1.6e-3, 1.0e-4, 0.25, 0.125) == doctest::Approx(4.0).epsilon(1e-12));

  CHECK_THROWS_AS(convergence_rate(0.0, 1.0, 1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(convergence_rate(1.0, -2.0, 1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(convergence_rate(1.0, 0.5, 0.5, 0.5), std::domain_error);
  CHECK_THROWS_AS(convergence_rate(1.0, 0.5, 0.25, 0.5), std::domain_error);
}
