#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "adiosc/study.hpp"

#include <cstdio>
#include <string>
#include <vector>

using namespace adiosc;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return buf;
}

}  // namespace

TEST_CASE("norm selection parsing") {
  NormSelection all = parse_norms("all");
  CHECK(all.l2);
  CHECK(all.linf);
  CHECK(all.h1);
  CHECK(all.h2);
  CHECK(all.nodal);

  NormSelection some = parse_norms("l2,nodal");
  CHECK(some.l2);
  CHECK(some.nodal);
  CHECK(!some.linf);
  CHECK(!some.h1);
  CHECK(!some.h2);

  NormSelection one = parse_norms("h1");
  CHECK(one.h1);
  CHECK(!one.l2);

  CHECK_THROWS_AS(parse_norms("energy"), std::invalid_argument);
  CHECK_THROWS_AS(parse_norms("l2,,nodal"), std::invalid_argument);
}

TEST_CASE("time step rules") {
  StudySpec spec;
  spec.dt_rule = DtRule::h_cubed;
  CHECK(dt_for(spec, 4) == 0.015625);  // (1/4)^3
  CHECK(dt_for(spec, 2) == 0.125);

  spec.dt_rule = DtRule::h;
  CHECK(dt_for(spec, 8) == 0.125);

  spec.dt_rule = DtRule::fixed;
  spec.dt_fixed = 0.2;
  CHECK(dt_for(spec, 17) == 0.2);
}

TEST_CASE("single run fills exactly the requested measurements") {
  StudySpec spec;
  spec.problem = "poly";
  spec.alpha = 1.5;
  spec.dt_rule = DtRule::fixed;
  spec.dt_fixed = 0.25;
  spec.samples_per_cell = 5;
  spec.norms = parse_norms("l2");

  Mat coeffs;
  ErrorReport rep = run_single(spec, 3, &coeffs);
  CHECK(rep.n == 3);
  CHECK(rep.dt == 0.25);
  CHECK(rep.alpha == 1.5);
  CHECK(rep.l2 > 0.0);
  CHECK(rep.l2 < 1.0);
  CHECK(rep.wall_seconds >= 0.0);
  // unmeasured norms keep their sentinel
  CHECK(rep.linf == -1.0);
  CHECK(rep.h1 == -1.0);
  CHECK(rep.h2 == -1.0);
  CHECK(rep.nodal == -1.0);

  CHECK(coeffs.rows() == 6);
  CHECK(coeffs.cols() == 6);
  CHECK(max_abs(coeffs) > 0.0);
}

TEST_CASE("study sweep validates the mesh list") {
  StudySpec spec;
  spec.problem = "poly";
  spec.dt_rule = DtRule::fixed;
  spec.dt_fixed = 0.5;

  spec.n_list = {};
  CHECK_THROWS_AS(run_study(spec), std::invalid_argument);
  spec.n_list = {4, 4};
  CHECK_THROWS_AS(run_study(spec), std::invalid_argument);
  spec.n_list = {4, 3};
  CHECK_THROWS_AS(run_study(spec), std::invalid_argument);
  spec.n_list = {0, 2};
  CHECK_THROWS_AS(run_study(spec), std::invalid_argument);
}

TEST_CASE("csv layout from synthetic rows") {
  ErrorReport r1;
  r1.n = 2;
  r1.dt = 0.125;
  r1.l2 = 1.6e-3;
  r1.nodal = -1.0;  // selected below, but never measured
  r1.wall_seconds = 0.03;
  ErrorReport r2 = r1;
  r2.n = 4;
  r2.dt = 0.015625;
  r2.l2 = 1.0e-4;  // exactly 16x down at half the mesh width: rate 4
  r2.wall_seconds = 0.01;

  NormSelection sel = parse_norms("l2,nodal");
  const std::string csv = format_csv({r1, r2}, sel);
  auto lines = split(csv, '\n');
  REQUIRE(lines.size() == 4);  // header, two rows, trailing empty piece
  CHECK(lines[0] ==
        "N,dt,l2_err,l2_rate,linf_err,linf_rate,h1_err,h1_rate,h2_err,h2_rate,nodal_err,"
        "nodal_rate,wall_seconds");
  CHECK(lines[3].empty());

  auto f1 = split(lines[1], ',');
  auto f2 = split(lines[2], ',');
  REQUIRE(f1.size() == 13);
  REQUIRE(f2.size() == 13);

  CHECK(f1[0] == "2");
  CHECK(f1[1] == "1.25000e-01");
  CHECK(f1[2] == "1.60000e-03");
  CHECK(f1[3] == "");  // no rate on the first row
  CHECK(f1[4] == "");  // linf not selected
  CHECK(f1[10] == "");  // nodal selected but unmeasured
  CHECK(f1[12] == "3.00000e-02");

  CHECK(f2[0] == "4");
  CHECK(f2[1] == "1.56250e-02");
  CHECK(f2[2] == "1.00000e-04");
  CHECK(f2[3] == "4.00000e+00");
  CHECK(f2[11] == "");
  CHECK(f2[12] == "1.00000e-02");
}

TEST_CASE("csv rates recompute exactly from the reported errors") {
  StudySpec spec;
  spec.problem = "poly";
  spec.alpha = 1.5;
  spec.n_list = {2, 3};
  spec.dt_rule = DtRule::fixed;
  spec.dt_fixed = 0.25;
  spec.samples_per_cell = 4;
  spec.norms = parse_norms("l2,linf");

  std::vector<ErrorReport> rows = run_study(spec);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].l2 > 0.0);
  CHECK(rows[1].l2 > 0.0);

  const std::string csv = format_csv(rows, spec.norms);
  auto lines = split(csv, '\n');
  auto f2 = split(lines[2], ',');
  REQUIRE(f2.size() == 13);
  CHECK(f2[3] == sci(convergence_rate(rows[0].l2, rows[1].l2, 1.0 / 2.0, 1.0 / 3.0)));
  CHECK(f2[5] == sci(convergence_rate(rows[0].linf, rows[1].linf, 1.0 / 2.0, 1.0 / 3.0)));
  // h1 was not requested, so its columns stay empty on both rows
  auto f1 = split(lines[1], ',');
  CHECK(f1[6] == "");
  CHECK(f2[6] == "");
}
