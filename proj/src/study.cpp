#include "adiosc/study.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "adiosc/problems.hpp"
#include "adiosc/stepper.hpp"

namespace adiosc {

NormSelection parse_norms(const std::string& text) {
  if (text == "all" || text.empty()) return NormSelection{};
  NormSelection sel;
  sel.l2 = sel.linf = sel.h1 = sel.h2 = sel.nodal = false;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "l2")
      sel.l2 = true;
    else if (item == "linf")
      sel.linf = true;
    else if (item == "h1")
      sel.h1 = true;
    else if (item == "h2")
      sel.h2 = true;
    else if (item == "nodal")
      sel.nodal = true;
    else
      throw std::invalid_argument("unknown norm '" + item +
                                  "' (expected l2, linf, h1, h2, nodal, or all)");
  }
  return sel;
}

double dt_for(const StudySpec& spec, int n) {
  switch (spec.dt_rule) {
    case DtRule::h_cubed: {
      const double h = 1.0 / static_cast<double>(n);
      return h * h * h;
    }
    case DtRule::h:
      return 1.0 / static_cast<double>(n);
    case DtRule::fixed:
      return spec.dt_fixed;
  }
  throw std::logic_error("unhandled time-step rule");
}

ErrorReport run_single(const StudySpec& spec, int n, Mat* coeffs_out) {
  const Problem prob = make_problem(spec.problem, spec.alpha);

  SchemeConfig cfg;
  cfg.alpha = spec.alpha;
  cfg.dt = dt_for(spec, n);
  cfg.t_final = spec.t_final;
  cfg.nx = cfg.ny = n;
  cfg.init_mode = InitMode::interpolant;
  cfg.problem = &prob;
  cfg.threads = spec.threads;
  cfg.backend = spec.backend;

  const auto start = std::chrono::steady_clock::now();
  AdiStepper stepper(cfg);
  stepper.run();
  const auto stop = std::chrono::steady_clock::now();

  ErrorReport rep;
  rep.n = n;
  rep.dt = cfg.dt;
  rep.alpha = spec.alpha;
  rep.wall_seconds = std::chrono::duration<double>(stop - start).count();
  if (coeffs_out) *coeffs_out = stepper.coeffs();

  if (!prob.has_exact) return rep;
  const ExactField field = at_time(prob, spec.t_final);
  const HermiteBasis1D& bx = stepper.basis_x();
  const HermiteBasis1D& by = stepper.basis_y();
  const Mat& gamma = stepper.coeffs();
  if (spec.norms.l2) rep.l2 = hnorm_error(bx, by, gamma, field, 0);
  if (spec.norms.linf) rep.linf = linf_error(bx, by, gamma, field.u, spec.samples_per_cell);
  if (spec.norms.h1) rep.h1 = hnorm_error(bx, by, gamma, field, 1);
  if (spec.norms.h2) rep.h2 = hnorm_error(bx, by, gamma, field, 2);
  if (spec.norms.nodal) rep.nodal = nodal_derivative_error(bx, by, gamma, field.ux, field.uy);
  return rep;
}

std::vector<ErrorReport> run_study(const StudySpec& spec) {
  if (spec.n_list.empty()) throw std::invalid_argument("mesh list is empty");
  for (std::size_t i = 0; i < spec.n_list.size(); ++i) {
    if (spec.n_list[i] < 1) throw std::invalid_argument("mesh sizes must be positive");
    if (i > 0 && spec.n_list[i] <= spec.n_list[i - 1])
      throw std::invalid_argument("mesh list must be strictly increasing");
  }
  std::vector<ErrorReport> rows;
  rows.reserve(spec.n_list.size());
  for (int n : spec.n_list) rows.push_back(run_single(spec, n));
  return rows;
}

namespace {

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return buf;
}

void emit_pair(std::string& out, double err, double prev_err, double h, double prev_h,
               bool selected, bool first_row) {
  out += ',';
  if (selected && err >= 0.0) out += sci(err);
  out += ',';
  if (selected && !first_row && err > 0.0 && prev_err > 0.0 && prev_h > h)
    out += sci(convergence_rate(prev_err, err, prev_h, h));
}

}  // namespace

std::string format_csv(const std::vector<ErrorReport>& rows, const NormSelection& norms) {
  std::string out =
      "N,dt,l2_err,l2_rate,linf_err,linf_rate,h1_err,h1_rate,h2_err,h2_rate,nodal_err,nodal_rate,"
      "wall_seconds\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ErrorReport& r = rows[i];
    const bool first = i == 0;
    const ErrorReport& p = first ? r : rows[i - 1];
    const double h = 1.0 / static_cast<double>(r.n);
    const double ph = 1.0 / static_cast<double>(p.n);
    out += std::to_string(r.n);
    out += ',';
    out += sci(r.dt);
    emit_pair(out, r.l2, p.l2, h, ph, norms.l2, first);
    emit_pair(out, r.linf, p.linf, h, ph, norms.linf, first);
    emit_pair(out, r.h1, p.h1, h, ph, norms.h1, first);
    emit_pair(out, r.h2, p.h2, h, ph, norms.h2, first);
    emit_pair(out, r.nodal, p.nodal, h, ph, norms.nodal, first);
    out += ',';
    out += sci(r.wall_seconds);
    out += '\n';
  }
  return out;
}

}  // namespace adiosc
