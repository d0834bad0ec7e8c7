#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "adiosc/caputo.hpp"
#include "adiosc/oracle.hpp"
#include "adiosc/problems.hpp"
#include "adiosc/stepper.hpp"
#include "adiosc/study.hpp"

namespace {

using namespace adiosc;

// ---------------------------------------------------------------- plumbing

struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::string problem = "trig";
  double alpha = 1.5;
  std::vector<int> n_list;
  std::string dt_rule = "h3";
  double t_final = 1.0;
  std::string norms = "all";
  int samples_per_cell = 100;
  std::string out;
  int threads = 0;  // 0 = all available
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--problem", f.problem, "problem name (see --problem help on error)");
  cmd->add_option("--alpha", f.alpha, "fractional order, strictly between 1 and 2");
  cmd->add_option("--n", f.n_list, "cells per direction (repeatable for studies)");
  cmd->add_option("--dt-rule", f.dt_rule, "time step rule: h3, h, or fixed:<value>");
  cmd->add_option("--t-final", f.t_final, "final time");
  cmd->add_option("--norms", f.norms, "comma list of l2,linf,h1,h2,nodal or 'all'");
  cmd->add_option("--samples-per-cell", f.samples_per_cell,
                  "sample points per cell and direction for the max-norm");
  cmd->add_option("--out", f.out, "output file (default stdout)");
  cmd->add_option("--threads", f.threads, "worker threads (default: all available)");
}

std::string known_problems() {
  std::string s;
  for (const std::string& name : problem_names()) {
    if (!s.empty()) s += ", ";
    s += name;
  }
  return s;
}

StudySpec spec_from(const CommonFlags& f) {
  StudySpec spec;
  const auto names = problem_names();
  if (std::find(names.begin(), names.end(), f.problem) == names.end())
    throw FlagError("unknown problem '" + f.problem + "'; available: " + known_problems());
  spec.problem = f.problem;
  if (!(f.alpha > 1.0 && f.alpha < 2.0))
    throw FlagError("--alpha must lie strictly between 1 and 2");
  spec.alpha = f.alpha;
  spec.n_list = f.n_list;

  if (f.dt_rule == "h3") {
    spec.dt_rule = DtRule::h_cubed;
  } else if (f.dt_rule == "h") {
    spec.dt_rule = DtRule::h;
  } else if (f.dt_rule.rfind("fixed:", 0) == 0) {
    spec.dt_rule = DtRule::fixed;
    try {
      spec.dt_fixed = std::stod(f.dt_rule.substr(6));
    } catch (const std::exception&) {
      throw FlagError("cannot parse time step in '" + f.dt_rule + "'");
    }
    if (!(spec.dt_fixed > 0.0)) throw FlagError("fixed time step must be positive");
  } else {
    throw FlagError("unknown --dt-rule '" + f.dt_rule + "' (expected h3, h, or fixed:<value>)");
  }

  if (!(f.t_final > 0.0)) throw FlagError("--t-final must be positive");
  spec.t_final = f.t_final;
  try {
    spec.norms = parse_norms(f.norms);
  } catch (const std::invalid_argument& e) {
    throw FlagError(e.what());
  }
  if (f.samples_per_cell < 2) throw FlagError("--samples-per-cell must be at least 2");
  spec.samples_per_cell = f.samples_per_cell;
  if (f.threads < 0) throw FlagError("--threads must be non-negative");
  spec.threads = f.threads > 0 ? f.threads
                               : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  return spec;
}

void deliver(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file '" + path + "'");
  os << text;
}

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return buf;
}

// ------------------------------------------------------------------ solve

int cmd_solve(const CommonFlags& f, const std::string& dump_path) {
  StudySpec spec = spec_from(f);
  if (spec.n_list.empty()) spec.n_list.push_back(4);
  if (spec.n_list.size() != 1) throw FlagError("solve takes exactly one --n");

  Mat coeffs;
  ErrorReport rep;
  try {
    rep = run_single(spec, spec.n_list[0], dump_path.empty() ? nullptr : &coeffs);
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  }

  std::ostringstream os;
  os << "problem=" << spec.problem << " alpha=" << spec.alpha << " N=" << rep.n
     << " dt=" << sci(rep.dt) << " t_final=" << spec.t_final << "\n";
  if (rep.l2 >= 0.0) os << "l2_err=" << sci(rep.l2) << "\n";
  if (rep.linf >= 0.0) os << "linf_err=" << sci(rep.linf) << "\n";
  if (rep.h1 >= 0.0) os << "h1_err=" << sci(rep.h1) << "\n";
  if (rep.h2 >= 0.0) os << "h2_err=" << sci(rep.h2) << "\n";
  if (rep.nodal >= 0.0) os << "nodal_err=" << sci(rep.nodal) << "\n";
  os << "wall_seconds=" << sci(rep.wall_seconds) << "\n";
  deliver(f.out, os.str());

  if (!dump_path.empty()) {
    std::ofstream ds(dump_path);
    if (!ds) throw std::runtime_error("cannot open dump file '" + dump_path + "'");
    ds << coeffs.rows() << " " << coeffs.cols() << "\n";
    char buf[40];
    for (long i = 0; i < coeffs.rows(); ++i) {
      for (long j = 0; j < coeffs.cols(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17e", coeffs(i, j));
        ds << buf << (j + 1 == coeffs.cols() ? "\n" : " ");
      }
    }
  }
  return 0;
}

// ------------------------------------------------------------------ study

int cmd_study(const CommonFlags& f) {
  StudySpec spec = spec_from(f);
  if (spec.n_list.empty()) throw FlagError("study needs at least one --n");
  for (std::size_t i = 1; i < spec.n_list.size(); ++i)
    if (spec.n_list[i] <= spec.n_list[i - 1])
      throw FlagError("--n values must be strictly increasing");

  std::vector<ErrorReport> rows;
  try {
    rows = run_study(spec);
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  }
  deliver(f.out, format_csv(rows, spec.norms));
  return 0;
}

// ----------------------------------------------------------------- verify

class VerifyReport {
 public:
  std::ostringstream& check(const std::string& name) {
    flush();
    name_ = name;
    detail_.str("");
    active_ = true;
    failed_ = false;
    return detail_;
  }
  void fail() { failed_ = true; }
  bool finish() {
    flush();
    std::cout << (any_failed_ ? "verification FAILED\n" : "all checks passed\n");
    return any_failed_;
  }

 private:
  void flush() {
    if (!active_) return;
    const std::string d = detail_.str();
    std::cout << (failed_ ? "[FAIL] " : "[ok]   ") << name_ << (d.empty() ? "" : ": " + d)
              << "\n";
    any_failed_ = any_failed_ || failed_;
    active_ = false;
  }
  std::string name_;
  std::ostringstream detail_;
  bool active_ = false, failed_ = false, any_failed_ = false;
};

void verify_weight_bounds(VerifyReport& rep, const std::vector<double>& alphas, int steps,
                          bool inject_fault) {
  auto& out = rep.check("coefficient positivity and decay bounds");
  for (double alpha : alphas) {
    L1Weights w = build_weights(alpha, 1e-3, steps);
    if (inject_fault) w.b[1] += 1e-6;
    if (w.b[0] != 1.0) {
      rep.fail();
      out << "b0 != 1 at alpha=" << alpha;
      return;
    }
    for (int j = 1; j < steps; ++j) {
      const double bj = w.b[static_cast<std::size_t>(j)];
      const double lo = (2.0 - alpha) * std::pow(j + 1.0, 1.0 - alpha);
      const double hi = (2.0 - alpha) * std::pow(static_cast<double>(j), 1.0 - alpha);
      if (!(bj > 0.0) || !(bj < w.b[static_cast<std::size_t>(j) - 1]) || !(bj > lo) ||
          !(bj < hi)) {
        rep.fail();
        out << "bound violated at alpha=" << alpha << " j=" << j;
        return;
      }
    }
  }
  out << alphas.size() << " orders, n=" << steps;
}

void verify_weight_sums(VerifyReport& rep, const std::vector<double>& alphas, int steps,
                        bool inject_fault) {
  auto& out = rep.check("coefficient telescoping and partial sums");
  double worst = 0.0;
  for (double alpha : alphas) {
    L1Weights w = build_weights(alpha, 1e-3, steps);
    if (inject_fault) w.b[1] += 1e-6;
    long double sum = 0.0L, tele = 0.0L;
    for (int n = 1; n <= steps; ++n) {
      sum += static_cast<long double>(w.b[static_cast<std::size_t>(n) - 1]);
      if (n >= 2)
        tele += static_cast<long double>(w.b[static_cast<std::size_t>(n) - 2] -
                                         w.b[static_cast<std::size_t>(n) - 1]);
      const long double closed = powl(static_cast<long double>(n),
                                      static_cast<long double>(2.0 - alpha));
      const double rel_sum = static_cast<double>(fabsl(sum - closed) / closed);
      const long double tele_ref =
          static_cast<long double>(w.b[0]) - static_cast<long double>(w.b[static_cast<std::size_t>(n) - 1]);
      const double rel_tele =
          n >= 2 ? static_cast<double>(fabsl(tele - tele_ref) / std::max(1.0L, tele_ref)) : 0.0;
      worst = std::max({worst, rel_sum, rel_tele});
      if (rel_sum > 1e-12 || rel_tele > 1e-12) {
        rep.fail();
        out << "identity off by " << sci(std::max(rel_sum, rel_tele)) << " at alpha=" << alpha
            << " n=" << n;
        return;
      }
    }
  }
  out << "worst relative deviation " << sci(worst);
}

void verify_adi_vs_dense(VerifyReport& rep) {
  auto& out = rep.check("tensor-product sweeps against dense solve");
  const Problem prob = trig_problem(1.5);
  SchemeConfig cfg;
  cfg.alpha = 1.5;
  cfg.dt = 0.2;
  cfg.t_final = 1.0;
  cfg.nx = cfg.ny = 3;
  cfg.problem = &prob;
  cfg.threads = 1;
  AdiStepper stepper(cfg);
  const Mat ax = stepper.colloc_x().dense_a(), bx = stepper.colloc_x().dense_b();
  const Mat ay = stepper.colloc_y().dense_a(), by = stepper.colloc_y().dense_b();
  double worst = 0.0;
  for (int n = 1; n <= stepper.total_steps(); ++n) {
    const Mat f = stepper.assemble_rhs(n);
    const Mat want = dense_adi_increment(ax, bx, ay, by, stepper.weights().mu, f, 2);
    const Mat before = stepper.coeffs();
    stepper.step();
    Mat got(before.rows(), before.cols());
    for (long i = 0; i < got.rows(); ++i)
      for (long j = 0; j < got.cols(); ++j) got(i, j) = stepper.coeffs()(i, j) - before(i, j);
    const double rel = max_abs_diff(got, want) / std::max(max_abs(want), 1e-300);
    worst = std::max(worst, rel);
  }
  if (worst > 1e-10) {
    rep.fail();
    out << "relative gap " << sci(worst);
    return;
  }
  out << "5 steps, worst relative gap " << sci(worst);
}

void verify_history(VerifyReport& rep, std::uint64_t seed) {
  auto& out = rep.check("history accumulation against direct summation");
  const Problem prob = trig_problem(1.5);
  SchemeConfig cfg;
  cfg.alpha = 1.5;
  cfg.dt = 0.02;
  cfg.t_final = 1.0;
  cfg.nx = cfg.ny = 4;
  cfg.problem = &prob;
  cfg.threads = 1;
  AdiStepper stepper(cfg);
  const CollocationGrid& grid = stepper.grid();
  std::mt19937_64 rng(seed);
  const long gx = static_cast<long>(grid.xi_x.size());
  const long gy = static_cast<long>(grid.xi_y.size());
  struct Pt {
    long i, j;
  };
  std::vector<Pt> pts;
  for (int k = 0; k < 5; ++k)
    pts.push_back({static_cast<long>(rng() % static_cast<std::uint64_t>(gx)),
                   static_cast<long>(rng() % static_cast<std::uint64_t>(gy))});

  std::vector<std::vector<double>> series(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k)
    series[k].push_back(stepper.eval(grid.xi_x[pts[k].i], grid.xi_y[pts[k].j]));
  while (stepper.current_step() < stepper.total_steps()) {
    stepper.step();
    for (std::size_t k = 0; k < pts.size(); ++k)
      series[k].push_back(stepper.eval(grid.xi_x[pts[k].i], grid.xi_y[pts[k].j]));
  }

  const L1Weights& w = stepper.weights();
  const int n = stepper.total_steps();
  double worst = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    double acc = 0.0;
    for (int j = 1; j <= n - 1; ++j)
      acc += (w.b[static_cast<std::size_t>(n - j) - 1] - w.b[static_cast<std::size_t>(n - j)]) *
             stepper.history(j)(pts[k].i, pts[k].j);
    const double phi_val = prob.phi(grid.xi_x[pts[k].i], grid.xi_y[pts[k].j]);
    const double naive = naive_l1_history(w, series[k], phi_val);
    const double want = (series[k][static_cast<std::size_t>(n)] -
                         series[k][static_cast<std::size_t>(n) - 1]) -
                        w.dt * w.b[static_cast<std::size_t>(n) - 1] * phi_val - w.mu * naive;
    worst = std::max(worst, std::abs(acc - want));
  }
  if (worst > 1e-12) {
    rep.fail();
    out << "gap " << sci(worst);
    return;
  }
  out << "5 points, 50 steps, worst gap " << sci(worst);
}

void verify_basis_reproduction(VerifyReport& rep, std::uint64_t seed) {
  auto& out = rep.check("piecewise-cubic reproduction of a global cubic");
  auto q = [](double x) { return -x * x * x - x * x + 2.0 * x; };
  auto qp = [](double x) { return -3.0 * x * x - 2.0 * x + 2.0; };
  auto r = [](double y) { return y * y * y - 4.0 * y * y + 3.0 * y; };
  auto rp = [](double y) { return 3.0 * y * y - 8.0 * y + 3.0; };
  const Partition1D px = uniform_partition(5);
  const Partition1D py = uniform_partition(5);
  const HermiteBasis1D bx = hermite_basis(px);
  const HermiteBasis1D by = hermite_basis(py);
  const Mat gamma = hermite_interpolant_2d(
      [&](double x, double y) { return q(x) * r(y); },
      [&](double x, double y) { return qp(x) * r(y); },
      [&](double x, double y) { return q(x) * rp(y); },
      [&](double x, double y) { return qp(x) * rp(y); }, px, py);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  auto unit = [&rng]() {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  };
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double x = unit(), y = unit();
    worst = std::max(worst, std::abs(eval_spline_2d(bx, by, gamma, x, y) - q(x) * r(y)));
  }
  if (worst > 1e-12) {
    rep.fail();
    out << "max deviation " << sci(worst);
    return;
  }
  out << "1000 points, max deviation " << sci(worst);
}

void verify_residuals(VerifyReport& rep, std::uint64_t seed) {
  auto& out = rep.check("manufactured problems satisfy their own equation");
  double worst = 0.0;
  for (const std::string& name : problem_names())
    for (double alpha : {1.25, 1.5, 1.75}) {
      const Problem p = make_problem(name, alpha);
      worst = std::max(worst, pde_residual_max(p, 200, seed));
    }
  if (worst > 1e-10) {
    rep.fail();
    out << "max residual " << sci(worst);
    return;
  }
  out << "max residual " << sci(worst);
}

int cmd_verify(std::uint64_t seed, bool inject_fault) {
  std::vector<double> alphas;
  for (int k = 0; k < 20; ++k) alphas.push_back(1.01 + 0.05 * k);
  alphas.push_back(1.99);

  VerifyReport rep;
  try {
    verify_weight_bounds(rep, alphas, 10000, inject_fault);
    verify_weight_sums(rep, alphas, 10000, inject_fault);
    verify_adi_vs_dense(rep);
    verify_history(rep, seed);
    verify_basis_reproduction(rep, seed);
    verify_residuals(rep, seed);
  } catch (const std::exception& e) {
    std::cerr << "verification aborted: " << e.what() << "\n";
    return 3;
  }
  return rep.finish() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collocation solver for the two-dimensional fractional diffusion-wave equation"};
  app.require_subcommand(1);

  CommonFlags solve_flags, study_flags;
  std::string dump_path;
  std::uint64_t seed = 12345;
  bool inject_fault = false;

  CLI::App* solve = app.add_subcommand("solve", "one run at a single mesh size");
  add_common(solve, solve_flags);
  solve->add_option("--dump", dump_path, "write the final coefficient tensor to a file");

  CLI::App* study = app.add_subcommand("study", "convergence sweep over --n values, CSV output");
  add_common(study, study_flags);

  CLI::App* verify = app.add_subcommand("verify", "run the self-check suite");
  verify->add_option("--seed", seed, "seed for the randomized checks");
  verify->add_flag("--inject-fault", inject_fault,
                   "perturb one convolution weight to demonstrate failure detection");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve) return cmd_solve(solve_flags, dump_path);
    if (*study) return cmd_study(study_flags);
    if (*verify) return cmd_verify(seed, inject_fault);
  } catch (const FlagError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
