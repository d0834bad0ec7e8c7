#pragma once

#include <string>
#include <vector>

#include "adiosc/abd.hpp"
#include "adiosc/norms.hpp"

namespace adiosc {

struct NormSelection {
  bool l2 = true, linf = true, h1 = true, h2 = true, nodal = true;
};

// "all" or a comma list drawn from {l2, linf, h1, h2, nodal}
NormSelection parse_norms(const std::string& text);

enum class DtRule { h_cubed, h, fixed };

struct StudySpec {
  std::string problem = "trig";
  double alpha = 1.5;
  std::vector<int> n_list;
  DtRule dt_rule = DtRule::h_cubed;
  double dt_fixed = 0.0;  // only read when dt_rule == fixed
  double t_final = 1.0;
  NormSelection norms;
  int samples_per_cell = 100;
  int threads = 1;
  AbdBackend backend = AbdBackend::block_staircase;
};

double dt_for(const StudySpec& spec, int n);

// One solve at mesh size n with the requested error measurements filled in;
// wall_seconds covers the solve only, not the measurements. When coeffs_out
// is non-null it receives the final coefficient tensor.
ErrorReport run_single(const StudySpec& spec, int n, Mat* coeffs_out = nullptr);

// Sequential sweep over spec.n_list (validated non-empty, strictly increasing).
std::vector<ErrorReport> run_study(const StudySpec& spec);

// Fixed-schema CSV: N, dt, each error/rate pair, wall_seconds. Values in
// 6-significant-digit scientific notation; unmeasured norms and first-row
// rates stay empty. Rates come from convergence_rate on adjacent rows with
// mesh width 1/N as the abscissa.
std::string format_csv(const std::vector<ErrorReport>& rows, const NormSelection& norms);

}  // namespace adiosc
