#pragma once

#include <array>
#include <memory>
#include <stdexcept>
#include <vector>

#include "adiosc/hermite.hpp"
#include "adiosc/mat.hpp"

namespace adiosc {

// Almost-block-diagonal matrix from 1D spline collocation: one 2-row block per
// element, interior blocks 2x4 overlapping their neighbours by two columns,
// first and last blocks 2x3 (2x2 for a single element).
struct AbdMatrix {
  int n_elems = 0;
  int m = 0;                                 // 2 * n_elems
  std::vector<std::array<double, 8>> tiles;  // 2x4 per element, zero padded

  int col_start(int k) const { return k == 0 ? 0 : 2 * k - 1; }
  int width(int k) const {
    if (m == 2) return 2;
    return (k == 0 || k == n_elems - 1) ? 3 : 4;
  }
  double& at(int k, int r, int c) { return tiles[k][4 * r + c]; }
  double at(int k, int r, int c) const { return tiles[k][4 * r + c]; }

  Mat dense() const;
  double max_abs() const;
};

// B + coeff_a * A in block form (coeff_a = mu/2 for the stepping operator,
// 0 for plain B).
AbdMatrix make_abd(const CollocationMatrices& cm, double coeff_a);

class SingularBlockError : public std::runtime_error {
 public:
  SingularBlockError(int block_index, int column);
  int block = 0;
  int column = 0;
};

// Shared interface of the two factorization backends. solve_inplace solves
// one right-hand side stored with the given stride (stride > 1 lets the ADI
// sweeps solve down the columns of a row-major field without copies).
// Concurrent solves on distinct right-hand sides are safe.
class OperatorFactorization {
 public:
  virtual ~OperatorFactorization() = default;
  virtual void solve_inplace(double* b, long stride) const = 0;
  virtual int size() const = 0;

  void solve(std::vector<double>& b) const { solve_inplace(b.data(), 1); }
};

enum class AbdBackend { block_staircase, banded_lu };

// Factor with partial row pivoting (pivot < 1e-14 * max|entry| raises
// SingularBlockError). Ties in the pivot search go to the smallest original
// row index, so factorizations are bit-reproducible.
std::unique_ptr<OperatorFactorization> factor_operator(const AbdMatrix& a, AbdBackend backend);

}  // namespace adiosc
