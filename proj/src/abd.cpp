#include "adiosc/abd.hpp"

#include <cassert>
#include <cmath>
#include <string>

namespace adiosc {

Mat AbdMatrix::dense() const {
  Mat d(m, m);
  for (int k = 0; k < n_elems; ++k)
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < width(k); ++c) d(2 * k + r, col_start(k) + c) = at(k, r, c);
  return d;
}

double AbdMatrix::max_abs() const {
  double v = 0.0;
  for (const auto& t : tiles)
    for (double x : t) v = std::max(v, std::fabs(x));
  return v;
}

AbdMatrix make_abd(const CollocationMatrices& cm, double coeff_a) {
  AbdMatrix m;
  m.m = cm.m;
  m.n_elems = cm.m / 2;
  m.tiles.assign(m.n_elems, {});
  for (int k = 0; k < m.n_elems; ++k) {
    for (int r = 0; r < 2; ++r) {
      const int row = 2 * k + r;
      assert(cm.first_col[row] == m.col_start(k) && cm.nnz[row] == m.width(k));
      for (int c = 0; c < cm.nnz[row]; ++c)
        m.at(k, r, c) = cm.b[row][c] + coeff_a * cm.a[row][c];
    }
  }
  return m;
}

SingularBlockError::SingularBlockError(int block_index, int col)
    : std::runtime_error("singular pivot in block " + std::to_string(block_index) +
                         " (column " + std::to_string(col) + ")"),
      block(block_index),
      column(col) {}

namespace {

// ------------------------------------------------------------------
// Block-staircase elimination.
//
// Columns are eliminated left to right. The rows with a nonzero in the
// current column form a small "active" window: at most one row carried over
// from the previous column plus the two rows of the element that starts
// here, so never more than 3 rows, each at most 4 columns wide. The pivot is
// the largest |entry| in the column (ties: smallest original row index), and
// only the multipliers and the 4-wide pivot rows are stored, keeping factor
// and solve O(N).
// ------------------------------------------------------------------
class StaircaseFactorization final : public OperatorFactorization {
 public:
  explicit StaircaseFactorization(const AbdMatrix& a) {
    m_ = a.m;
    pivot_row_.resize(m_);
    urow_.resize(m_);
    mult_begin_.assign(m_ + 1, 0);
    const double tol = 1e-14 * a.max_abs();

    struct ActiveRow {
      int orig;
      std::array<double, 4> w;  // w[0] is the current column
    };
    std::vector<ActiveRow> act;
    act.reserve(3);
    int next_elem = 0;

    for (int c = 0; c < m_; ++c) {
      while (next_elem < a.n_elems && a.col_start(next_elem) == c) {
        for (int r = 0; r < 2; ++r) {
          ActiveRow row{2 * next_elem + r, {}};
          for (int j = 0; j < a.width(next_elem); ++j) row.w[j] = a.at(next_elem, r, j);
          act.push_back(row);
        }
        ++next_elem;
      }
      assert(!act.empty());

      // partial pivoting; vector order is ascending original index, so the
      // first strict maximum realizes the smallest-index tie-break
      int best = 0;
      for (int r = 1; r < static_cast<int>(act.size()); ++r)
        if (std::fabs(act[r].w[0]) > std::fabs(act[best].w[0])) best = r;
      if (std::fabs(act[best].w[0]) <= tol) throw SingularBlockError(act[0].orig / 2, c);

      pivot_row_[c] = act[best].orig;
      urow_[c] = act[best].w;
      for (int r = 0; r < static_cast<int>(act.size()); ++r) {
        if (r == best) continue;
        const double mlt = act[r].w[0] / act[best].w[0];
        for (int j = 1; j < 4; ++j) act[r].w[j] -= mlt * act[best].w[j];
        mults_.push_back({act[r].orig, mlt});
      }
      mult_begin_[c + 1] = static_cast<int>(mults_.size());

      act.erase(act.begin() + best);
      for (auto& row : act) {  // drop the eliminated column, realign at c+1
        row.w[0] = row.w[1];
        row.w[1] = row.w[2];
        row.w[2] = row.w[3];
        row.w[3] = 0.0;
      }
    }
  }

  void solve_inplace(double* b, long stride) const override {
    static thread_local std::vector<double> x;
    x.resize(m_);
    for (int c = 0; c < m_; ++c) {
      const double bp = b[static_cast<long>(pivot_row_[c]) * stride];
      for (int k = mult_begin_[c]; k < mult_begin_[c + 1]; ++k)
        b[static_cast<long>(mults_[k].row) * stride] -= mults_[k].m * bp;
    }
    for (int c = m_ - 1; c >= 0; --c) {
      double acc = b[static_cast<long>(pivot_row_[c]) * stride];
      for (int j = 1; j < 4 && c + j < m_; ++j) acc -= urow_[c][j] * x[c + j];
      x[c] = acc / urow_[c][0];
    }
    for (int c = 0; c < m_; ++c) b[static_cast<long>(c) * stride] = x[c];
  }

  int size() const override { return m_; }

 private:
  struct Mult {
    int row;
    double m;
  };
  int m_ = 0;
  std::vector<int> pivot_row_;
  std::vector<std::array<double, 4>> urow_;
  std::vector<Mult> mults_;
  std::vector<int> mult_begin_;
};

// ------------------------------------------------------------------
// Banded LU with partial pivoting (kl = ku = 2; fill from pivoting extends
// the upper bandwidth to 4). Independent fallback used as a differential
// check of the staircase code above.
// ------------------------------------------------------------------
class BandedLU final : public OperatorFactorization {
 public:
  explicit BandedLU(const AbdMatrix& a) {
    m_ = a.m;
    w_.assign(m_, {});
    piv_.assign(m_, 0);
    mult_.assign(m_, {0.0, 0.0});
    for (int k = 0; k < a.n_elems; ++k)
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < a.width(k); ++c)
          ref(2 * k + r, a.col_start(k) + c) = a.at(k, r, c);
    const double tol = 1e-14 * a.max_abs();

    for (int c = 0; c < m_; ++c) {
      const int rmax = std::min(c + 2, m_ - 1);
      int p = c;
      for (int r = c + 1; r <= rmax; ++r)
        if (std::fabs(get(r, c)) > std::fabs(get(p, c))) p = r;
      if (std::fabs(get(p, c)) <= tol) throw SingularBlockError(c / 2, c);
      piv_[c] = p;
      if (p != c) {
        for (int j = c; j <= std::min(c + 4, m_ - 1); ++j) {
          const double t = get(c, j);
          ref(c, j) = get(p, j);
          ref(p, j) = t;
        }
      }
      for (int r = c + 1; r <= rmax; ++r) {
        const double mlt = get(r, c) / get(c, c);
        mult_[c][r - c - 1] = mlt;
        for (int j = c + 1; j <= std::min(c + 4, m_ - 1); ++j)
          ref(r, j) -= mlt * get(c, j);
      }
    }
  }

  void solve_inplace(double* b, long stride) const override {
    for (int c = 0; c < m_; ++c) {
      if (piv_[c] != c) std::swap(b[c * stride], b[piv_[c] * stride]);
      const int rmax = std::min(c + 2, m_ - 1);
      for (int r = c + 1; r <= rmax; ++r) b[r * stride] -= mult_[c][r - c - 1] * b[c * stride];
    }
    for (int c = m_ - 1; c >= 0; --c) {
      double acc = b[c * stride];
      for (int j = c + 1; j <= std::min(c + 4, m_ - 1); ++j) acc -= get(c, j) * b[j * stride];
      b[c * stride] = acc / get(c, c);
    }
  }

  int size() const override { return m_; }

 private:
  // row window: columns [r-2, r+4] of row r
  double& ref(int r, int j) {
    assert(j - r + 2 >= 0 && j - r + 2 < 7);
    return w_[r][j - r + 2];
  }
  double get(int r, int j) const {
    const int off = j - r + 2;
    return (off < 0 || off >= 7) ? 0.0 : w_[r][off];
  }
  int m_ = 0;
  std::vector<std::array<double, 7>> w_;
  std::vector<int> piv_;
  std::vector<std::array<double, 2>> mult_;
};

}  // namespace

std::unique_ptr<OperatorFactorization> factor_operator(const AbdMatrix& a, AbdBackend backend) {
  if (backend == AbdBackend::banded_lu) return std::make_unique<BandedLU>(a);
  return std::make_unique<StaircaseFactorization>(a);
}

}  // namespace adiosc
