#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace adiosc {

// Dense row-major matrix of doubles. This is deliberately minimal: the solver
// hot paths use structured (almost-block-diagonal / sparse-row) kernels, and
// dense matrices appear only in oracles, tests and small coefficient tensors.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  size_t size() const { return a_.size(); }

  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }
  double* row(int i) { return a_.data() + static_cast<size_t>(i) * cols_; }
  const double* row(int i) const { return a_.data() + static_cast<size_t>(i) * cols_; }

  bool same_shape(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

inline Mat matmul(const Mat& a, const Mat& b) {
  Mat c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const double* brow = b.row(k);
      double* crow = c.row(i);
      for (int j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

inline Mat transpose(const Mat& a) {
  Mat t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

inline double max_abs(const Mat& a) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a.data()[i]));
  return m;
}

inline double max_abs_diff(const Mat& a, const Mat& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace adiosc
