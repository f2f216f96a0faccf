#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace epiccbr {

// Dense row-major matrix of doubles. Embedding tables are (count x dim);
// the propagation kernels stream over rows, so row-major keeps them cache
// friendly and the accumulation order fixed.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double* row(std::size_t i) {
    assert(i < rows_);
    return data_.data() + i * cols_;
  }
  const double* row(std::size_t i) const {
    assert(i < rows_);
    return data_.data() + i * cols_;
  }

  double& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  void set_zero() { std::fill(data_.begin(), data_.end(), 0.0); }

  bool same_shape(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// y += a * x, elementwise over whole matrices.
inline void add_scaled(Matrix& y, const Matrix& x, double a) {
  assert(y.same_shape(x));
  double* yd = y.data().data();
  const double* xd = x.data().data();
  const std::size_t n = y.data().size();
  for (std::size_t i = 0; i < n; ++i) yd[i] += a * xd[i];
}

inline void scale(Matrix& y, double a) {
  for (double& v : y.data()) v *= a;
}

inline double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

// y[i] += a * x[i] over one row of length n.
inline void axpy(double* y, const double* x, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

}  // namespace epiccbr
