#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pclab/error.hpp"

namespace pclab {

// Small dense row-major matrix over any ring-like value type. The ring has no
// global zero, so construction takes a zero element.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& zero) : rows_(rows), cols_(cols), a_(rows * cols, zero) {}

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<T>& data() const { return a_; }

  template <class Fn>
  auto map(Fn&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    std::vector<U> out;
    out.reserve(a_.size());
    for (const auto& v : a_) out.push_back(f(v));
    return Matrix<U>(rows_, cols_, std::move(out));
  }

  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data) : rows_(rows), cols_(cols), a_(std::move(data)) {
    if (a_.size() != rows * cols) throw Error(ErrorKind::InvalidArgument, "matrix data size mismatch");
  }

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    x.same_shape(y);
    Matrix r = x;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = x.a_[i] + y.a_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    x.same_shape(y);
    Matrix r = x;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = x.a_[i] - y.a_[i];
    return r;
  }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& v : r.a_) v = -v;
    return r;
  }
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw Error(ErrorKind::InvalidArgument, "matrix shape mismatch in product");
    std::vector<T> out;
    out.reserve(x.rows_ * y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t j = 0; j < y.cols_; ++j) {
        T acc = x(i, 0) * y(0, j);
        for (std::size_t k = 1; k < x.cols_; ++k) acc = acc + x(i, k) * y(k, j);
        out.push_back(std::move(acc));
      }
    return Matrix(x.rows_, y.cols_, std::move(out));
  }
  Matrix& operator+=(const Matrix& o) { return *this = *this + o; }
  Matrix& operator-=(const Matrix& o) { return *this = *this - o; }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  bool is_zero() const {
    for (const auto& v : a_)
      if (!v.is_zero()) return false;
    return true;
  }

  T trace() const {
    T acc = a_.at(0);
    for (std::size_t i = 1; i < rows_; ++i) acc = acc + (*this)(i, i);
    return acc;
  }

 private:
  void same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::InvalidArgument, "matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> a_;
};

// [x, y] = xy - yx
template <class T>
Matrix<T> commutator(const Matrix<T>& x, const Matrix<T>& y) {
  return x * y - y * x;
}

}  // namespace pclab
