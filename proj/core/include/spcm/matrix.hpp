#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spcm/errors.hpp"

namespace spcm {

/// Dense row-major matrix of doubles. Feature matrices hold one sample per
/// column; all file formats serialize in this row-major order.
class Matrix {
public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double &operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }

  double *data() { return values_.data(); }
  const double *data() const { return values_.data(); }

  std::span<double> row(std::size_t i) { return {values_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * cols_, cols_};
  }

  std::vector<double> col(std::size_t j) const {
    std::vector<double> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  void set_col(std::size_t j, std::span<const double> v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  Matrix transposed() const;

  Matrix &operator+=(const Matrix &other);
  Matrix &operator-=(const Matrix &other);
  Matrix &operator*=(double s);

  friend Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }
  Matrix operator*(const Matrix &other) const;

  bool operator==(const Matrix &other) const = default;

  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// A * B^T. Both operands are read row-wise, so this is the cache-friendly
/// product for row-major storage.
Matrix multiply_abt(const Matrix &a, const Matrix &b);

/// A^T * B.
Matrix multiply_atb(const Matrix &a, const Matrix &b);

/// Squared Euclidean distance between column i of a and column j of b.
double col_sqdist(const Matrix &a, std::size_t i, const Matrix &b, std::size_t j);

} // namespace spcm
