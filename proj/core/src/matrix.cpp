#include "spcm/matrix.hpp"

#include <cmath>
#include <string>

namespace spcm {

namespace {

void check_same_shape(const Matrix &a, const Matrix &b, const char *op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + " differ");
  }
}

} // namespace

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix &Matrix::operator+=(const Matrix &other) {
  check_same_shape(*this, other, "Matrix::operator+=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Matrix &Matrix::operator-=(const Matrix &other) {
  check_same_shape(*this, other, "Matrix::operator-=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Matrix &Matrix::operator*=(double s) {
  for (double &v : values_) v *= s;
  return *this;
}

Matrix Matrix::operator*(const Matrix &other) const {
  if (cols_ != other.rows_) {
    throw DimensionError("Matrix::operator*: " + std::to_string(rows_) + "x" +
                         std::to_string(cols_) + " times " + std::to_string(other.rows_) + "x" +
                         std::to_string(other.cols_));
  }
  Matrix c(rows_, other.cols_);
  // i-k-j order keeps all inner accesses contiguous.
  for (std::size_t i = 0; i < rows_; ++i) {
    double *ci = c.data() + i * other.cols_;
    for (std::size_t k = 0; k < cols_; ++k) {
      const double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      const double *bk = other.data() + k * other.cols_;
      for (std::size_t j = 0; j < other.cols_; ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s);
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool Matrix::all_finite() const {
  for (double v : values_)
    if (!std::isfinite(v)) return false;
  return true;
}

Matrix multiply_abt(const Matrix &a, const Matrix &b) {
  if (a.cols() != b.cols()) {
    throw DimensionError("multiply_abt: inner dimensions " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.cols()) + " differ");
  }
  Matrix c(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double *ai = a.data() + i * a.cols();
    for (std::size_t j = 0; j < b.rows(); ++j) {
      const double *bj = b.data() + j * b.cols();
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += ai[k] * bj[k];
      c(i, j) = s;
    }
  }
  return c;
}

Matrix multiply_atb(const Matrix &a, const Matrix &b) {
  if (a.rows() != b.rows()) {
    throw DimensionError("multiply_atb: inner dimensions " + std::to_string(a.rows()) + " and " +
                         std::to_string(b.rows()) + " differ");
  }
  Matrix c(a.cols(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const double *ar = a.data() + r * a.cols();
    const double *br = b.data() + r * b.cols();
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double ari = ar[i];
      if (ari == 0.0) continue;
      double *ci = c.data() + i * b.cols();
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += ari * br[j];
    }
  }
  return c;
}

double col_sqdist(const Matrix &a, std::size_t i, const Matrix &b, std::size_t j) {
  if (a.rows() != b.rows()) {
    throw DimensionError("col_sqdist: row counts differ");
  }
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const double d = a(r, i) - b(r, j);
    s += d * d;
  }
  return s;
}

} // namespace spcm
