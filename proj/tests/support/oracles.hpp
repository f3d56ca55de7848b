// Independent reference implementations the tests check the library against.
// Everything here is deliberately naive (dense loops, Gaussian elimination)
// and shares no code with the library's solve paths.
#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <vector>

#include "spcm/matrix.hpp"

namespace oracles {

// Solves the dense system M z = rhs by Gaussian elimination with partial
// pivoting. Throws on a (numerically) singular pivot.
inline std::vector<double> gepp_solve(std::vector<std::vector<double>> m,
                                      std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(m[k][k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(m[i][k]) > best) {
        best = std::abs(m[i][k]);
        pivot = i;
      }
    }
    if (best == 0.0) throw std::runtime_error("gepp_solve: singular matrix");
    std::swap(m[k], m[pivot]);
    std::swap(rhs[k], rhs[pivot]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m[i][k] / m[k][k];
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
      rhs[i] -= f * rhs[k];
    }
  }
  std::vector<double> z(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = rhs[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= m[ii][j] * z[j];
    z[ii] = s / m[ii][ii];
  }
  return z;
}

// Brute-force Sylvester solution of A V + V B = C via the vectorized system
// (I_n (x) A + B^T (x) I_h) vec(V) = vec(C), column-major vec.
inline spcm::Matrix kron_sylvester(const spcm::Matrix &a, const spcm::Matrix &b,
                                   const spcm::Matrix &c) {
  const std::size_t h = a.rows();
  const std::size_t n = b.rows();
  const std::size_t dim = h * n;
  std::vector<std::vector<double>> big(dim, std::vector<double>(dim, 0.0));
  // vec index of V(r, s) is s*h + r.
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t r = 0; r < h; ++r) {
      const std::size_t row = s * h + r;
      for (std::size_t k = 0; k < h; ++k) big[row][s * h + k] += a(r, k);
      for (std::size_t k = 0; k < n; ++k) big[row][k * h + r] += b(k, s);
    }
  std::vector<double> rhs(dim);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t r = 0; r < h; ++r) rhs[s * h + r] = c(r, s);
  const std::vector<double> z = gepp_solve(std::move(big), std::move(rhs));
  spcm::Matrix v(h, n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t r = 0; r < h; ++r) v(r, s) = z[s * h + r];
  return v;
}

inline spcm::Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64 &rng,
                                  double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  spcm::Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

inline spcm::Matrix random_symmetric(std::size_t n, std::mt19937_64 &rng) {
  spcm::Matrix m = random_matrix(n, n, rng);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

// Random SPD matrix G G^T + ridge I.
inline spcm::Matrix random_spd(std::size_t n, std::mt19937_64 &rng, double ridge = 0.5) {
  const spcm::Matrix g = random_matrix(n, n, rng);
  spcm::Matrix m = spcm::multiply_abt(g, g);
  for (std::size_t i = 0; i < n; ++i) m(i, i) += ridge;
  return m;
}

// Relative Frobenius distance ||a - b||_F / max(1, ||b||_F).
inline double rel_fro(const spcm::Matrix &a, const spcm::Matrix &b) {
  spcm::Matrix d = a;
  d -= b;
  return d.frobenius_norm() / std::max(1.0, b.frobenius_norm());
}

} // namespace oracles
