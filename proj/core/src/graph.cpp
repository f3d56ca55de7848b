#include "spcm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace spcm {

namespace {

void check_paired(const Matrix &x, const Matrix &y, const char *op) {
  if (x.cols() != y.cols()) {
    throw DimensionError(std::string(op) + ": X has " + std::to_string(x.cols()) +
                         " columns, Y has " + std::to_string(y.cols()));
  }
  if (x.cols() == 0) {
    throw DimensionError(std::string(op) + ": empty dataset");
  }
}

// Samples live in columns; copy to rows once so the O(N^2) distance sweeps
// run over contiguous memory.
Matrix samples_as_rows(const Matrix &m) { return m.transposed(); }

double sqdist_rows(const Matrix &a, std::size_t i, std::size_t j) {
  const double *ri = a.data() + i * a.cols();
  const double *rj = a.data() + j * a.cols();
  double s = 0.0;
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const double d = ri[k] - rj[k];
    s += d * d;
  }
  return s;
}

} // namespace

Matrix build_affinity(const Matrix &x, const Matrix &y, double lambda_x, double lambda_y,
                      std::size_t k, double bandwidth) {
  check_paired(x, y, "build_affinity");
  const std::size_t n = x.cols();
  if (k >= n) {
    throw ParameterError("build_affinity: k = " + std::to_string(k) + " must be below N = " +
                         std::to_string(n));
  }
  if (lambda_x < 0.0 || lambda_y < 0.0) {
    throw ParameterError("build_affinity: negative modality weight");
  }
  if (!(bandwidth > 0.0)) {
    throw ParameterError("build_affinity: bandwidth must be positive");
  }

  const Matrix xs = samples_as_rows(x);
  const Matrix ys = samples_as_rows(y);

  Matrix full(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = lambda_x * std::exp(-sqdist_rows(xs, i, j) / bandwidth) +
                       lambda_y * std::exp(-sqdist_rows(ys, i, j) / bandwidth);
      full(i, j) = a;
      full(j, i) = a;
    }
  }

  // Keep edge (i,j) when j ranks within i's top-k affinities or i within
  // j's; ties resolve to the lower column index so runs are reproducible.
  Matrix out(n, n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    order.clear();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) order.push_back(j);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::size_t a, std::size_t b) {
                        if (full(i, a) != full(i, b)) return full(i, a) > full(i, b);
                        return a < b;
                      });
    for (std::size_t r = 0; r < k; ++r) {
      const std::size_t j = order[r];
      out(i, j) = full(i, j);
      out(j, i) = full(i, j);
    }
  }
  return out;
}

Matrix build_repulsion(const Matrix &x, const Matrix &y, double lambda_x, double lambda_y) {
  check_paired(x, y, "build_repulsion");
  if (lambda_x < 0.0 || lambda_y < 0.0) {
    throw ParameterError("build_repulsion: negative modality weight");
  }
  const std::size_t n = x.cols();
  const Matrix xs = samples_as_rows(x);
  const Matrix ys = samples_as_rows(y);

  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = lambda_x * sqdist_rows(xs, i, j) + lambda_y * sqdist_rows(ys, i, j);
      out(i, j) = w;
      out(j, i) = w;
    }
  }
  return out;
}

Matrix laplacian(const Matrix &w) {
  if (w.rows() != w.cols()) {
    throw DimensionError("laplacian: weight matrix must be square");
  }
  const std::size_t n = w.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (w(i, j) != w(j, i)) {
        throw ContractError("laplacian: weight matrix is not symmetric at (" + std::to_string(i) +
                            "," + std::to_string(j) + ")");
      }

  Matrix l = w;
  l *= -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double degree = 0.0;
    for (std::size_t j = 0; j < n; ++j) degree += w(i, j);
    l(i, i) = degree - w(i, i);
  }
  return l;
}

Matrix repulsion_laplacian(const Matrix &w_r, const Matrix &v_prev) {
  if (w_r.rows() != w_r.cols()) {
    throw DimensionError("repulsion_laplacian: W_r must be square");
  }
  if (v_prev.cols() != w_r.rows()) {
    throw DimensionError("repulsion_laplacian: V has " + std::to_string(v_prev.cols()) +
                         " columns, W_r is " + std::to_string(w_r.rows()) + "x" +
                         std::to_string(w_r.cols()));
  }
  const std::size_t n = w_r.rows();
  const Matrix vs = v_prev.transposed();

  Matrix weights(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = w_r(i, j) * std::exp(-sqdist_rows(vs, i, j));
      weights(i, j) = w;
      weights(j, i) = w;
    }
  }
  return laplacian(weights);
}

Matrix combined_laplacian(const Matrix &l_a, const Matrix &l_r, double alpha, double beta) {
  if (!(alpha > 0.0)) {
    throw ParameterError("combined_laplacian: alpha must be positive");
  }
  if (l_a.rows() != l_r.rows() || l_a.cols() != l_r.cols()) {
    throw DimensionError("combined_laplacian: Laplacian shapes differ");
  }
  Matrix scaled = l_r;
  scaled *= beta / alpha;
  Matrix out = l_a;
  out -= scaled;
  return out;
}

GraphMatrices build_graphs(const Matrix &x, const Matrix &y, double lambda_x, double lambda_y,
                           std::size_t k, double bandwidth) {
  GraphMatrices g;
  g.affinity = build_affinity(x, y, lambda_x, lambda_y, k, bandwidth);
  g.repulsion = build_repulsion(x, y, lambda_x, lambda_y);
  g.affinity_laplacian = laplacian(g.affinity);
  g.k = k;
  g.bandwidth = bandwidth;
  return g;
}

} // namespace spcm
