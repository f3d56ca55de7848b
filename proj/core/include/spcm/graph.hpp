#pragma once

#include <cstddef>

#include "spcm/matrix.hpp"

namespace spcm {

/// Neighborhood structure built once per training set: the kNN-sparse local
/// affinity matrix, the dense distant-repulsion matrix, and the affinity
/// Laplacian. The repulsion Laplacian depends on the evolving latent matrix
/// and is rebuilt every iteration (repulsion_laplacian).
struct GraphMatrices {
  Matrix affinity;            // W_a, symmetric, zero diagonal, kNN-sparse
  Matrix repulsion;           // W_r, symmetric, zero diagonal, dense
  Matrix affinity_laplacian;  // L_a = D_a - W_a
  std::size_t k = 0;
  double bandwidth = 1.0;
};

/// Local-affinity matrix: entry (i,j) is
///   lambda_x * exp(-||x_i - x_j||^2 / bandwidth) + lambda_y * exp(-||y_i - y_j||^2 / bandwidth)
/// kept only where j is among i's k nearest neighbors or vice versa
/// (neighbors ranked by that same combined affinity; ties favor the lower
/// column index). Symmetric, zero diagonal.
Matrix build_affinity(const Matrix &x, const Matrix &y, double lambda_x, double lambda_y,
                      std::size_t k, double bandwidth);

/// Distant-repulsion matrix: entry (i,j) is
///   lambda_x * ||x_i - x_j||^2 + lambda_y * ||y_i - y_j||^2, dense.
Matrix build_repulsion(const Matrix &x, const Matrix &y, double lambda_x, double lambda_y);

/// Graph Laplacian L = diag(row sums of W) - W for symmetric zero-diagonal W.
Matrix laplacian(const Matrix &w);

/// Laplacian of the lagged repulsion weights W_r[i,j] * exp(-||v_i - v_j||^2)
/// where v are columns of the previous iteration's latent matrix.
Matrix repulsion_laplacian(const Matrix &w_r, const Matrix &v_prev);

/// L = L_a - (beta/alpha) L_r.
Matrix combined_laplacian(const Matrix &l_a, const Matrix &l_r, double alpha, double beta);

/// Convenience bundle used by the trainer.
GraphMatrices build_graphs(const Matrix &x, const Matrix &y, double lambda_x, double lambda_y,
                           std::size_t k, double bandwidth);

} // namespace spcm
