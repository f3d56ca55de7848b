#pragma once

#include <vector>

#include "spcm/matrix.hpp"

namespace spcm {

/// Eigendecomposition of a symmetric matrix: M = Q diag(lambda) Q^T with
/// eigenvalues ascending and orthonormal eigenvector columns.
struct SymEig {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
};

/// Full symmetric eigendecomposition. Inputs asymmetric beyond a 1e-10
/// relative tolerance are rejected; mild asymmetry below it is folded away
/// as (M + M^T)/2.
SymEig sym_eig(const Matrix &m);

/// Solve M * S = rhs for symmetric positive-definite M via Cholesky.
/// Throws SingularityError if the factorization finds M not PD.
Matrix solve_spd(const Matrix &m, const Matrix &rhs);

/// Solve the Sylvester equation A*V + V*B = C for symmetric A (h x h) and
/// B (n x n). Diagonalizes both sides, divides the rotated right-hand side
/// entrywise by p_i + q_j, and rotates back: V = P * Vt * Q^T with
/// vt_ij = ct_ij / (p_i + q_j), Ct = P^T C Q.
///
/// Throws NonUniqueSolutionError when some |p_i + q_j| falls below
/// 1e-10 * max(|p|_max, |q|_max, 1), naming the offending pair.
Matrix solve_sylvester(const Matrix &a, const Matrix &b, const Matrix &c);

/// Same solve with the eigendecompositions already in hand (the trainer
/// reuses the decomposition of B for its positive-definiteness check).
Matrix solve_sylvester(const SymEig &a, const SymEig &b, const Matrix &c);

} // namespace spcm
