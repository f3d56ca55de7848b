#include "spcm/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace spcm {

namespace {

constexpr double kSymmetryRelTol = 1e-10;

using ColMajor = Eigen::MatrixXd;
using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

// Returns the (M + M^T)/2 fold of a square matrix, rejecting inputs whose
// asymmetry exceeds the relative tolerance.
Matrix require_symmetric(const Matrix &m, const char *op) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError(std::string(op) + ": expected a square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  const std::size_t n = m.rows();
  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      asym = std::max(asym, std::abs(m(i, j) - m(j, i)));
  const double scale = m.max_abs();
  if (scale > 0.0 && asym > kSymmetryRelTol * scale) {
    throw ContractError(std::string(op) + ": matrix asymmetry " + std::to_string(asym) +
                        " exceeds relative tolerance " + std::to_string(kSymmetryRelTol));
  }
  Matrix sym(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    sym(i, i) = m(i, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      sym(i, j) = v;
      sym(j, i) = v;
    }
  }
  return sym;
}

} // namespace

SymEig sym_eig(const Matrix &m) {
  const Matrix sym = require_symmetric(m, "sym_eig");
  const std::size_t n = sym.rows();

  // A symmetric row-major buffer reads identically as column-major.
  Eigen::Map<const ColMajor> mapped(sym.data(), static_cast<Eigen::Index>(n),
                                    static_cast<Eigen::Index>(n));
  Eigen::SelfAdjointEigenSolver<ColMajor> solver(mapped);
  if (solver.info() != Eigen::Success) {
    throw Error("sym_eig: eigensolver failed to converge");
  }

  SymEig out;
  out.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out.eigenvalues[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
  out.eigenvectors = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.eigenvectors(i, j) =
          solver.eigenvectors()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return out;
}

Matrix solve_spd(const Matrix &m, const Matrix &rhs) {
  const Matrix sym = require_symmetric(m, "solve_spd");
  const std::size_t n = sym.rows();
  if (rhs.rows() != n) {
    throw DimensionError("solve_spd: rhs has " + std::to_string(rhs.rows()) + " rows, expected " +
                         std::to_string(n));
  }

  Eigen::Map<const ColMajor> mapped(sym.data(), static_cast<Eigen::Index>(n),
                                    static_cast<Eigen::Index>(n));
  Eigen::LLT<ColMajor> llt(mapped);
  if (llt.info() != Eigen::Success) {
    throw SingularityError("solve_spd: matrix is not positive definite");
  }

  RowMajorMap rhs_map(rhs.data(), static_cast<Eigen::Index>(rhs.rows()),
                      static_cast<Eigen::Index>(rhs.cols()));
  ColMajor solution = llt.solve(rhs_map);

  Matrix out(rhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < rhs.rows(); ++i)
    for (std::size_t j = 0; j < rhs.cols(); ++j)
      out(i, j) = solution(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return out;
}

Matrix solve_sylvester(const Matrix &a, const Matrix &b, const Matrix &c) {
  if (c.rows() != a.rows() || c.cols() != b.rows()) {
    throw DimensionError("solve_sylvester: C must be " + std::to_string(a.rows()) + "x" +
                         std::to_string(b.rows()) + ", got " + std::to_string(c.rows()) + "x" +
                         std::to_string(c.cols()));
  }
  return solve_sylvester(sym_eig(a), sym_eig(b), c);
}

Matrix solve_sylvester(const SymEig &a, const SymEig &b, const Matrix &c) {
  const std::size_t h = a.eigenvalues.size();
  const std::size_t n = b.eigenvalues.size();
  if (c.rows() != h || c.cols() != n) {
    throw DimensionError("solve_sylvester: C must be " + std::to_string(h) + "x" +
                         std::to_string(n) + ", got " + std::to_string(c.rows()) + "x" +
                         std::to_string(c.cols()));
  }

  double scale = 1.0;
  for (double p : a.eigenvalues) scale = std::max(scale, std::abs(p));
  for (double q : b.eigenvalues) scale = std::max(scale, std::abs(q));
  const double eps = 1e-10 * scale;

  // Ct = P^T C Q, then divide by the eigenvalue sums.
  Matrix ct = multiply_atb(a.eigenvectors, c) * b.eigenvectors;
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double denom = a.eigenvalues[i] + b.eigenvalues[j];
      if (std::abs(denom) <= eps) {
        throw NonUniqueSolutionError(
            "solve_sylvester: eigenvalue p[" + std::to_string(i) + "] = " +
            std::to_string(a.eigenvalues[i]) + " of A and q[" + std::to_string(j) + "] = " +
            std::to_string(b.eigenvalues[j]) + " of B sum to " + std::to_string(denom) +
            " (|sum| <= " + std::to_string(eps) + "); no unique solution");
      }
      ct(i, j) /= denom;
    }
  }
  return a.eigenvectors * multiply_abt(ct, b.eigenvectors);
}

} // namespace spcm
