#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "spcm/linalg.hpp"
#include "support/oracles.hpp"

using spcm::Matrix;

namespace {

double reconstruction_error(const spcm::SymEig &eig, const Matrix &m) {
  const std::size_t n = m.rows();
  Matrix scaled = eig.eigenvectors; // Q * diag(lambda)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scaled(i, j) *= eig.eigenvalues[j];
  const Matrix rebuilt = spcm::multiply_abt(scaled, eig.eigenvectors);
  return oracles::rel_fro(rebuilt, m) * std::max(1.0, m.frobenius_norm()) /
         std::max(m.frobenius_norm(), 1e-300);
}

double orthogonality_error(const Matrix &q) {
  const Matrix gram = spcm::multiply_atb(q, q);
  Matrix diff = gram;
  diff -= Matrix::identity(q.cols());
  return diff.max_abs();
}

} // namespace

TEST_CASE("sym_eig: identity matrix") {
  const auto eig = spcm::sym_eig(Matrix::identity(3));
  for (double lambda : eig.eigenvalues) CHECK(lambda == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(orthogonality_error(eig.eigenvectors) < 1e-10);
}

TEST_CASE("sym_eig: already-diagonal matrix sorts ascending") {
  Matrix m(2, 2);
  m(0, 0) = 3.0;
  m(1, 1) = -1.0;
  const auto eig = spcm::sym_eig(m);
  CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(eig.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));
  // Eigenvectors of a diagonal matrix are signed coordinate axes.
  for (std::size_t j = 0; j < 2; ++j) {
    double max_entry = 0.0;
    for (std::size_t i = 0; i < 2; ++i) max_entry = std::max(max_entry, std::abs(eig.eigenvectors(i, j)));
    CHECK(max_entry == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("sym_eig: random symmetric 16x16 satisfies the residual oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix m = oracles::random_symmetric(16, rng);
    const auto eig = spcm::sym_eig(m);
    const double m_norm = m.frobenius_norm();

    // Per-pair residual ||M q - lambda q|| <= 1e-8 ||M||.
    for (std::size_t j = 0; j < 16; ++j) {
      double residual_sq = 0.0;
      for (std::size_t i = 0; i < 16; ++i) {
        double mq = 0.0;
        for (std::size_t k = 0; k < 16; ++k) mq += m(i, k) * eig.eigenvectors(k, j);
        const double r = mq - eig.eigenvalues[j] * eig.eigenvectors(i, j);
        residual_sq += r * r;
      }
      CHECK(std::sqrt(residual_sq) <= 1e-8 * m_norm);
    }
    CHECK(orthogonality_error(eig.eigenvectors) <= 1e-10);
    CHECK(reconstruction_error(eig, m) <= 1e-8);
    for (std::size_t i = 0; i + 1 < eig.eigenvalues.size(); ++i)
      CHECK(eig.eigenvalues[i] <= eig.eigenvalues[i + 1]);
  }
}

TEST_CASE("sym_eig: rejects non-square and asymmetric inputs") {
  CHECK_THROWS_AS(spcm::sym_eig(Matrix(2, 3)), spcm::DimensionError);

  Matrix asym = Matrix::identity(3);
  asym(0, 1) = 0.5; // far beyond the 1e-10 relative tolerance
  CHECK_THROWS_AS(spcm::sym_eig(asym), spcm::ContractError);

  // Asymmetry below tolerance is folded away instead.
  Matrix mild = Matrix::identity(3);
  mild(0, 1) = 1e-12;
  CHECK_NOTHROW(spcm::sym_eig(mild));
}

TEST_CASE("solve_spd: identity and scalar matrices") {
  std::mt19937_64 rng(11);
  const Matrix rhs = oracles::random_matrix(3, 4, rng);
  CHECK(oracles::rel_fro(spcm::solve_spd(Matrix::identity(3), rhs), rhs) < 1e-14);

  Matrix two_i = Matrix::identity(3);
  two_i *= 2.0;
  const Matrix half = spcm::solve_spd(two_i, Matrix::identity(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(half(i, j) == doctest::Approx(i == j ? 0.5 : 0.0).epsilon(1e-14));
}

TEST_CASE("solve_spd: random SPD residual and recovery oracles") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix m = oracles::random_spd(20, rng);
    const Matrix rhs = oracles::random_matrix(20, 6, rng);
    const Matrix s = spcm::solve_spd(m, rhs);
    Matrix residual = m * s;
    residual -= rhs;
    CHECK(residual.frobenius_norm() / rhs.frobenius_norm() < 1e-9);

    // solve_spd(M, M*S0) recovers S0.
    const Matrix s0 = oracles::random_matrix(20, 3, rng);
    const Matrix recovered = spcm::solve_spd(m, m * s0);
    CHECK(oracles::rel_fro(recovered, s0) < 1e-8);
  }
}

TEST_CASE("solve_spd: indefinite matrix is rejected during factorization") {
  Matrix m = Matrix::identity(3);
  m(2, 2) = -1.0;
  CHECK_THROWS_AS(spcm::solve_spd(m, Matrix::identity(3)), spcm::SingularityError);
}

TEST_CASE("solve_sylvester: A = B = I halves C") {
  std::mt19937_64 rng(17);
  const Matrix m = oracles::random_matrix(4, 6, rng);
  Matrix c = m;
  c *= 2.0;
  const Matrix v = spcm::solve_sylvester(Matrix::identity(4), Matrix::identity(6), c);
  CHECK(oracles::rel_fro(v, m) < 1e-12);
}

TEST_CASE("solve_sylvester: A = 0, B = I returns C") {
  std::mt19937_64 rng(19);
  const Matrix c = oracles::random_matrix(3, 5, rng);
  const Matrix v = spcm::solve_sylvester(Matrix(3, 3), Matrix::identity(5), c);
  CHECK(oracles::rel_fro(v, c) < 1e-12);
}

TEST_CASE("solve_sylvester: random SPD pair matches the Kronecker oracle") {
  std::mt19937_64 rng(23);
  const Matrix a = oracles::random_spd(8, rng);
  const Matrix b = oracles::random_spd(12, rng);
  const Matrix c = oracles::random_matrix(8, 12, rng);

  const Matrix v = spcm::solve_sylvester(a, b, c);
  const Matrix v_oracle = oracles::kron_sylvester(a, b, c);
  CHECK(oracles::rel_fro(v, v_oracle) < 1e-8);

  Matrix residual = a * v + v * b;
  residual -= c;
  CHECK(residual.frobenius_norm() <= 1e-8 * (1.0 + c.frobenius_norm()));
}

TEST_CASE("solve_sylvester: agrees with the Kronecker oracle across sizes up to 32") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t h = 1 + rng() % 32;
    const std::size_t n = 1 + rng() % 32;
    // Symmetric (not necessarily definite) B; shift keeps sums away from zero.
    Matrix a = oracles::random_spd(h, rng, 1.0);
    Matrix b = oracles::random_symmetric(n, rng);
    for (std::size_t i = 0; i < n; ++i) b(i, i) += double(n) + 2.0;
    const Matrix c = oracles::random_matrix(h, n, rng);

    const Matrix v = spcm::solve_sylvester(a, b, c);
    CHECK(oracles::rel_fro(v, oracles::kron_sylvester(a, b, c)) < 1e-8);

    Matrix residual = a * v + v * b;
    residual -= c;
    CHECK(residual.frobenius_norm() <= 1e-8 * (1.0 + c.frobenius_norm()));
  }
}

TEST_CASE("solve_sylvester: eigenvalue-sum collapse names the offending pair") {
  Matrix a(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  Matrix b(2, 2);
  b(0, 0) = -1.0;
  b(1, 1) = 5.0;
  const Matrix c(2, 2, 1.0);
  CHECK_THROWS_WITH_AS(spcm::solve_sylvester(a, b, c),
                       doctest::Contains("no unique solution"), spcm::NonUniqueSolutionError);
}

TEST_CASE("solve_sylvester: shape mismatch of C is a dimension error") {
  CHECK_THROWS_AS(spcm::solve_sylvester(Matrix::identity(2), Matrix::identity(3), Matrix(3, 2)),
                  spcm::DimensionError);
}
