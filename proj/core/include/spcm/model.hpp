#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <utility>
#include <vector>

#include "spcm/graph.hpp"
#include "spcm/matrix.hpp"

namespace spcm {

/// All scalar weights of the training objective plus optimizer controls.
/// Defaults reproduce the reference configuration.
struct Hyperparams {
  double lambda_x = 0.5;  // matrix-factorization weight, modality X
  double lambda_y = 0.5;  // matrix-factorization weight, modality Y
  double alpha = 100.0;   // local-affinity weight
  double beta = 1.0;      // distant-repulsion weight
  double mu = 100.0;      // projection weight
  double gamma = 0.01;    // regularizer weight
  std::size_t k = 5;      // kNN neighbor count
  double bandwidth = 1.0; // squared-distance scale of the affinity kernel
  std::size_t bits = 32;  // hash code length H
  std::size_t max_iters = 200;
  double rel_tol = 1e-4;
  std::uint64_t seed = 0;

  /// Throws ParameterError on an inadmissible combination.
  void validate() const;
};

/// Learned state: latent representations, factor loadings, projections, and
/// the preprocessing statistics needed to encode unseen data. Preprocessing
/// is fixed to per-column L2 normalization followed by mean centering, so
/// the stored means make the projection bias exactly zero.
struct LatentModel {
  Matrix v;   // H x N latent representations
  Matrix u_x; // D_x x H factor loadings
  Matrix u_y; // D_y x H
  Matrix p_x; // H x D_x projection
  Matrix p_y; // H x D_y
  std::vector<double> mean_x; // D_x, training-set feature means
  std::vector<double> mean_y; // D_y

  std::size_t bits() const { return v.rows(); }
};

struct TrainReport {
  std::vector<double> objective_trace; // initial value plus one entry per iteration
  std::size_t iterations_run = 0;
  bool converged = false;
  double final_objective = 0.0;
};

/// Per-iteration observability hook for train().
struct IterationStats {
  std::size_t iteration;      // 1-based
  double objective;           // objective after the iteration's updates
  double b_min_eigenvalue;    // smallest eigenvalue of the V-update's B matrix
};
using TrainObserver = std::function<void(const IterationStats &)>;

/// Full training objective: the two factorization residuals, the
/// local-affinity and distant-repulsion penalties, the two projection
/// residuals, and the Frobenius regularizer.
double objective(const Matrix &x, const Matrix &y, const LatentModel &model,
                 const GraphMatrices &graphs, const Hyperparams &hp);

/// Closed-form minimizer of the objective over P_x with everything else
/// fixed: P_x = V X^T (X X^T + (gamma/mu) I)^(-1).
Matrix update_px(const Matrix &v, const Matrix &x, double mu, double gamma);
Matrix update_py(const Matrix &v, const Matrix &y, double mu, double gamma);

/// Closed-form minimizer over U_x: U_x = X V^T (V V^T + (gamma/lambda_x) I)^(-1).
/// lambda_x must be positive.
Matrix update_ux(const Matrix &x, const Matrix &v, double lambda_x, double gamma);
Matrix update_uy(const Matrix &y, const Matrix &v, double lambda_y, double gamma);

/// Minimizer over V of the quadratic surrogate with the lagged repulsion
/// Laplacian: solves A V + V B = C with
///   A = lambda_x U_x^T U_x + lambda_y U_y^T U_y
///   B = alpha L_a - beta L_r + (2 mu + gamma) I      (L_r built from v_prev)
///   C = lambda_x U_x^T X + lambda_y U_y^T Y + mu P_x X + mu P_y Y
/// Throws ConfigurationError when B is not positive definite.
Matrix update_v(const Matrix &x, const Matrix &y, const LatentModel &model,
                const GraphMatrices &graphs, const Hyperparams &hp, const Matrix &v_prev);

/// Alternating-minimization trainer. x and y must already be normalized and
/// centered with equal column counts N > hp.k. Builds the graphs once,
/// then per iteration updates V, P_x, P_y, U_x, U_y in that order,
/// recomputing the repulsion Laplacian from the previous V. Stops when the
/// relative objective change drops below rel_tol or max_iters is reached.
/// Deterministic for a fixed seed.
///
/// `initial`, when given, overrides the seeded random initialization
/// (testing hook; shapes must match).
std::pair<LatentModel, TrainReport> train(const Matrix &x, const Matrix &y, const Hyperparams &hp,
                                          const TrainObserver &observer = {},
                                          const LatentModel *initial = nullptr);

/// Model file ("SPCM"): magic, format version u32, H/N/D_x/D_y as u64, then
/// V, U_x, U_y, P_x, P_y, mean_x, mean_y as little-endian doubles in
/// row-major order. Round-trips bit-exactly.
void save_model(const std::filesystem::path &path, const LatentModel &model);
LatentModel load_model(const std::filesystem::path &path);

} // namespace spcm
