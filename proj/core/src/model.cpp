#include "spcm/model.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <string>

#include "binio.hpp"
#include "spcm/linalg.hpp"

namespace spcm {

namespace {

void check_model_shapes(const Matrix &x, const Matrix &y, const LatentModel &m) {
  const std::size_t n = x.cols();
  const std::size_t h = m.v.rows();
  if (y.cols() != n) {
    throw DimensionError("model: X has " + std::to_string(n) + " columns, Y has " +
                         std::to_string(y.cols()));
  }
  if (m.v.cols() != n) {
    throw DimensionError("model: V has " + std::to_string(m.v.cols()) + " columns, expected " +
                         std::to_string(n));
  }
  if (m.u_x.rows() != x.rows() || m.u_x.cols() != h || m.u_y.rows() != y.rows() ||
      m.u_y.cols() != h || m.p_x.rows() != h || m.p_x.cols() != x.rows() || m.p_y.rows() != h ||
      m.p_y.cols() != y.rows()) {
    throw DimensionError("model: factor/projection shapes are inconsistent with the data");
  }
}

double sum_squares(const Matrix &m) {
  double s = 0.0;
  const double *p = m.data();
  for (std::size_t i = 0; i < m.size(); ++i) s += p[i] * p[i];
  return s;
}

double residual_sq(const Matrix &target, const Matrix &a, const Matrix &b) {
  // ||target - a*b||_F^2 without keeping the product around.
  Matrix r = a * b;
  r -= target;
  return sum_squares(r);
}

struct VUpdateResult {
  Matrix v;
  double b_min_eigenvalue;
};

VUpdateResult update_v_impl(const Matrix &x, const Matrix &y, const LatentModel &model,
                            const GraphMatrices &graphs, const Hyperparams &hp,
                            const Matrix &v_prev) {
  check_model_shapes(x, y, model);
  const std::size_t n = x.cols();
  const std::size_t h = model.v.rows();
  if (v_prev.rows() != h || v_prev.cols() != n) {
    throw DimensionError("update_v: v_prev shape mismatch");
  }
  if (graphs.affinity_laplacian.rows() != n || graphs.repulsion.rows() != n) {
    throw DimensionError("update_v: graph matrices do not match N");
  }

  Matrix a(h, h);
  if (hp.lambda_x > 0.0) {
    Matrix g = multiply_atb(model.u_x, model.u_x);
    g *= hp.lambda_x;
    a += g;
  }
  if (hp.lambda_y > 0.0) {
    Matrix g = multiply_atb(model.u_y, model.u_y);
    g *= hp.lambda_y;
    a += g;
  }

  Matrix b(n, n);
  if (hp.alpha != 0.0) {
    Matrix la = graphs.affinity_laplacian;
    la *= hp.alpha;
    b += la;
  }
  if (hp.beta != 0.0) {
    Matrix lr = repulsion_laplacian(graphs.repulsion, v_prev);
    lr *= hp.beta;
    b -= lr;
  }
  const double shift = 2.0 * hp.mu + hp.gamma;
  for (std::size_t i = 0; i < n; ++i) b(i, i) += shift;

  Matrix c(h, n);
  if (hp.lambda_x > 0.0) {
    Matrix t = multiply_atb(model.u_x, x);
    t *= hp.lambda_x;
    c += t;
  }
  if (hp.lambda_y > 0.0) {
    Matrix t = multiply_atb(model.u_y, y);
    t *= hp.lambda_y;
    c += t;
  }
  Matrix px_x = model.p_x * x;
  px_x *= hp.mu;
  c += px_x;
  Matrix py_y = model.p_y * y;
  py_y *= hp.mu;
  c += py_y;

  const SymEig eig_b = sym_eig(b);
  const double b_min = eig_b.eigenvalues.front();
  if (!(b_min > 0.0)) {
    throw ConfigurationError(
        "update_v: B = alpha*L + (2*mu+gamma)*I is not positive definite (smallest eigenvalue " +
        std::to_string(b_min) + "); increase mu or gamma, or lower beta");
  }
  const SymEig eig_a = sym_eig(a);
  return {solve_sylvester(eig_a, eig_b, c), b_min};
}

// Returns rhs_left * (G + ridge I)^(-1) where G = gram_source * gram_source^T.
// The system matrix is symmetric, so the right-multiplication is realized as
// an SPD solve against the transposed right-hand side.
Matrix ridge_rhs_solve(const Matrix &gram_source, const Matrix &rhs_left, double ridge) {
  Matrix g = multiply_abt(gram_source, gram_source);
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) += ridge;
  return solve_spd(g, rhs_left.transposed()).transposed();
}

} // namespace

void Hyperparams::validate() const {
  if (lambda_x < 0.0 || lambda_y < 0.0 || !(lambda_x + lambda_y > 0.0)) {
    throw ParameterError("hyperparams: lambda_x + lambda_y must be positive");
  }
  if (!(mu > 0.0)) throw ParameterError("hyperparams: mu must be positive");
  if (alpha < 0.0) throw ParameterError("hyperparams: alpha must be nonnegative");
  if (beta < 0.0) throw ParameterError("hyperparams: beta must be nonnegative");
  if (gamma < 0.0) throw ParameterError("hyperparams: gamma must be nonnegative");
  if (!(bandwidth > 0.0)) throw ParameterError("hyperparams: bandwidth must be positive");
  if (bits < 1) throw ParameterError("hyperparams: bits must be at least 1");
  if (max_iters < 1) throw ParameterError("hyperparams: max_iters must be at least 1");
  if (std::isnan(rel_tol) || !(rel_tol > 0.0)) {
    throw ParameterError("hyperparams: rel_tol must be positive");
  }
}

double objective(const Matrix &x, const Matrix &y, const LatentModel &model,
                 const GraphMatrices &graphs, const Hyperparams &hp) {
  check_model_shapes(x, y, model);
  const std::size_t n = x.cols();
  if (graphs.affinity.rows() != n || graphs.repulsion.rows() != n) {
    throw DimensionError("objective: graph matrices do not match N");
  }

  double value = 0.0;
  value += hp.lambda_x * residual_sq(x, model.u_x, model.v);
  value += hp.lambda_y * residual_sq(y, model.u_y, model.v);

  // Affinity and repulsion penalties share the pairwise latent distances.
  const Matrix vs = model.v.transposed();
  double affinity_term = 0.0;
  double repulsion_term = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double *vi = vs.data() + i * vs.cols();
    for (std::size_t j = i + 1; j < n; ++j) {
      const double *vj = vs.data() + j * vs.cols();
      double d2 = 0.0;
      for (std::size_t r = 0; r < vs.cols(); ++r) {
        const double d = vi[r] - vj[r];
        d2 += d * d;
      }
      const double wa = graphs.affinity(i, j);
      if (wa != 0.0) affinity_term += wa * d2;
      const double wr = graphs.repulsion(i, j);
      if (wr != 0.0) repulsion_term += wr * std::exp(-d2);
    }
  }
  value += hp.alpha * affinity_term;  // (alpha/2) * full double sum
  value += hp.beta * repulsion_term;

  Matrix proj_x = model.p_x * x;
  proj_x -= model.v;
  value += hp.mu * sum_squares(proj_x);
  Matrix proj_y = model.p_y * y;
  proj_y -= model.v;
  value += hp.mu * sum_squares(proj_y);

  value += hp.gamma * (sum_squares(model.v) + sum_squares(model.u_x) + sum_squares(model.u_y) +
                       sum_squares(model.p_x) + sum_squares(model.p_y));
  return value;
}

Matrix update_px(const Matrix &v, const Matrix &x, double mu, double gamma) {
  if (!(mu > 0.0)) throw ParameterError("update_px: mu must be positive");
  if (gamma < 0.0) throw ParameterError("update_px: gamma must be nonnegative");
  if (v.cols() != x.cols()) {
    throw DimensionError("update_px: V and X column counts differ");
  }
  const Matrix vxt = multiply_abt(v, x); // H x D_x
  return ridge_rhs_solve(x, vxt, gamma / mu);
}

Matrix update_py(const Matrix &v, const Matrix &y, double mu, double gamma) {
  if (!(mu > 0.0)) throw ParameterError("update_py: mu must be positive");
  if (gamma < 0.0) throw ParameterError("update_py: gamma must be nonnegative");
  if (v.cols() != y.cols()) {
    throw DimensionError("update_py: V and Y column counts differ");
  }
  const Matrix vyt = multiply_abt(v, y);
  return ridge_rhs_solve(y, vyt, gamma / mu);
}

Matrix update_ux(const Matrix &x, const Matrix &v, double lambda_x, double gamma) {
  if (!(lambda_x > 0.0)) throw ParameterError("update_ux: lambda_x must be positive");
  if (gamma < 0.0) throw ParameterError("update_ux: gamma must be nonnegative");
  if (v.cols() != x.cols()) {
    throw DimensionError("update_ux: V and X column counts differ");
  }
  const Matrix xvt = multiply_abt(x, v); // D_x x H
  return ridge_rhs_solve(v, xvt, gamma / lambda_x);
}

Matrix update_uy(const Matrix &y, const Matrix &v, double lambda_y, double gamma) {
  if (!(lambda_y > 0.0)) throw ParameterError("update_uy: lambda_y must be positive");
  if (gamma < 0.0) throw ParameterError("update_uy: gamma must be nonnegative");
  if (v.cols() != y.cols()) {
    throw DimensionError("update_uy: V and Y column counts differ");
  }
  const Matrix yvt = multiply_abt(y, v);
  return ridge_rhs_solve(v, yvt, gamma / lambda_y);
}

Matrix update_v(const Matrix &x, const Matrix &y, const LatentModel &model,
                const GraphMatrices &graphs, const Hyperparams &hp, const Matrix &v_prev) {
  return update_v_impl(x, y, model, graphs, hp, v_prev).v;
}

std::pair<LatentModel, TrainReport> train(const Matrix &x, const Matrix &y, const Hyperparams &hp,
                                          const TrainObserver &observer,
                                          const LatentModel *initial) {
  hp.validate();
  if (x.cols() != y.cols()) {
    throw DimensionError("train: X has " + std::to_string(x.cols()) + " columns, Y has " +
                         std::to_string(y.cols()));
  }
  const std::size_t n = x.cols();
  if (n <= hp.k) {
    throw ParameterError("train: need more than k = " + std::to_string(hp.k) +
                         " training columns, got " + std::to_string(n));
  }
  if (!x.all_finite() || !y.all_finite()) {
    throw ParameterError("train: input matrices contain non-finite values");
  }

  const GraphMatrices graphs =
      build_graphs(x, y, hp.lambda_x, hp.lambda_y, hp.k, hp.bandwidth);

  const std::size_t h = hp.bits;
  const std::size_t dx = x.rows();
  const std::size_t dy = y.rows();

  LatentModel model;
  {
    std::mt19937_64 rng(hp.seed);
    std::uniform_real_distribution<double> unit(-0.5, 0.5);
    auto fill = [&](Matrix &m, std::size_t rows, std::size_t cols) {
      m = Matrix(rows, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = unit(rng);
    };
    fill(model.u_x, dx, h);
    fill(model.u_y, dy, h);
    fill(model.v, h, n);
    fill(model.p_x, h, dx);
    fill(model.p_y, h, dy);
  }
  model.mean_x.assign(dx, 0.0);
  model.mean_y.assign(dy, 0.0);

  if (initial != nullptr) {
    check_model_shapes(x, y, *initial);
    if (initial->v.rows() != h) {
      throw DimensionError("train: initial model has wrong code length");
    }
    model.v = initial->v;
    model.u_x = initial->u_x;
    model.u_y = initial->u_y;
    model.p_x = initial->p_x;
    model.p_y = initial->p_y;
  }

  TrainReport report;
  double previous = objective(x, y, model, graphs, hp);
  if (!std::isfinite(previous)) {
    throw DivergenceError("train: initial objective is not finite");
  }
  report.objective_trace.push_back(previous);

  for (std::size_t iter = 1; iter <= hp.max_iters; ++iter) {
    const Matrix v_prev = model.v;
    VUpdateResult vu = update_v_impl(x, y, model, graphs, hp, v_prev);
    model.v = std::move(vu.v);
    model.p_x = update_px(model.v, x, hp.mu, hp.gamma);
    model.p_y = update_py(model.v, y, hp.mu, hp.gamma);
    // With a zero factorization weight the sub-problem reduces to the
    // regularizer alone, whose minimizer is the zero matrix.
    model.u_x = hp.lambda_x > 0.0 ? update_ux(x, model.v, hp.lambda_x, hp.gamma)
                                  : Matrix(dx, h);
    model.u_y = hp.lambda_y > 0.0 ? update_uy(y, model.v, hp.lambda_y, hp.gamma)
                                  : Matrix(dy, h);

    const double current = objective(x, y, model, graphs, hp);
    if (!std::isfinite(current)) {
      throw DivergenceError("train: objective became non-finite at iteration " +
                            std::to_string(iter));
    }
    report.objective_trace.push_back(current);
    report.iterations_run = iter;
    if (observer) observer({iter, current, vu.b_min_eigenvalue});

    const double change = std::abs(current - previous) / std::max(1.0, std::abs(previous));
    previous = current;
    if (change < hp.rel_tol) {
      report.converged = true;
      break;
    }
  }
  report.final_objective = report.objective_trace.back();
  return {std::move(model), std::move(report)};
}

void save_model(const std::filesystem::path &path, const LatentModel &model) {
  const std::size_t h = model.v.rows();
  const std::size_t n = model.v.cols();
  const std::size_t dx = model.u_x.rows();
  const std::size_t dy = model.u_y.rows();
  if (model.u_x.cols() != h || model.u_y.cols() != h || model.p_x.rows() != h ||
      model.p_x.cols() != dx || model.p_y.rows() != h || model.p_y.cols() != dy ||
      model.mean_x.size() != dx || model.mean_y.size() != dy) {
    throw DimensionError("save_model: inconsistent model shapes");
  }

  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("save_model: cannot open " + path.string());

  binio::write_magic(os, "SPCM");
  binio::write_u32(os, 1);
  binio::write_u64(os, h);
  binio::write_u64(os, n);
  binio::write_u64(os, dx);
  binio::write_u64(os, dy);
  auto put = [&os](const Matrix &m) {
    for (std::size_t i = 0; i < m.size(); ++i) binio::write_f64(os, m.data()[i]);
  };
  put(model.v);
  put(model.u_x);
  put(model.u_y);
  put(model.p_x);
  put(model.p_y);
  for (double d : model.mean_x) binio::write_f64(os, d);
  for (double d : model.mean_y) binio::write_f64(os, d);
  if (!os) throw IoError("save_model: write failed for " + path.string());
}

LatentModel load_model(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("load_model: cannot open " + path.string());

  binio::expect_magic(is, "SPCM", "load_model");
  const std::uint32_t version = binio::read_u32(is, "load_model");
  if (version != 1) {
    throw ParseError("load_model: unsupported format version " + std::to_string(version));
  }
  const std::uint64_t h = binio::read_u64(is, "load_model");
  const std::uint64_t n = binio::read_u64(is, "load_model");
  const std::uint64_t dx = binio::read_u64(is, "load_model");
  const std::uint64_t dy = binio::read_u64(is, "load_model");
  if (h == 0 || n == 0 || dx == 0 || dy == 0) {
    throw ParseError("load_model: zero dimension in header");
  }

  LatentModel model;
  auto get = [&is](std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = binio::read_f64(is, "load_model");
    return m;
  };
  model.v = get(h, n);
  model.u_x = get(dx, h);
  model.u_y = get(dy, h);
  model.p_x = get(h, dx);
  model.p_y = get(h, dy);
  model.mean_x.resize(dx);
  for (double &d : model.mean_x) d = binio::read_f64(is, "load_model");
  model.mean_y.resize(dy);
  for (double &d : model.mean_y) d = binio::read_f64(is, "load_model");
  return model;
}

} // namespace spcm
