#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "stcut/error.hpp"

namespace stcut {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

struct LinearSolveReport {
  double relative_residual = 0.0;
  long size = 0;
  long nonzeros = 0;
  /// 1-norm condition estimate, NaN when not requested.
  double condition = std::numeric_limits<double>::quiet_NaN();
};

/// Sparse LU factorization (COLAMD ordering, partial pivoting) of a square
/// matrix. Keeps a copy of the matrix for residual checks and norms.
class DirectSolver {
 public:
  DirectSolver();
  ~DirectSolver();
  DirectSolver(DirectSolver&&) noexcept;
  DirectSolver& operator=(DirectSolver&&) noexcept;

  /// Throws SingularMatrix on a structurally or numerically zero pivot.
  void factorize(const SparseMatrix& a);
  bool factorized() const { return factorized_; }
  const SparseMatrix& matrix() const { return a_; }

  Vector solve(const Vector& b) const;
  Vector solve_transposed(const Vector& b) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  SparseMatrix a_;
  bool factorized_ = false;
};

/// Direct solve with a relative residual contract of 1e-10.
Vector sparse_solve(const SparseMatrix& a, const Vector& b,
                    LinearSolveReport* report = nullptr);

double norm1(const SparseMatrix& a);

/// Hager/Higham estimate of ||A||_1 ||A^-1||_1 using the factorization.
/// Returns +inf when the factorization failed.
double estimate_condition(const DirectSolver& solver);

/// Factorizes and estimates; +inf for a singular matrix.
double estimate_condition(const SparseMatrix& a);

/// Exact 1-norm condition number through a dense inverse (small systems).
double condition_1norm_dense(const SparseMatrix& a);

struct NewtonConfig {
  /// Threshold on the euclidean norm of the stacked update (w, lambda).
  double tol = 1e-10;
  int max_iters = 30;
  /// The iteration also stops once ||F|| <= residual_rtol * ||F(u_0)||.
  double residual_rtol = 1e-11;
  bool estimate_condition = false;
};

struct NewtonResult {
  Vector solution;
  int iterations = 0;
  std::vector<double> update_norms;
  std::vector<double> residual_norms;
  std::vector<double> linear_residuals;
  double condition = std::numeric_limits<double>::quiet_NaN();
};

/// Newton's method for F(u) = 0: solve DF(u) w = F(u), u <- u - w.
/// `System` provides `Vector residual(const Vector&)` and
/// `SparseMatrix jacobian(const Vector&)`.
template <class System>
NewtonResult newton_solve(const System& system, Vector initial,
                          const NewtonConfig& config) {
  if (!(config.tol > 0.0) || config.max_iters < 1) {
    throw InvalidInput("Newton tolerance must be positive and max_iters >= 1");
  }
  NewtonResult result;
  result.solution = std::move(initial);
  Vector f = system.residual(result.solution);
  const double f0 = f.norm();
  result.residual_norms.push_back(f0);
  DirectSolver solver;
  bool converged = (f0 == 0.0);
  double last_update = std::numeric_limits<double>::infinity();
  while (!converged) {
    if (result.iterations >= config.max_iters) {
      throw NonConvergence("Newton iteration did not converge", last_update);
    }
    solver.factorize(system.jacobian(result.solution));
    Vector w = solver.solve(f);
    const double lin = (solver.matrix() * w - f).norm() / f.norm();
    result.linear_residuals.push_back(lin);
    if (!(lin <= 1e-10)) {
      throw SolverError("linear solve residual above 1e-10", lin);
    }
    result.solution -= w;
    ++result.iterations;
    last_update = w.norm();
    result.update_norms.push_back(last_update);
    if (!std::isfinite(last_update)) {
      throw NonConvergence("Newton update is not finite", last_update);
    }
    if (last_update <= config.tol) {
      converged = true;
      break;
    }
    f = system.residual(result.solution);
    result.residual_norms.push_back(f.norm());
    if (f.norm() <= config.residual_rtol * f0) converged = true;
  }
  if (config.estimate_condition) {
    if (!solver.factorized()) {
      solver.factorize(system.jacobian(result.solution));
    }
    result.condition = estimate_condition(solver);
  }
  return result;
}

}  // namespace stcut
