#include "stcut/solver.hpp"

#include <Eigen/SparseLU>

#include <cmath>
#include <string>

namespace stcut {

struct DirectSolver::Impl {
  mutable Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  // Dense last row/column [A b; c^T d] is eliminated through the scalar
  // Schur complement d - c^T A^-1 b; the sparse block keeps its sparsity.
  bool bordered = false;
  Vector b, c, ab, atc;
  double d = 0.0, schur = 0.0;

  void factor(const SparseMatrix& m) {
    lu.analyzePattern(m);
    lu.factorize(m);
    if (lu.info() != Eigen::Success) {
      // SparseLU names the failing column at the end of its message.
      const std::string msg = lu.lastErrorMessage();
      long pivot = -1;
      const auto pos = msg.find_last_not_of("0123456789");
      if (pos != std::string::npos && pos + 1 < msg.size()) {
        pivot = std::stol(msg.substr(pos + 1));
      }
      throw SingularMatrix("sparse LU failed: " + msg, pivot);
    }
    // A numerically zero pivot surfaces as a non-finite diagonal of U.
    if (!std::isfinite(lu.logAbsDeterminant())) {
      throw SingularMatrix("sparse LU produced a zero pivot", -1);
    }
  }

  bool try_bordered(const SparseMatrix& a) {
    const long n = a.rows();
    const long last = n - 1;
    const long nnz_col = a.col(last).nonZeros();
    if (n < 200 || nnz_col < 4 * std::sqrt(static_cast<double>(n))) return false;
    const SparseMatrix inner = a.topLeftCorner(last, last);
    b = a.col(last).head(last);
    c = a.transpose().col(last).head(last);
    d = a.coeff(last, last);
    try {
      factor(inner);
    } catch (const SingularMatrix&) {
      return false;
    }
    ab = lu.solve(b);
    atc = lu.transpose().solve(c);
    schur = d - c.dot(ab);
    const double scale = std::abs(d) + c.cwiseAbs().dot(ab.cwiseAbs());
    if (!(std::abs(schur) > 1e-14 * scale)) return false;
    return true;
  }

  Vector solve(const Vector& f) const {
    if (!bordered) return lu.solve(f);
    const long last = f.size() - 1;
    const Vector z = lu.solve(f.head(last));
    const double x2 = (f[last] - c.dot(z)) / schur;
    Vector x(f.size());
    x.head(last) = z - x2 * ab;
    x[last] = x2;
    return x;
  }

  Vector solve_transposed(const Vector& f) const {
    if (!bordered) return lu.transpose().solve(f);
    const long last = f.size() - 1;
    const Vector z = lu.transpose().solve(f.head(last));
    const double x2 = (f[last] - b.dot(z)) / schur;
    Vector x(f.size());
    x.head(last) = z - x2 * atc;
    x[last] = x2;
    return x;
  }
};

DirectSolver::DirectSolver() : impl_(std::make_unique<Impl>()) {}
DirectSolver::~DirectSolver() = default;
DirectSolver::DirectSolver(DirectSolver&&) noexcept = default;
DirectSolver& DirectSolver::operator=(DirectSolver&&) noexcept = default;

void DirectSolver::factorize(const SparseMatrix& a) {
  if (a.rows() != a.cols()) throw InvalidInput("matrix is not square");
  factorized_ = false;
  a_ = a;
  a_.makeCompressed();
  impl_->bordered = impl_->try_bordered(a_);
  if (!impl_->bordered) impl_->factor(a_);
  factorized_ = true;
}

Vector DirectSolver::solve(const Vector& b) const {
  if (!factorized_) throw SolverError("solve called before factorize");
  return impl_->solve(b);
}

Vector DirectSolver::solve_transposed(const Vector& b) const {
  if (!factorized_) throw SolverError("solve called before factorize");
  return impl_->solve_transposed(b);
}

Vector sparse_solve(const SparseMatrix& a, const Vector& b,
                    LinearSolveReport* report) {
  if (a.rows() != b.size()) throw InvalidInput("dimension mismatch");
  DirectSolver solver;
  solver.factorize(a);
  Vector x = solver.solve(b);
  const double bn = b.norm();
  const double rel = bn > 0 ? (a * x - b).norm() / bn : (a * x).norm();
  if (report) {
    report->relative_residual = rel;
    report->size = a.rows();
    report->nonzeros = a.nonZeros();
  }
  if (!(rel <= 1e-10)) {
    throw SolverError("sparse solve residual above 1e-10", rel);
  }
  return x;
}

double norm1(const SparseMatrix& a) {
  double best = 0.0;
  for (int j = 0; j < a.outerSize(); ++j) {
    double s = 0.0;
    for (SparseMatrix::InnerIterator it(a, j); it; ++it) s += std::abs(it.value());
    best = std::max(best, s);
  }
  return best;
}

double estimate_condition(const DirectSolver& solver) {
  if (!solver.factorized()) return std::numeric_limits<double>::infinity();
  const SparseMatrix& a = solver.matrix();
  const long n = a.rows();
  // Higham's refinement of Hager's estimator (LAPACK xLACON).
  Vector x = Vector::Constant(n, 1.0 / n);
  double estimate = 0.0;
  Vector sign_prev = Vector::Zero(n);
  long j_prev = -1;
  for (int iter = 0; iter < 5; ++iter) {
    Vector y = solver.solve(x);
    const double y1 = y.lpNorm<1>();
    if (iter > 0 && y1 <= estimate) break;
    estimate = y1;
    Vector xi = y.unaryExpr([](double v) { return v >= 0 ? 1.0 : -1.0; });
    if (iter > 0 && xi == sign_prev) break;
    sign_prev = xi;
    Vector z = solver.solve_transposed(xi);
    long j = 0;
    z.cwiseAbs().maxCoeff(&j);
    if (iter > 0 && (j == j_prev || std::abs(z[j]) <= z.dot(x))) break;
    j_prev = j;
    x.setZero();
    x[j] = 1.0;
  }
  // Alternative lower bound guarding against unlucky sign patterns.
  Vector alt(n);
  for (long i = 0; i < n; ++i) {
    alt[i] = (i % 2 == 0 ? 1.0 : -1.0) * (1.0 + static_cast<double>(i) / std::max(1L, n - 1));
  }
  const double alt_est = 2.0 * solver.solve(alt).lpNorm<1>() / (3.0 * n);
  estimate = std::max(estimate, alt_est);
  return norm1(a) * estimate;
}

double estimate_condition(const SparseMatrix& a) {
  DirectSolver solver;
  try {
    solver.factorize(a);
  } catch (const SingularMatrix&) {
    return std::numeric_limits<double>::infinity();
  }
  return estimate_condition(solver);
}

double condition_1norm_dense(const SparseMatrix& a) {
  Eigen::MatrixXd d(a);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(d);
  if (!lu.isInvertible()) return std::numeric_limits<double>::infinity();
  Eigen::MatrixXd inv = lu.inverse();
  auto n1 = [](const Eigen::MatrixXd& m) {
    return m.cwiseAbs().colwise().sum().maxCoeff();
  };
  return n1(d) * n1(inv);
}

}  // namespace stcut
