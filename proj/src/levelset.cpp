#include "stcut/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "stcut/error.hpp"
#include "stcut/quadrature.hpp"

namespace stcut {

double LevelSetField::evaluate(const Vec2& p) const {
  const auto loc = mesh->locate(p);
  const auto& tri = mesh->triangle(loc.triangle);
  return loc.barycentric[0] * values[tri[0]] +
         loc.barycentric[1] * values[tri[1]] +
         loc.barycentric[2] * values[tri[2]];
}

LevelSetField interpolate_levelset(MeshPtr mesh,
                                   const std::function<double(const Vec2&)>& f,
                                   double time) {
  LevelSetField rho{mesh, Vector(mesh->num_vertices()), time};
  for (int i = 0; i < mesh->num_vertices(); ++i) {
    rho.values[i] = f(mesh->vertex(i));
  }
  return rho;
}

LevelSetField init_circle(MeshPtr mesh, const Vec2& center, double radius,
                          double time) {
  if (!(radius > 0.0)) throw InvalidInput("circle radius must be positive");
  return interpolate_levelset(
      std::move(mesh),
      [&](const Vec2& x) { return (x - center).norm() - radius; }, time);
}

double tau_sd(double k, double beta_norm, double h) {
  return 2.0 / std::sqrt(1.0 / (k * k) + beta_norm * beta_norm / (h * h));
}

LevelSetAdvector::LevelSetAdvector(MeshPtr mesh, VelocityField velocity)
    : mesh_(std::move(mesh)), velocity_(std::move(velocity)) {}

void LevelSetAdvector::assemble(double t_prev, double k) {
  const auto& mesh = *mesh_;
  const double t_next = t_prev + k;
  const double h = mesh.h();
  std::vector<Eigen::Triplet<double>> lhs, rhs;
  lhs.reserve(9 * static_cast<size_t>(mesh.num_triangles()));
  rhs.reserve(lhs.capacity());
  tau_.assign(mesh.num_triangles(), 0.0);
  const auto rule = triangle_rule(4);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    const auto& basis = mesh.basis(t);
    const auto& a = mesh.vertex(tri[0]);
    const auto& b = mesh.vertex(tri[1]);
    const auto& c = mesh.vertex(tri[2]);
    const double tau =
        tau_sd(k, velocity_(t_next, mesh.centroid(t)).norm(), h);
    tau_[t] = tau;
    double l[3][3] = {}, r[3][3] = {};
    for (const auto& qp : rule) {
      const Vec2 x = qp.bary[0] * a + qp.bary[1] * b + qp.bary[2] * c;
      const double w = qp.weight * basis.area;
      const Vec2 beta_new = velocity_(t_next, x);
      const Vec2 beta_old = velocity_(t_prev, x);
      for (int i = 0; i < 3; ++i) {
        const double test = qp.bary[i] + tau * beta_new.dot(basis.gradients[i]);
        for (int j = 0; j < 3; ++j) {
          l[i][j] += w * test *
                     (qp.bary[j] / k + 0.5 * beta_new.dot(basis.gradients[j]));
          r[i][j] += w * test *
                     (qp.bary[j] / k - 0.5 * beta_old.dot(basis.gradients[j]));
        }
      }
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        lhs.emplace_back(tri[i], tri[j], l[i][j]);
        rhs.emplace_back(tri[i], tri[j], r[i][j]);
      }
    }
  }
  const int n = mesh.num_vertices();
  lhs_.resize(n, n);
  rhs_.resize(n, n);
  lhs_.setFromTriplets(lhs.begin(), lhs.end());
  rhs_.setFromTriplets(rhs.begin(), rhs.end());
  solver_.factorize(lhs_);
  cached_k_ = k;
  cached_t_ = t_prev;
}

LevelSetField LevelSetAdvector::step(const LevelSetField& prev, double k) {
  if (!(k > 0.0)) throw InvalidInput("level set step must be positive");
  if (prev.mesh.get() != mesh_.get()) {
    throw InvalidInput("level set lives on a different mesh");
  }
  const bool reuse = solver_.factorized() && k == cached_k_ &&
                     (velocity_.stationary || prev.time == cached_t_);
  if (!reuse) assemble(prev.time, k);
  const Vector b = rhs_ * prev.values;
  Vector next = solver_.solve(b);
  const double bn = b.norm();
  const double rel = bn > 0 ? (lhs_ * next - b).norm() / bn : 0.0;
  if (!(rel <= 1e-10) || !next.allFinite()) {
    throw SolverError("level set transport solve failed", rel);
  }
  return LevelSetField{mesh_, std::move(next), prev.time + k};
}

LevelSetField advect_step(const LevelSetField& prev, const VelocityField& beta,
                          double k) {
  LevelSetAdvector advector(prev.mesh, beta);
  return advector.step(prev, k);
}

std::pair<double, double> gradient_norm_range(const LevelSetField& rho,
                                              double band) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  const auto& mesh = *rho.mesh;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    const double m = std::min({std::abs(rho.values[tri[0]]),
                               std::abs(rho.values[tri[1]]),
                               std::abs(rho.values[tri[2]])});
    if (m > band) continue;
    const auto& g = mesh.basis(t).gradients;
    const double norm = (rho.values[tri[0]] * g[0] + rho.values[tri[1]] * g[1] +
                         rho.values[tri[2]] * g[2])
                            .norm();
    lo = std::min(lo, norm);
    hi = std::max(hi, norm);
  }
  return {lo, hi};
}

Vec2 rotating_circle_center(double t) {
  using std::numbers::pi;
  return {0.5 + 0.28 * std::sin(pi * t), 0.5 - 0.28 * std::cos(pi * t)};
}

LevelSetField analytic_levelset(AnalyticGeometry geometry, MeshPtr mesh,
                                double t) {
  switch (geometry) {
    case AnalyticGeometry::RotatingCircle:
      return init_circle(std::move(mesh), rotating_circle_center(t), 0.17, t);
    case AnalyticGeometry::ShearedCircle:
      return interpolate_levelset(
          std::move(mesh),
          [t](const Vec2& x) {
            const double x0 = x.x() - t * (x.y() + 2) * (x.y() + 2) / 3.0;
            return std::hypot(x0, x.y()) - 1.0;
          },
          t);
    case AnalyticGeometry::LinearShearCircle:
      return interpolate_levelset(
          std::move(mesh),
          [t](const Vec2& x) {
            const double x0 = x.x() - t * (x.y() - 1.0);
            return std::hypot(x0, x.y() - 1.0) - 0.5;
          },
          t);
  }
  throw ConfigError("unsupported analytic geometry");
}

void write_levelset_csv(std::ostream& os, const LevelSetField& rho) {
  os.precision(17);
  os << "vertex,x,y,rho\n";
  for (int i = 0; i < rho.mesh->num_vertices(); ++i) {
    const auto& p = rho.mesh->vertex(i);
    os << i << ',' << p.x() << ',' << p.y() << ',' << rho.values[i] << '\n';
  }
}

}  // namespace stcut
