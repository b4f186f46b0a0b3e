#pragma once

#include <functional>
#include <iosfwd>
#include <memory>

#include "stcut/mesh.hpp"
#include "stcut/solver.hpp"
#include "stcut/velocity.hpp"

namespace stcut {

/// Nodal P1 level set on the refined mesh. Sign convention: rho > 0 in the
/// phase carrying the bulk surfactant (Omega_1), rho < 0 inside the drop.
struct LevelSetField {
  MeshPtr mesh;
  Vector values;
  double time = 0.0;

  double evaluate(const Vec2& p) const;
};

/// Nodal interpolation of a scalar function of position.
LevelSetField interpolate_levelset(MeshPtr mesh,
                                   const std::function<double(const Vec2&)>& f,
                                   double time = 0.0);

/// rho = |x - center| - radius.
LevelSetField init_circle(MeshPtr mesh, const Vec2& center, double radius,
                          double time = 0.0);

/// Streamline-diffusion parameter 2 (k^-2 + |beta|^2 h^-2)^(-1/2).
double tau_sd(double k, double beta_norm, double h);

/// Crank-Nicolson / streamline-diffusion transport of the level set. The
/// system matrices are reused across steps for stationary velocities with an
/// unchanged step size.
class LevelSetAdvector {
 public:
  LevelSetAdvector(MeshPtr mesh, VelocityField velocity);

  LevelSetField step(const LevelSetField& prev, double k);

  /// Element-wise tau used by the last assembled system (for diagnostics).
  const std::vector<double>& element_tau() const { return tau_; }

 private:
  void assemble(double t_prev, double k);

  MeshPtr mesh_;
  VelocityField velocity_;
  double cached_k_ = -1.0;
  double cached_t_ = 0.0;
  SparseMatrix lhs_;
  SparseMatrix rhs_;
  std::vector<double> tau_;
  DirectSolver solver_;
};

/// One transport step from t = prev.time to prev.time + k.
LevelSetField advect_step(const LevelSetField& prev, const VelocityField& beta,
                          double k);

/// Range of |grad rho_h| over refined elements within `band` of the zero
/// level set.
std::pair<double, double> gradient_norm_range(const LevelSetField& rho,
                                              double band);

/// Benchmark geometries with closed-form interface motion.
enum class AnalyticGeometry {
  RotatingCircle,   // example 1
  ShearedCircle,    // example 2, beta = ((y+2)^2/3, 0)
  LinearShearCircle // example 3, beta = (y - 1, 0)
};

/// Level set with the exact zero contour at time t. For the rotating circle
/// this is the signed distance; for the sheared circles it is the distance
/// of the back-traced point to the initial circle.
LevelSetField analytic_levelset(AnalyticGeometry geometry, MeshPtr mesh,
                                double t);

/// Center of the example-1 circle at time t.
Vec2 rotating_circle_center(double t);

/// CSV with header "vertex,x,y,rho".
void write_levelset_csv(std::ostream& os, const LevelSetField& rho);

}  // namespace stcut
