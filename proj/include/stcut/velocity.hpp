#pragma once

#include <functional>
#include <string>

#include "stcut/mesh.hpp"

namespace stcut {

/// Analytic velocity field beta(t, x) with its spatial Jacobian
/// J(i, j) = d beta_i / d x_j.
struct VelocityField {
  std::function<Vec2(double, const Vec2&)> value;
  std::function<Mat2(double, const Vec2&)> jacobian;
  bool divergence_free = true;
  /// True when beta does not depend on t.
  bool stationary = true;
  std::string name;

  Vec2 operator()(double t, const Vec2& x) const { return value(t, x); }
};

VelocityField zero_velocity();
VelocityField constant_velocity(const Vec2& b);
/// Rigid rotation about `center` with angular speed `omega`.
VelocityField rigid_rotation(const Vec2& center, double omega);
/// beta = ((y + 2)^2 / 3, 0).
VelocityField quadratic_shear();
/// beta = (y - 1, 0).
VelocityField linear_shear();
/// beta = (-(1 + cos pi x) sin pi y / 2, (1 + cos pi y) sin pi x / 2).
VelocityField vortex_velocity();

/// Tangential divergence tr((I - n n^T) J).
inline double tangential_divergence(const Mat2& jac, const Vec2& n) {
  return jac.trace() - n.dot(jac * n);
}

}  // namespace stcut
