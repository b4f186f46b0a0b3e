#include "stcut/velocity.hpp"

#include <cmath>
#include <numbers>

namespace stcut {

using std::numbers::pi;

VelocityField zero_velocity() {
  return {[](double, const Vec2&) { return Vec2::Zero().eval(); },
          [](double, const Vec2&) { return Mat2::Zero().eval(); }, true, true,
          "zero"};
}

VelocityField constant_velocity(const Vec2& b) {
  return {[b](double, const Vec2&) { return b; },
          [](double, const Vec2&) { return Mat2::Zero().eval(); }, true, true,
          "constant"};
}

VelocityField rigid_rotation(const Vec2& center, double omega) {
  return {[center, omega](double, const Vec2& x) {
            return Vec2(omega * (center.y() - x.y()), omega * (x.x() - center.x()));
          },
          [omega](double, const Vec2&) {
            Mat2 j;
            j << 0.0, -omega, omega, 0.0;
            return j;
          },
          true, true, "rotation"};
}

VelocityField quadratic_shear() {
  return {[](double, const Vec2& x) {
            return Vec2((x.y() + 2) * (x.y() + 2) / 3.0, 0.0);
          },
          [](double, const Vec2& x) {
            Mat2 j;
            j << 0.0, 2.0 * (x.y() + 2) / 3.0, 0.0, 0.0;
            return j;
          },
          true, true, "quadratic_shear"};
}

VelocityField linear_shear() {
  return {[](double, const Vec2& x) { return Vec2(x.y() - 1.0, 0.0); },
          [](double, const Vec2&) {
            Mat2 j;
            j << 0.0, 1.0, 0.0, 0.0;
            return j;
          },
          true, true, "linear_shear"};
}

VelocityField vortex_velocity() {
  return {[](double, const Vec2& x) {
            const double sx = std::sin(pi * x.x()), sy = std::sin(pi * x.y());
            const double cx = std::cos(pi * x.x()), cy = std::cos(pi * x.y());
            return Vec2(-0.5 * (1 + cx) * sy, 0.5 * (1 + cy) * sx);
          },
          [](double, const Vec2& x) {
            const double sx = std::sin(pi * x.x()), sy = std::sin(pi * x.y());
            const double cx = std::cos(pi * x.x()), cy = std::cos(pi * x.y());
            Mat2 j;
            j << 0.5 * pi * sx * sy, -0.5 * pi * (1 + cx) * cy,
                0.5 * pi * (1 + cy) * cx, -0.5 * pi * sy * sx;
            return j;
          },
          true, true, "vortex"};
}

}  // namespace stcut
