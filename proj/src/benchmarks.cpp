#include "stcut/benchmarks.hpp"

#include <cmath>
#include <numbers>

#include "stcut/error.hpp"
#include "stcut/quadrature.hpp"

namespace stcut {

using std::numbers::pi;

namespace ex1 {

constexpr double kRadius = 0.17;

double exact_bulk(double t, const Vec2& p) {
  return 0.5 + 0.4 * std::cos(pi * p.x()) * std::cos(pi * p.y()) *
                   std::cos(2 * pi * t);
}

double exact_surface(double t, const Vec2& p) {
  const Vec2 d = p - rotating_circle_center(t);
  const double r = d.norm();
  const Vec2 n = r > 0 ? Vec2(d / r) : Vec2::Zero();
  const double c = std::cos(2 * pi * t);
  const double cx = std::cos(pi * p.x()), sx = std::sin(pi * p.x());
  const double cy = std::cos(pi * p.y()), sy = std::sin(pi * p.y());
  const double u_b = 0.5 + 0.4 * cx * cy * c;
  return (u_b + pi / 250 * c * (sx * cy * n.x() + cx * sy * n.y())) /
         (1.5 + 0.4 * cx * cy * c);
}

double source_bulk(double t, const Vec2& p) {
  return source_bulk_xy(t, p.x(), p.y());
}

double source_surface(double t, const Vec2& p) {
  return source_surface_xy(t, p.x(), p.y());
}

double exact_mass(double t) {
  const Vec2 c = rotating_circle_center(t);
  // The cosine part of u_B integrates to zero over the unit square.
  double disk = 0.0;
  const auto radial = gauss_line_rule(5);
  constexpr int kSectors = 64;
  constexpr int kShells = 8;
  for (int s = 0; s < kShells; ++s) {
    for (const auto& rp : radial) {
      const double r = kRadius * (s + rp.s) / kShells;
      const double wr = rp.weight * kRadius / kShells * r;
      for (int a = 0; a < kSectors; ++a) {
        const double phi = 2 * pi * a / kSectors;
        const Vec2 p = c + r * Vec2(std::cos(phi), std::sin(phi));
        disk += wr * (2 * pi / kSectors) * exact_bulk(t, p);
      }
    }
  }
  double surface = 0.0;
  constexpr int kNodes = 512;
  for (int a = 0; a < kNodes; ++a) {
    const double phi = 2 * pi * a / kNodes;
    const Vec2 p = c + kRadius * Vec2(std::cos(phi), std::sin(phi));
    surface += exact_surface(t, p) * 2 * pi * kRadius / kNodes;
  }
  return 0.5 - disk + surface;
}

}  // namespace ex1

double ex4_initial_bulk(const Vec2& p) {
  constexpr double r0 = 0.3;
  const double r = (p - Vec2(0.1, 0.0)).norm();
  const double base = 0.5 * (1 - p.x() * p.x()) * (1 - p.x() * p.x());
  if (r > 1.5 * r0) return base;
  if (r >= r0) return base * 0.5 * (1 - std::cos((r - r0) * pi / (0.5 * r0)));
  return 0.0;
}

namespace {

SpaceFunction circle(const Vec2& c, double r) {
  return [c, r](const Vec2& x) { return (x - c).norm() - r; };
}

}  // namespace

Problem make_problem(int id, std::optional<CouplingKind> coupling) {
  const CouplingKind kind = coupling.value_or(CouplingKind::Langmuir);
  auto dimensional = [kind](double bB, double bS, double bBS) {
    switch (kind) {
      case CouplingKind::Henry: return CouplingModel::henry(bB, bS);
      case CouplingKind::Frumkin: return CouplingModel::frumkin(bB, bS, bBS, 1.0);
      default: return CouplingModel::langmuir(bB, bS, bBS);
    }
  };
  Problem p;
  p.id = id;
  switch (id) {
    case 1:
      p.name = "rotating_circle";
      p.box = {0, 1, 0, 1};
      p.nx = p.ny = 40;
      p.k_ratio = 0.5;
      p.t_end = 0.5;
      p.velocity = rigid_rotation({0.5, 0.5}, pi);
      p.coeffs = {0.01, 1.0, dimensional(1, 1, 1)};
      p.levelset0 = circle({0.5, 0.22}, ex1::kRadius);
      p.analytic = AnalyticGeometry::RotatingCircle;
      p.analytic_default = true;
      p.initial_bulk = [](const Vec2& x) { return ex1::exact_bulk(0, x); };
      p.initial_surface = [](const Vec2& x) { return ex1::exact_surface(0, x); };
      p.exact_bulk = ex1::exact_bulk;
      p.exact_surface = ex1::exact_surface;
      p.sources = {ex1::source_bulk, ex1::source_surface};
      p.exact_mass = ex1::exact_mass;
      break;
    case 2:
      p.name = "insoluble_shear";
      p.box = {-2, 6.4, -2, 2};
      p.nx = 147;
      p.ny = 70;
      p.k_ratio = 0.125;
      p.t_end = 2.0;
      p.velocity = quadratic_shear();
      p.coeffs = {0.0, 1.0, CouplingModel::henry(0, 0)};
      p.bulk = false;
      p.levelset0 = circle({0, 0}, 1.0);
      p.analytic = AnalyticGeometry::ShearedCircle;
      p.initial_bulk = [](const Vec2&) { return 0.0; };
      p.initial_surface = [](const Vec2& x) { return x.y() / 1.0 + 2; };
      break;
    case 3:
      p.name = "linear_shear";
      p.box = {-1, 1, 0, 2};
      p.nx = p.ny = 50;
      p.k_ratio = 0.625;
      p.t_end = 0.5;
      p.velocity = linear_shear();
      p.coeffs = {1.0, 0.1, CouplingModel::dimensionless(1.0, 1.0, 0.2, kind, 1.0)};
      p.levelset0 = circle({0, 1}, 0.5);
      p.analytic = AnalyticGeometry::LinearShearCircle;
      p.initial_bulk = [](const Vec2&) { return 2.0 / 3.0; };
      p.initial_surface = [](const Vec2&) { return 0.4; };
      break;
    case 4:
      p.name = "vortex";
      p.box = {-1, 1, -1, 1};
      p.nx = p.ny = 64;
      p.k_ratio = 0.125;
      p.t_end = 2.0;
      p.velocity = vortex_velocity();
      p.coeffs = {0.01, 0.01, CouplingModel::dimensionless(1.0, 1.0, 1.0, kind, 1.0)};
      p.levelset0 = circle({0.1, 0}, 0.3);
      p.initial_bulk = ex4_initial_bulk;
      p.initial_surface = [](const Vec2&) { return 0.0; };
      break;
    default:
      throw ConfigError("unknown example " + std::to_string(id));
  }
  return p;
}

}  // namespace stcut
