#pragma once

#include <functional>
#include <memory>
#include <random>
#include <vector>

#include "stcut/cutgeom.hpp"
#include "stcut/forms.hpp"
#include "stcut/levelset.hpp"
#include "stcut/mesh.hpp"
#include "stcut/quadrature.hpp"
#include "stcut/slabspace.hpp"

namespace stcut::support {

struct Meshes {
  MeshPtr coarse;
  MeshPtr fine;
};

inline Meshes unit_square(int n, DiagonalRule rule = DiagonalRule::Uniform) {
  Meshes m;
  m.coarse = build_uniform_mesh({0, 1, 0, 1}, n, n, rule);
  m.fine = refine_uniform(*m.coarse);
  return m;
}

using Shape = std::function<double(double, const Vec2&)>;

inline Shape moving_circle(Vec2 c, double r, Vec2 velocity = Vec2::Zero()) {
  return [=](double t, const Vec2& x) { return (x - c - t * velocity).norm() - r; };
}

inline CutGeometry geometry_at(const Meshes& m, const Shape& shape, double t) {
  auto rho = interpolate_levelset(m.fine, [&](const Vec2& x) { return shape(t, x); }, t);
  return build_cut_geometry(rho, m.coarse);
}

/// Geometries at the quadrature points of one slab plus its space.
struct Slab {
  TimeQuadrature tq;
  std::vector<CutGeometry> geoms;
  std::vector<const CutGeometry*> raw;
  std::unique_ptr<SlabSpace> space;

  Slab(const Meshes& m, const Shape& shape, TimeRule rule, double t_prev, double k,
       bool multiplier, bool bulk = true)
      : tq(time_quadrature(rule, t_prev, k)) {
    for (double t : tq.points) geoms.push_back(geometry_at(m, shape, t));
    for (const auto& g : geoms) raw.push_back(&g);
    space = std::make_unique<SlabSpace>(build_slab_sets(raw, *m.coarse), m.coarse,
                                        t_prev, tq.points.back(), multiplier, bulk);
  }
  Slab(const Slab&) = delete;
};

inline NodalTrace constant_trace(int nv, double bulk, double surface) {
  NodalTrace tr;
  tr.bulk = Vector::Constant(nv, bulk);
  tr.surface = Vector::Constant(nv, surface);
  tr.bulk_defined.assign(nv, 1);
  tr.surface_defined.assign(nv, 1);
  return tr;
}

inline Vector random_vector(int n, std::mt19937& gen, double lo = -1, double hi = 1) {
  std::uniform_real_distribution<double> d(lo, hi);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = d(gen);
  return v;
}

}  // namespace stcut::support
