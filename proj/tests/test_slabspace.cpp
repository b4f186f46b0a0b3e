#include <gtest/gtest.h>

#include <algorithm>

#include <random>
#include <set>

#include "stcut/error.hpp"
#include "stcut/slabspace.hpp"
#include "support.hpp"

using namespace stcut;

namespace {

SlabSets two_triangle_sets(const BackgroundMesh& mesh) {
  SlabSets s;
  const int ne = mesh.num_triangles();
  s.bulk_mask.assign(ne, 0);
  s.surface_mask.assign(ne, 0);
  for (int k : {0, 1}) {
    s.bulk_mask[k] = s.surface_mask[k] = 1;
    s.active_bulk_elements.push_back(k);
    s.active_surface_elements.push_back(k);
  }
  return s;
}

}  // namespace

TEST(SlabSpace, TwoTrianglePatch) {
  auto mesh = build_uniform_mesh({0, 1, 0, 1}, 1, 1);
  SlabSpace space(two_triangle_sets(*mesh), mesh, 0.0, 0.5, true);
  EXPECT_EQ(space.num_bulk(), 4);
  EXPECT_EQ(space.num_surface(), 4);
  EXPECT_EQ(space.size(), 17);
  EXPECT_EQ(space.offset(Field::Bulk, 0), 0);
  EXPECT_EQ(space.offset(Field::Surface, 0), 4);
  EXPECT_EQ(space.offset(Field::Bulk, 1), 8);
  EXPECT_EQ(space.offset(Field::Surface, 1), 12);
  EXPECT_EQ(space.multiplier_index(), 16);
  EXPECT_DOUBLE_EQ(space.k(), 0.5);
  SlabSpace plain(two_triangle_sets(*mesh), mesh, 0.0, 0.5, false);
  EXPECT_EQ(plain.size(), 16);
  EXPECT_THROW(plain.multiplier_index(), InvalidInput);
}

TEST(SlabSpace, DofMapIsBijective) {
  auto m = support::unit_square(12);
  support::Slab slab(m, support::moving_circle({0.45, 0.5}, 0.2, {0.5, 0}), TimeRule::Simpson,
                     0.0, 0.05, true);
  const auto& space = *slab.space;
  std::set<int> seen;
  for (Field f : {Field::Bulk, Field::Surface}) {
    for (int a : {0, 1}) {
      for (int v : space.vertices(f)) {
        const int d = space.dof(f, a, v);
        ASSERT_GE(d, 0);
        EXPECT_TRUE(seen.insert(d).second);
      }
    }
  }
  seen.insert(space.multiplier_index());
  EXPECT_EQ(static_cast<int>(seen.size()), space.size());
  EXPECT_EQ(*seen.rbegin(), space.size() - 1);
  for (int v = 0; v < m.coarse->num_vertices(); ++v) {
    const bool active = std::binary_search(space.vertices(Field::Surface).begin(),
                                           space.vertices(Field::Surface).end(), v);
    EXPECT_EQ(space.local_index(Field::Surface, v) >= 0, active);
  }
}

TEST(SlabSpace, LinearShearSystemSize) {
  auto coarse = build_uniform_mesh({-1, 1, 0, 2}, 50, 50);
  auto fine = refine_uniform(*coarse);
  const auto g = build_cut_geometry(init_circle(fine, {0, 1}, 0.5), coarse);
  const CutGeometry* raw[] = {&g};
  SlabSpace space(build_slab_sets(raw, *coarse), coarse, 0.0, 0.025, true);
  // Independent count: vertices of elements classified as bulk or cut.
  std::set<int> nb, ns;
  for (int k = 0; k < coarse->num_triangles(); ++k) {
    for (int v : coarse->triangle(k)) {
      if (g.element_class(k) != ElementClass::Outside) nb.insert(v);
      if (g.element_class(k) == ElementClass::Cut) ns.insert(v);
    }
  }
  EXPECT_EQ(space.num_bulk(), static_cast<int>(nb.size()));
  EXPECT_EQ(space.num_surface(), static_cast<int>(ns.size()));
  EXPECT_EQ(space.size(), 2 * static_cast<int>(nb.size() + ns.size()) + 1);
}

TEST(SlabSpace, Deterministic) {
  auto m = support::unit_square(10);
  const auto shape = support::moving_circle({0.5, 0.5}, 0.22);
  support::Slab a(m, shape, TimeRule::Trapezoid, 0.0, 0.05, true);
  support::Slab b(m, shape, TimeRule::Trapezoid, 0.05, 0.05, true);
  EXPECT_EQ(a.space->vertices(Field::Bulk), b.space->vertices(Field::Bulk));
  EXPECT_EQ(a.space->vertices(Field::Surface), b.space->vertices(Field::Surface));
  EXPECT_EQ(a.space->size(), b.space->size());
}

TEST(SlabSpace, WithoutBulkClearsBulkSets) {
  auto m = support::unit_square(10);
  support::Slab slab(m, support::moving_circle({0.5, 0.5}, 0.22), TimeRule::Simpson, 0.0, 0.05,
                     false, false);
  const auto& space = *slab.space;
  EXPECT_EQ(space.num_bulk(), 0);
  EXPECT_TRUE(space.sets().faces_bulk.empty());
  EXPECT_EQ(space.size(), 2 * space.num_surface());
  EXPECT_EQ(space.offset(Field::Surface, 1), space.num_surface());
}

TEST(SlabFunction, LinearInTime) {
  auto m = support::unit_square(10);
  support::Slab slab(m, support::moving_circle({0.5, 0.5}, 0.22), TimeRule::Simpson, 0.2, 0.1,
                     true);
  const auto& space = *slab.space;
  std::mt19937 gen(11);
  SlabFunction u{&space, support::random_vector(space.size(), gen)};
  std::vector<Vec2> pts;
  for (const auto& s : slab.geoms[0].segments()) pts.push_back(s.point(0.3));
  ASSERT_FALSE(pts.empty());
  for (Field f : {Field::Bulk, Field::Surface}) {
    for (const auto& p : pts) {
      const double a = u.evaluate(f, 0.2, p), b = u.evaluate(f, 0.3, p);
      EXPECT_NEAR(u.evaluate(f, 0.25, p), 0.5 * (a + b), 1e-14);
    }
  }
  // Zero time slope: value independent of t.
  SlabFunction c{&space, Vector::Zero(space.size())};
  for (int v : space.vertices(Field::Surface)) {
    c.coefficients[space.dof(Field::Surface, 0, v)] = 2.0;
    c.coefficients[space.dof(Field::Surface, 1, v)] = 0.0;
  }
  EXPECT_DOUBLE_EQ(c.evaluate(Field::Surface, 0.2, pts[0]), 2.0);
  EXPECT_DOUBLE_EQ(c.evaluate(Field::Surface, 0.3, pts[0]), 2.0);
  // Nodal constants a, b give a + b at t_n.
  for (int v : space.vertices(Field::Surface)) c.coefficients[space.dof(Field::Surface, 1, v)] = 0.5;
  EXPECT_NEAR(c.evaluate(Field::Surface, 0.3, pts[0]), 2.5, 1e-14);
  EXPECT_THROW(c.evaluate(Field::Surface, 0.35, pts[0]), OutOfDomain);
  EXPECT_THROW(c.evaluate(Field::Surface, 0.25, {0.02, 0.02}), OutOfDomain);
}

TEST(Trace, EndTraceSumsComponents) {
  auto m = support::unit_square(8);
  support::Slab slab(m, support::moving_circle({0.5, 0.5}, 0.26), TimeRule::Trapezoid, 0.0,
                     0.1, false);
  const auto& space = *slab.space;
  std::mt19937 gen(5);
  SlabFunction u{&space, support::random_vector(space.size(), gen)};
  const auto tr = end_trace(u);
  EXPECT_DOUBLE_EQ(tr.time, 0.1);
  for (Field f : {Field::Bulk, Field::Surface}) {
    for (int v = 0; v < m.coarse->num_vertices(); ++v) {
      const bool active = space.local_index(f, v) >= 0;
      EXPECT_EQ(tr.defined(f)[v] != 0, active);
      if (active) EXPECT_DOUBLE_EQ(tr.values(f)[v], u.nodal(f, 0, v) + u.nodal(f, 1, v));
    }
  }
}

TEST(Trace, ExtensionReproducesLinearFields) {
  auto m = support::unit_square(12);
  const int nv = m.coarse->num_vertices();
  auto lin = [](const Vec2& p) { return 1.0 + 2.0 * p.x() - 0.5 * p.y(); };
  support::Slab slab(m, support::moving_circle({0.5, 0.5}, 0.2), TimeRule::Trapezoid, 0.0, 0.05,
                     false);
  // Trace missing on the rightmost column of the patch.
  double right = 0;
  for (int v : slab.space->vertices(Field::Surface)) right = std::max(right, m.coarse->vertex(v).x());
  NodalTrace tr = support::constant_trace(nv, 0.0, 0.0);
  int missing = 0;
  for (int v = 0; v < nv; ++v) {
    const Vec2& p = m.coarse->vertex(v);
    tr.surface[v] = lin(p);
    tr.surface_defined[v] = p.x() < right - 1e-12;
    missing += !tr.surface_defined[v] && slab.space->local_index(Field::Surface, v) >= 0;
  }
  ASSERT_GT(missing, 0);
  const Vector ext = extend_trace(tr, *slab.space, Field::Surface);
  const auto& verts = slab.space->vertices(Field::Surface);
  for (size_t i = 0; i < verts.size(); ++i) {
    EXPECT_NEAR(ext[static_cast<Eigen::Index>(i)], lin(m.coarse->vertex(verts[i])), 1e-12);
  }
}

TEST(Trace, ExtensionFallsBackToNearestValue) {
  auto m = support::unit_square(12);
  const int nv = m.coarse->num_vertices();
  NodalTrace tr = support::constant_trace(nv, 0.0, 0.0);
  std::fill(tr.surface_defined.begin(), tr.surface_defined.end(), 0);
  tr.surface[0] = 3.0;
  tr.surface_defined[0] = 1;
  support::Slab slab(m, support::moving_circle({0.5, 0.5}, 0.2), TimeRule::Trapezoid, 0.0, 0.05,
                     false);
  const Vector ext = extend_trace(tr, *slab.space, Field::Surface);
  for (Eigen::Index i = 0; i < ext.size(); ++i) EXPECT_DOUBLE_EQ(ext[i], 3.0);
  std::fill(tr.surface_defined.begin(), tr.surface_defined.end(), 0);
  EXPECT_THROW(extend_trace(tr, *slab.space, Field::Surface), AssemblyError);
}

TEST(Trace, InitialGuessLayout) {
  auto m = support::unit_square(10);
  support::Slab slab(m, support::moving_circle({0.5, 0.5}, 0.2), TimeRule::Simpson, 0.0, 0.05,
                     true);
  const auto& space = *slab.space;
  const auto tr = support::constant_trace(m.coarse->num_vertices(), 0.7, 0.3);
  const Vector u = initial_guess(tr, space);
  ASSERT_EQ(u.size(), space.size());
  for (int v : space.vertices(Field::Bulk)) {
    EXPECT_DOUBLE_EQ(u[space.dof(Field::Bulk, 0, v)], 0.7);
    EXPECT_DOUBLE_EQ(u[space.dof(Field::Bulk, 1, v)], 0.0);
  }
  for (int v : space.vertices(Field::Surface)) {
    EXPECT_DOUBLE_EQ(u[space.dof(Field::Surface, 0, v)], 0.3);
    EXPECT_DOUBLE_EQ(u[space.dof(Field::Surface, 1, v)], 0.0);
  }
  EXPECT_DOUBLE_EQ(u[space.multiplier_index()], 0.0);
}

TEST(SlabSpace, RejectsEmptyInterval) {
  auto mesh = build_uniform_mesh({0, 1, 0, 1}, 1, 1);
  EXPECT_THROW(SlabSpace(two_triangle_sets(*mesh), mesh, 0.5, 0.5, true), InvalidInput);
}
