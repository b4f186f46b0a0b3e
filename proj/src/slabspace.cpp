#include "stcut/slabspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stcut/error.hpp"

namespace stcut {

namespace {

void collect(const BackgroundMesh& mesh, const std::vector<int>& elements,
             std::vector<int>& verts, std::vector<int>& index) {
  index.assign(mesh.num_vertices(), -1);
  for (int k : elements) {
    for (int v : mesh.triangle(k)) index[v] = 0;
  }
  verts.clear();
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    if (index[v] == 0) {
      index[v] = static_cast<int>(verts.size());
      verts.push_back(v);
    }
  }
}

}  // namespace

SlabSpace::SlabSpace(SlabSets sets, MeshPtr mesh, double t_prev, double t_next,
                     bool with_multiplier, bool with_bulk)
    : sets_(std::move(sets)),
      mesh_(std::move(mesh)),
      t_prev_(t_prev),
      t_next_(t_next),
      with_multiplier_(with_multiplier),
      with_bulk_(with_bulk) {
  if (!(t_next_ > t_prev_)) throw InvalidInput("slab interval is empty");
  if (sets_.active_surface_elements.empty()) {
    throw GeometryError("surface patch is empty");
  }
  if (with_bulk_) {
    collect(*mesh_, sets_.active_bulk_elements, bulk_vertices_, bulk_index_);
  } else {
    bulk_index_.assign(mesh_->num_vertices(), -1);
    std::fill(sets_.bulk_mask.begin(), sets_.bulk_mask.end(), 0);
    sets_.active_bulk_elements.clear();
    sets_.faces_bulk.clear();
  }
  collect(*mesh_, sets_.active_surface_elements, surface_vertices_,
          surface_index_);
}

SlabSpace build_slab_space(SlabSets sets, MeshPtr mesh, double t_prev,
                           double t_next, bool with_multiplier,
                           bool with_bulk) {
  return SlabSpace(std::move(sets), std::move(mesh), t_prev, t_next,
                   with_multiplier, with_bulk);
}

double SlabFunction::nodal(Field f, int a, int vertex) const {
  const int d = space->dof(f, a, vertex);
  return d < 0 ? 0.0 : coefficients[d];
}

double SlabFunction::evaluate(Field f, double t, const Vec2& p) const {
  const double tol = 1e-12 * space->k();
  if (t < space->t_prev() - tol || t > space->t_next() + tol) {
    throw OutOfDomain("time outside the slab");
  }
  const auto& mesh = space->mesh();
  const auto loc = mesh.locate(p);
  const auto& tri = mesh.triangle(loc.triangle);
  const double s = (t - space->t_prev()) / space->k();
  double value = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (space->local_index(f, tri[i]) < 0) {
      throw OutOfDomain("point outside the active patch");
    }
    value += loc.barycentric[i] * (nodal(f, 0, tri[i]) + s * nodal(f, 1, tri[i]));
  }
  return value;
}

NodalTrace end_trace(const SlabFunction& u) {
  const auto& space = *u.space;
  const int nv = space.mesh().num_vertices();
  NodalTrace tr;
  tr.time = space.t_next();
  tr.bulk = Vector::Zero(nv);
  tr.surface = Vector::Zero(nv);
  tr.bulk_defined.assign(nv, 0);
  tr.surface_defined.assign(nv, 0);
  for (int v : space.vertices(Field::Bulk)) {
    tr.bulk[v] = u.nodal(Field::Bulk, 0, v) + u.nodal(Field::Bulk, 1, v);
    tr.bulk_defined[v] = 1;
  }
  for (int v : space.vertices(Field::Surface)) {
    tr.surface[v] = u.nodal(Field::Surface, 0, v) + u.nodal(Field::Surface, 1, v);
    tr.surface_defined[v] = 1;
  }
  return tr;
}

Vector extend_trace(const NodalTrace& trace, const SlabSpace& space, Field f) {
  const auto& mesh = space.mesh();
  const auto& verts = space.vertices(f);
  const Vector& src = trace.values(f);
  const auto& def = trace.defined(f);
  if (src.size() != mesh.num_vertices() ||
      static_cast<int>(def.size()) != mesh.num_vertices()) {
    throw InvalidInput("trace does not match the mesh");
  }
  std::vector<double> value(mesh.num_vertices(), 0.0);
  std::vector<char> known(def.begin(), def.end());
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    if (known[v]) value[v] = src[v];
  }
  std::vector<int> missing;
  for (int v : verts) {
    if (!known[v]) missing.push_back(v);
  }
  if (!missing.empty()) {
    std::vector<std::vector<int>> vtri(mesh.num_vertices());
    for (int t = 0; t < mesh.num_triangles(); ++t) {
      for (int v : mesh.triangle(t)) vtri[v].push_back(t);
    }
    auto all_defined = [&](int t) {
      const auto& tri = mesh.triangle(t);
      return def[tri[0]] && def[tri[1]] && def[tri[2]];
    };
    // Linear extension from a neighbouring element of the previous patch.
    std::vector<int> still;
    for (int v : missing) {
      int source = -1;
      for (int t : vtri[v]) {
        for (int w : mesh.triangle(t)) {
          if (w == v) continue;
          for (int t2 : vtri[w]) {
            if (all_defined(t2)) {
              source = t2;
              break;
            }
          }
          if (source >= 0) break;
        }
        if (source >= 0) break;
      }
      if (source < 0) {
        still.push_back(v);
        continue;
      }
      const auto& tri = mesh.triangle(source);
      const auto phi = mesh.basis(source).values(mesh.vertex(v));
      value[v] = phi[0] * src[tri[0]] + phi[1] * src[tri[1]] + phi[2] * src[tri[2]];
      known[v] = 2;
    }
    // Mean of known neighbours, sweeping until nothing changes.
    while (!still.empty()) {
      std::vector<int> next;
      std::vector<std::pair<int, double>> updates;
      for (int v : still) {
        double sum = 0.0;
        int n = 0;
        for (int t : vtri[v]) {
          for (int w : mesh.triangle(t)) {
            if (w != v && known[w]) {
              sum += value[w];
              ++n;
            }
          }
        }
        if (n > 0) {
          updates.emplace_back(v, sum / n);
        } else {
          next.push_back(v);
        }
      }
      if (updates.empty()) break;
      for (auto [v, x] : updates) {
        value[v] = x;
        known[v] = 2;
      }
      still = std::move(next);
    }
    for (int v : still) {
      double best = std::numeric_limits<double>::infinity();
      for (int w = 0; w < mesh.num_vertices(); ++w) {
        if (!def[w]) continue;
        const double d = (mesh.vertex(w) - mesh.vertex(v)).squaredNorm();
        if (d < best) {
          best = d;
          value[v] = src[w];
        }
      }
      if (!std::isfinite(best)) throw AssemblyError("previous trace is empty");
    }
  }
  Vector out(verts.size());
  for (size_t i = 0; i < verts.size(); ++i) out[i] = value[verts[i]];
  return out;
}

Vector initial_guess(const NodalTrace& trace, const SlabSpace& space) {
  Vector u = Vector::Zero(space.size());
  if (space.has_bulk()) {
    u.segment(space.offset(Field::Bulk, 0), space.num_bulk()) =
        extend_trace(trace, space, Field::Bulk);
  }
  u.segment(space.offset(Field::Surface, 0), space.num_surface()) =
      extend_trace(trace, space, Field::Surface);
  return u;
}

}  // namespace stcut
