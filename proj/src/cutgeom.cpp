#include "stcut/cutgeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "stcut/error.hpp"

namespace stcut {

namespace {

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Zero crossing on the edge (i, j). Always interpolated from the lower vertex
// id so that both triangles sharing the edge produce the same bits.
Vec2 edge_root(const BackgroundMesh& mesh, const Vector& rho, int i, int j) {
  if (i > j) std::swap(i, j);
  const double s = rho[i] / (rho[i] - rho[j]);
  return mesh.vertex(i) + s * (mesh.vertex(j) - mesh.vertex(i));
}

double triangle_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * cross(b - a, c - a);
}

void require_refined(const BackgroundMesh& mesh) {
  if (!mesh.is_refined()) {
    throw InvalidInput("level set must live on a refined mesh");
  }
}

}  // namespace

Vector sanitized_levelset(const LevelSetField& rho) {
  if (rho.values.size() != rho.mesh->num_vertices()) {
    throw InvalidInput("level set size does not match its mesh");
  }
  if (!rho.values.allFinite()) throw InvalidInput("level set is not finite");
  const double eps = 1e-12 * rho.mesh->h();
  Vector v = rho.values;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) < eps) v[i] = eps;
  }
  return v;
}

std::vector<InterfaceSegment> extract_interface(const LevelSetField& rho) {
  const auto& mesh = *rho.mesh;
  require_refined(mesh);
  const Vector v = sanitized_levelset(rho);
  std::vector<InterfaceSegment> out;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    const bool pos[3] = {v[tri[0]] > 0, v[tri[1]] > 0, v[tri[2]] > 0};
    if (pos[0] == pos[1] && pos[1] == pos[2]) continue;
    InterfaceSegment seg;
    int found = 0;
    for (int k = 0; k < 3; ++k) {
      const int a = (k + 1) % 3, b = (k + 2) % 3;
      if (pos[a] == pos[b]) continue;
      seg.ends[found] = edge_root(mesh, v, tri[a], tri[b]);
      seg.end_edges[found] = mesh.triangle_edges(t)[k];
      ++found;
    }
    const auto& g = mesh.basis(t).gradients;
    const Vec2 grad = v[tri[0]] * g[0] + v[tri[1]] * g[1] + v[tri[2]] * g[2];
    seg.normal = -grad.normalized();
    if (cross(seg.ends[1] - seg.ends[0], seg.normal) < 0) {
      std::swap(seg.ends[0], seg.ends[1]);
      std::swap(seg.end_edges[0], seg.end_edges[1]);
    }
    seg.refined_element = t;
    seg.coarse_element = mesh.parents()[t];
    out.push_back(seg);
  }
  return out;
}

RefinedBulkCells decompose_bulk(const LevelSetField& rho) {
  const auto& mesh = *rho.mesh;
  require_refined(mesh);
  const Vector v = sanitized_levelset(rho);
  RefinedBulkCells out;
  out.offsets.reserve(mesh.num_triangles() + 1);
  out.full.assign(mesh.num_triangles(), 0);
  out.offsets.push_back(0);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    const int npos = (v[tri[0]] > 0) + (v[tri[1]] > 0) + (v[tri[2]] > 0);
    if (npos == 3) {
      out.cells.push_back({{mesh.vertex(tri[0]), mesh.vertex(tri[1]),
                            mesh.vertex(tri[2])},
                           mesh.area(t)});
      out.full[t] = 1;
    } else if (npos > 0) {
      // Clip the counter-clockwise vertex loop against rho > 0.
      std::array<Vec2, 4> poly;
      int m = 0;
      for (int k = 0; k < 3; ++k) {
        const int a = tri[k], b = tri[(k + 1) % 3];
        if (v[a] > 0) poly[m++] = mesh.vertex(a);
        if ((v[a] > 0) != (v[b] > 0)) poly[m++] = edge_root(mesh, v, a, b);
      }
      auto add = [&](const Vec2& a, const Vec2& b, const Vec2& c) {
        out.cells.push_back({{a, b, c}, triangle_area(a, b, c)});
      };
      if (m == 3) {
        add(poly[0], poly[1], poly[2]);
      } else if ((poly[0] - poly[2]).squaredNorm() <=
                 (poly[1] - poly[3]).squaredNorm()) {
        add(poly[0], poly[1], poly[2]);
        add(poly[0], poly[2], poly[3]);
      } else {
        add(poly[1], poly[2], poly[3]);
        add(poly[1], poly[3], poly[0]);
      }
    }
    out.offsets.push_back(static_cast<int>(out.cells.size()));
  }
  return out;
}

CutGeometry::CutGeometry(double time, MeshPtr coarse,
                         std::vector<InterfaceSegment> segments,
                         const RefinedBulkCells& refined_cells)
    : time_(time), coarse_(std::move(coarse)), segments_(std::move(segments)) {
  const int ne = coarse_->num_triangles();
  if (static_cast<int>(refined_cells.full.size()) != 4 * ne) {
    throw InvalidInput("refined cells do not match the coarse mesh");
  }
  std::stable_sort(segments_.begin(), segments_.end(),
                   [](const InterfaceSegment& a, const InterfaceSegment& b) {
                     return a.refined_element < b.refined_element;
                   });
  segment_offsets_.assign(ne + 1, 0);
  for (const auto& s : segments_) {
    if (s.coarse_element < 0 || s.coarse_element >= ne) {
      throw InvalidInput("segment parent outside the coarse mesh");
    }
    ++segment_offsets_[s.coarse_element + 1];
  }
  for (int k = 0; k < ne; ++k) segment_offsets_[k + 1] += segment_offsets_[k];

  classes_.resize(ne);
  cell_offsets_.reserve(ne + 1);
  cell_offsets_.push_back(0);
  for (int k = 0; k < ne; ++k) {
    bool all_full = true;
    for (int c = 4 * k; c < 4 * k + 4; ++c) all_full &= refined_cells.full[c] != 0;
    if (segment_offsets_[k + 1] > segment_offsets_[k]) {
      classes_[k] = ElementClass::Cut;
    } else if (all_full) {
      classes_[k] = ElementClass::InsideOmega1;
    } else {
      classes_[k] = ElementClass::Outside;
    }
    if (all_full) {
      const auto& tri = coarse_->triangle(k);
      cells_.push_back({{coarse_->vertex(tri[0]), coarse_->vertex(tri[1]),
                         coarse_->vertex(tri[2])},
                        coarse_->area(k)});
    } else {
      for (int c = 4 * k; c < 4 * k + 4; ++c) {
        for (int i = refined_cells.offsets[c]; i < refined_cells.offsets[c + 1]; ++i) {
          cells_.push_back(refined_cells.cells[i]);
        }
      }
    }
    cell_offsets_.push_back(static_cast<int>(cells_.size()));
  }
}

double CutGeometry::bulk_area() const {
  double a = 0.0;
  for (const auto& c : cells_) a += c.area;
  return a;
}

double CutGeometry::perimeter() const {
  double l = 0.0;
  for (const auto& s : segments_) l += s.length();
  return l;
}

bool CutGeometry::is_closed() const {
  std::unordered_map<int, int> degree;
  for (const auto& s : segments_) {
    ++degree[s.end_edges[0]];
    ++degree[s.end_edges[1]];
  }
  return std::all_of(degree.begin(), degree.end(),
                     [](const auto& kv) { return kv.second == 2; });
}

double CutGeometry::enclosed_area() const {
  if (!is_closed()) throw GeometryError("interface polyline is not closed");
  double a = 0.0;
  for (const auto& s : segments_) a += 0.5 * cross(s.ends[0], s.ends[1]);
  return a;
}

CutGeometry build_cut_geometry(const LevelSetField& rho, MeshPtr coarse) {
  if (rho.mesh->num_triangles() != 4 * coarse->num_triangles()) {
    throw InvalidInput("level set mesh is not the refinement of the coarse mesh");
  }
  return CutGeometry(rho.time, std::move(coarse), extract_interface(rho),
                     decompose_bulk(rho));
}

std::vector<ElementClass> classify_elements(const CutGeometry& geom,
                                            const BackgroundMesh& coarse) {
  if (&geom.coarse_mesh() != &coarse) {
    throw InvalidInput("geometry was built on a different mesh");
  }
  return geom.classification();
}

SlabSets build_slab_sets(std::span<const CutGeometry* const> geoms,
                         const BackgroundMesh& coarse, bool require_surface) {
  if (geoms.empty()) throw InvalidInput("slab needs at least one geometry");
  const int ne = coarse.num_triangles();
  SlabSets sets;
  sets.bulk_mask.assign(ne, 0);
  sets.surface_mask.assign(ne, 0);
  for (const CutGeometry* g : geoms) {
    if (&g->coarse_mesh() != &coarse) {
      throw InvalidInput("geometry was built on a different mesh");
    }
    sets.quadrature_times.push_back(g->time());
    for (int k = 0; k < ne; ++k) {
      if (g->in_bulk_set(k)) sets.bulk_mask[k] = 1;
      if (g->in_surface_set(k)) sets.surface_mask[k] = 1;
    }
  }
  for (int k = 0; k < ne; ++k) {
    if (sets.bulk_mask[k]) sets.active_bulk_elements.push_back(k);
    if (sets.surface_mask[k]) sets.active_surface_elements.push_back(k);
  }
  if (require_surface && sets.active_surface_elements.empty()) {
    throw GeometryError("no element meets the interface in this slab");
  }
  for (int e = 0; e < coarse.num_edges(); ++e) {
    const auto& edge = coarse.edge(e);
    if (edge.is_boundary()) continue;
    const int a = edge.triangles[0], b = edge.triangles[1];
    if (sets.surface_mask[a] && sets.surface_mask[b]) sets.faces_surface.push_back(e);
    if (sets.bulk_mask[a] && sets.bulk_mask[b] &&
        (sets.surface_mask[a] || sets.surface_mask[b])) {
      sets.faces_bulk.push_back(e);
    }
  }
  return sets;
}

ClosestPoint closest_point_on_interface(const CutGeometry& geom, const Vec2& p) {
  ClosestPoint best;
  best.distance = std::numeric_limits<double>::infinity();
  const auto& segs = geom.segments();
  for (int i = 0; i < static_cast<int>(segs.size()); ++i) {
    const Vec2& a = segs[i].ends[0];
    const Vec2 d = segs[i].ends[1] - a;
    const double len2 = d.squaredNorm();
    const double s = len2 > 0 ? std::clamp((p - a).dot(d) / len2, 0.0, 1.0) : 0.0;
    const Vec2 q = a + s * d;
    const double dist = (p - q).norm();
    if (dist < best.distance) best = {q, dist, i};
  }
  if (best.segment < 0) throw GeometryError("interface has no segments");
  return best;
}

void write_interface_csv(std::ostream& os, const CutGeometry& geom, bool header) {
  os.precision(17);
  if (header) os << "t,x0,y0,x1,y1,nx,ny\n";
  for (const auto& s : geom.segments()) {
    os << geom.time() << ',' << s.ends[0].x() << ',' << s.ends[0].y() << ','
       << s.ends[1].x() << ',' << s.ends[1].y() << ',' << s.normal.x() << ','
       << s.normal.y() << '\n';
  }
}

}  // namespace stcut
