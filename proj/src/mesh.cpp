#include "stcut/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "stcut/error.hpp"

namespace stcut {

namespace {

P1Basis make_basis(const Vec2& a, const Vec2& b, const Vec2& c) {
  P1Basis basis;
  Mat2 jac;
  jac.col(0) = b - a;
  jac.col(1) = c - a;
  basis.origin = a;
  basis.area = 0.5 * jac.determinant();
  basis.inverse_map = jac.inverse();
  basis.gradients[1] = basis.inverse_map.row(0).transpose();
  basis.gradients[2] = basis.inverse_map.row(1).transpose();
  basis.gradients[0] = -basis.gradients[1] - basis.gradients[2];
  return basis;
}

}  // namespace

BackgroundMesh::BackgroundMesh(Box box, int nx, int ny,
                               std::vector<Vec2> vertices,
                               std::vector<std::array<int, 3>> triangles,
                               std::vector<int> parents)
    : box_(box),
      nx_(nx),
      ny_(ny),
      vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      parents_(std::move(parents)) {
  h_ = std::max(box_.width() / nx_, box_.height() / ny_);
  basis_.reserve(triangles_.size());
  for (const auto& t : triangles_) {
    basis_.push_back(
        make_basis(vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]));
    if (!(basis_.back().area > 0.0)) {
      throw InvalidInput("triangle with non-positive signed area");
    }
  }
  build_edges();
  build_buckets();
}

Vec2 BackgroundMesh::centroid(int t) const {
  const auto& tri = triangles_[t];
  return (vertices_[tri[0]] + vertices_[tri[1]] + vertices_[tri[2]]) / 3.0;
}

void BackgroundMesh::build_edges() {
  std::unordered_map<long long, int> lookup;
  lookup.reserve(triangles_.size() * 2);
  const long long nv = num_vertices();
  triangle_edges_.resize(triangles_.size());
  for (int t = 0; t < num_triangles(); ++t) {
    const auto& tri = triangles_[t];
    for (int k = 0; k < 3; ++k) {
      int a = tri[(k + 1) % 3], b = tri[(k + 2) % 3];
      if (a > b) std::swap(a, b);
      const long long key = a * nv + b;
      auto [it, inserted] = lookup.emplace(key, num_edges());
      if (inserted) {
        edges_.push_back(MeshEdge{{a, b}, {t, -1}});
        max_edge_ = std::max(max_edge_, (vertices_[a] - vertices_[b]).norm());
      } else {
        auto& e = edges_[it->second];
        if (e.triangles[1] >= 0) {
          throw InvalidInput("non-manifold edge in triangulation");
        }
        e.triangles[1] = t;
      }
      triangle_edges_[t][k] = it->second;
    }
  }
}

void BackgroundMesh::build_buckets() {
  buckets_.assign(static_cast<size_t>(nx_) * ny_, {});
  const double dx = box_.width() / nx_, dy = box_.height() / ny_;
  for (int t = 0; t < num_triangles(); ++t) {
    Vec2 c = centroid(t);
    int i = std::clamp(static_cast<int>((c.x() - box_.x0) / dx), 0, nx_ - 1);
    int j = std::clamp(static_cast<int>((c.y() - box_.y0) / dy), 0, ny_ - 1);
    buckets_[static_cast<size_t>(j) * nx_ + i].push_back(t);
  }
}

PointLocation BackgroundMesh::locate(const Vec2& p) const {
  const double tol = 1e-12 * h_;
  if (!box_.contains(p, tol)) {
    throw OutOfDomain("point outside the mesh domain");
  }
  const double dx = box_.width() / nx_, dy = box_.height() / ny_;
  const int ci =
      std::clamp(static_cast<int>(std::floor((p.x() - box_.x0) / dx)), 0, nx_ - 1);
  const int cj =
      std::clamp(static_cast<int>(std::floor((p.y() - box_.y0) / dy)), 0, ny_ - 1);
  PointLocation best;
  double best_min = -std::numeric_limits<double>::infinity();
  for (int dj = 0; dj <= 2; ++dj) {
    for (int di = 0; di <= 2; ++di) {
      // centre cell first, then neighbours
      int i = ci + (di == 0 ? 0 : (di == 1 ? -1 : 1));
      int j = cj + (dj == 0 ? 0 : (dj == 1 ? -1 : 1));
      if (i < 0 || j < 0 || i >= nx_ || j >= ny_) continue;
      for (int t : buckets_[static_cast<size_t>(j) * nx_ + i]) {
        auto l = basis_[t].values(p);
        double m = std::min({l[0], l[1], l[2]});
        if (m > best_min) {
          best_min = m;
          best.triangle = t;
          best.barycentric = l;
        }
      }
      if (di == 0 && dj == 0 && best_min >= -1e-12) return best;
    }
  }
  if (best.triangle < 0 || best_min < -1e-9) {
    throw OutOfDomain("point could not be located in the mesh");
  }
  return best;
}

MeshPtr build_uniform_mesh(const Box& box, int nx, int ny, DiagonalRule rule) {
  if (nx < 1 || ny < 1) throw InvalidInput("nx and ny must be at least 1");
  if (!(box.x1 > box.x0) || !(box.y1 > box.y0)) {
    throw InvalidInput("degenerate domain box");
  }
  std::vector<Vec2> vertices;
  vertices.reserve(static_cast<size_t>(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      vertices.emplace_back(box.x0 + i * box.width() / nx,
                            box.y0 + j * box.height() / ny);
    }
  }
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  std::vector<std::array<int, 3>> triangles;
  triangles.reserve(2 * static_cast<size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1),
                d = id(i, j + 1);
      if (rule == DiagonalRule::Alternating && (i + j) % 2 == 1) {
        triangles.push_back({a, b, d});
        triangles.push_back({b, c, d});
      } else {
        triangles.push_back({a, b, c});
        triangles.push_back({a, c, d});
      }
    }
  }
  return std::make_shared<BackgroundMesh>(box, nx, ny, std::move(vertices),
                                          std::move(triangles));
}

MeshPtr refine_uniform(const BackgroundMesh& mesh) {
  std::vector<Vec2> vertices = mesh.vertices();
  const int nv = mesh.num_vertices();
  for (const auto& e : mesh.edges()) {
    vertices.push_back(0.5 * (mesh.vertex(e.vertices[0]) +
                              mesh.vertex(e.vertices[1])));
  }
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> parents;
  triangles.reserve(4 * static_cast<size_t>(mesh.num_triangles()));
  parents.reserve(triangles.capacity());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& v = mesh.triangle(t);
    const auto& e = mesh.triangle_edges(t);
    // edge k is opposite vertex k
    const int m12 = nv + e[0], m20 = nv + e[1], m01 = nv + e[2];
    triangles.push_back({v[0], m01, m20});
    triangles.push_back({m01, v[1], m12});
    triangles.push_back({m20, m12, v[2]});
    triangles.push_back({m01, m12, m20});
    parents.insert(parents.end(), 4, t);
  }
  return std::make_shared<BackgroundMesh>(
      mesh.box(), 2 * mesh.grid_nx(), 2 * mesh.grid_ny(), std::move(vertices),
      std::move(triangles), std::move(parents));
}

PointLocation locate_point(const BackgroundMesh& mesh, const Vec2& p) {
  return mesh.locate(p);
}

void write_mesh(std::ostream& os, const BackgroundMesh& mesh) {
  os.precision(17);
  for (int i = 0; i < mesh.num_vertices(); ++i) {
    os << "v " << i << ' ' << mesh.vertex(i).x() << ' ' << mesh.vertex(i).y()
       << '\n';
  }
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    os << "t " << t << ' ' << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
  }
}

}  // namespace stcut
