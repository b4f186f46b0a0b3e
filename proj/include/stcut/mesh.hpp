#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <vector>

#include <Eigen/Dense>

namespace stcut {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

struct Box {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  bool contains(const Vec2& p, double tol = 0.0) const {
    return p.x() >= x0 - tol && p.x() <= x1 + tol && p.y() >= y0 - tol &&
           p.y() <= y1 + tol;
  }
};

/// Direction of the diagonal splitting each grid cell into two triangles.
enum class DiagonalRule { Uniform, Alternating };

struct MeshEdge {
  std::array<int, 2> vertices;
  /// Adjacent triangles; `triangles[1] == -1` on the boundary.
  std::array<int, 2> triangles;
  bool is_boundary() const { return triangles[1] < 0; }
};

/// Constant-gradient P1 shape functions on one triangle.
struct P1Basis {
  Vec2 origin;
  Mat2 inverse_map;  // maps p - origin to (lambda_1, lambda_2)
  std::array<Vec2, 3> gradients;
  double area = 0.0;

  std::array<double, 3> values(const Vec2& p) const {
    Vec2 l = inverse_map * (p - origin);
    return {1.0 - l.x() - l.y(), l.x(), l.y()};
  }
};

struct PointLocation {
  int triangle = -1;
  std::array<double, 3> barycentric{};
};

/// Immutable triangulation of a rectangle, built from a structured grid.
class BackgroundMesh {
 public:
  BackgroundMesh(Box box, int nx, int ny, std::vector<Vec2> vertices,
                 std::vector<std::array<int, 3>> triangles,
                 std::vector<int> parents = {});

  const Box& box() const { return box_; }
  /// Largest axis-aligned edge length of the grid (grid spacing).
  double h() const { return h_; }
  /// Largest edge length over all triangles (the cell diagonal).
  double max_edge_length() const { return max_edge_; }
  int grid_nx() const { return nx_; }
  int grid_ny() const { return ny_; }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const Vec2& vertex(int i) const { return vertices_[i]; }
  const std::vector<std::array<int, 3>>& triangles() const {
    return triangles_;
  }
  const std::array<int, 3>& triangle(int t) const { return triangles_[t]; }
  const std::vector<MeshEdge>& edges() const { return edges_; }
  const MeshEdge& edge(int e) const { return edges_[e]; }
  /// Edge ids of triangle `t`; entry k is opposite local vertex k.
  const std::array<int, 3>& triangle_edges(int t) const {
    return triangle_edges_[t];
  }
  const P1Basis& basis(int t) const { return basis_[t]; }
  double area(int t) const { return basis_[t].area; }
  Vec2 centroid(int t) const;

  /// Parent triangle in the mesh this one was refined from (empty when the
  /// mesh was built directly). Children of parent p are 4p..4p+3.
  const std::vector<int>& parents() const { return parents_; }
  bool is_refined() const { return !parents_.empty(); }

  /// Throws OutOfDomain for points outside the box (beyond 1e-12 h).
  PointLocation locate(const Vec2& p) const;

 private:
  void build_edges();
  void build_buckets();

  Box box_;
  int nx_, ny_;
  double h_ = 0.0;
  double max_edge_ = 0.0;
  std::vector<Vec2> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<std::array<int, 3>> triangle_edges_;
  std::vector<MeshEdge> edges_;
  std::vector<P1Basis> basis_;
  std::vector<int> parents_;
  std::vector<std::vector<int>> buckets_;
};

using MeshPtr = std::shared_ptr<const BackgroundMesh>;

/// Structured triangulation with nx*ny cells, each split in two.
MeshPtr build_uniform_mesh(const Box& box, int nx, int ny,
                           DiagonalRule rule = DiagonalRule::Uniform);

/// Splits every triangle into four by edge midpoints. Child k < 3 keeps
/// corner k of the parent; child 3 is the middle triangle.
MeshPtr refine_uniform(const BackgroundMesh& mesh);

PointLocation locate_point(const BackgroundMesh& mesh, const Vec2& p);

/// Plain-text dump, one record per line: "v <i> <x> <y>" then "t <i> <a> <b> <c>".
void write_mesh(std::ostream& os, const BackgroundMesh& mesh);

}  // namespace stcut
