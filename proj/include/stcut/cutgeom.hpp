#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "stcut/levelset.hpp"
#include "stcut/mesh.hpp"

namespace stcut {

enum class ElementClass : std::uint8_t { InsideOmega1, Outside, Cut };

/// Straight piece of the discrete interface inside one refined triangle.
struct InterfaceSegment {
  std::array<Vec2, 2> ends;
  /// Unit normal pointing out of Omega_1 (into the drop). The endpoints are
  /// ordered so that the normal lies to the left of ends[1] - ends[0].
  Vec2 normal;
  int coarse_element = -1;
  int refined_element = -1;
  /// Refined-mesh edges carrying the two endpoints.
  std::array<int, 2> end_edges{-1, -1};

  double length() const { return (ends[1] - ends[0]).norm(); }
  Vec2 point(double s) const { return (1.0 - s) * ends[0] + s * ends[1]; }
};

/// Sub-triangle of K intersected with Omega_{h,1}, counter-clockwise.
struct BulkCell {
  std::array<Vec2, 3> corners;
  double area = 0.0;

  Vec2 point(const std::array<double, 3>& bary) const {
    return bary[0] * corners[0] + bary[1] * corners[1] + bary[2] * corners[2];
  }
};

/// Nodal values with the zero-node policy applied: |rho| < 1e-12 h becomes
/// +1e-12 h.
Vector sanitized_levelset(const LevelSetField& rho);

/// Marching triangles on the refined mesh (which must carry parent links).
std::vector<InterfaceSegment> extract_interface(const LevelSetField& rho);

/// Omega_{h,1} part of every refined triangle, as CSR lists of cells
/// indexed by refined triangle.
struct RefinedBulkCells {
  std::vector<BulkCell> cells;
  std::vector<int> offsets;
  /// 1 when the refined triangle lies entirely in Omega_{h,1}.
  std::vector<char> full;
};
RefinedBulkCells decompose_bulk(const LevelSetField& rho);

/// Interface and bulk integration domains at one time instant, grouped by
/// coarse (background) element.
class CutGeometry {
 public:
  CutGeometry() = default;
  CutGeometry(double time, MeshPtr coarse, std::vector<InterfaceSegment> segments,
              const RefinedBulkCells& refined_cells);

  double time() const { return time_; }
  const BackgroundMesh& coarse_mesh() const { return *coarse_; }
  const MeshPtr& coarse_ptr() const { return coarse_; }

  const std::vector<InterfaceSegment>& segments() const { return segments_; }
  std::span<const InterfaceSegment> segments_in(int element) const {
    return {segments_.data() + segment_offsets_[element],
            segments_.data() + segment_offsets_[element + 1]};
  }
  const std::vector<BulkCell>& bulk_cells() const { return cells_; }
  std::span<const BulkCell> cells_in(int element) const {
    return {cells_.data() + cell_offsets_[element],
            cells_.data() + cell_offsets_[element + 1]};
  }
  const std::vector<ElementClass>& classification() const { return classes_; }
  ElementClass element_class(int element) const { return classes_[element]; }
  bool in_bulk_set(int element) const {
    return classes_[element] != ElementClass::Outside;
  }
  bool in_surface_set(int element) const {
    return classes_[element] == ElementClass::Cut;
  }

  /// |Omega_{h,1}|.
  double bulk_area() const;
  /// |Gamma_h|.
  double perimeter() const;
  /// True when every interface vertex has even segment degree.
  bool is_closed() const;
  /// Area enclosed by Gamma_h (shoelace); throws GeometryError when the
  /// polyline is open.
  double enclosed_area() const;

 private:
  double time_ = 0.0;
  MeshPtr coarse_;
  std::vector<InterfaceSegment> segments_;
  std::vector<int> segment_offsets_;
  std::vector<BulkCell> cells_;
  std::vector<int> cell_offsets_;
  std::vector<ElementClass> classes_;
};

/// Extraction, bulk decomposition and classification in one pass. `rho`
/// must live on refine_uniform(*coarse).
CutGeometry build_cut_geometry(const LevelSetField& rho, MeshPtr coarse);

/// Coarse element classes derived from the geometry (cut iff a child
/// carries a segment, inside iff all children lie in Omega_{h,1}).
std::vector<ElementClass> classify_elements(const CutGeometry& geom,
                                            const BackgroundMesh& coarse);

/// Element and face sets of one space-time slab.
struct SlabSets {
  std::vector<char> bulk_mask;     // per coarse element
  std::vector<char> surface_mask;  // per coarse element
  std::vector<int> active_bulk_elements;
  std::vector<int> active_surface_elements;
  std::vector<int> faces_bulk;     // coarse edge ids
  std::vector<int> faces_surface;  // coarse edge ids
  std::vector<double> quadrature_times;
};

/// Unions the per-time element sets. Throws GeometryError when no element
/// meets the interface and `require_surface` is set.
SlabSets build_slab_sets(std::span<const CutGeometry* const> geoms,
                         const BackgroundMesh& coarse,
                         bool require_surface = true);

struct ClosestPoint {
  Vec2 point;
  double distance = 0.0;
  int segment = -1;
};

/// Nearest point on Gamma_h (brute force over segments).
ClosestPoint closest_point_on_interface(const CutGeometry& geom, const Vec2& p);

/// CSV rows "t,x0,y0,x1,y1,nx,ny", header included when requested.
void write_interface_csv(std::ostream& os, const CutGeometry& geom,
                         bool header = true);

}  // namespace stcut
