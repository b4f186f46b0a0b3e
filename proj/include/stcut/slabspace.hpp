#pragma once

#include <vector>

#include "stcut/cutgeom.hpp"
#include "stcut/mesh.hpp"
#include "stcut/solver.hpp"

namespace stcut {

enum class Field { Bulk, Surface };

/// Unknown layout of one space-time slab:
/// [w_B0 (N_B), w_S0 (N_S), w_B1 (N_B), w_S1 (N_S), lambda].
class SlabSpace {
 public:
  SlabSpace(SlabSets sets, MeshPtr mesh, double t_prev, double t_next,
            bool with_multiplier, bool with_bulk = true);

  double t_prev() const { return t_prev_; }
  double t_next() const { return t_next_; }
  double k() const { return t_next_ - t_prev_; }
  const SlabSets& sets() const { return sets_; }
  const BackgroundMesh& mesh() const { return *mesh_; }
  const MeshPtr& mesh_ptr() const { return mesh_; }
  bool has_multiplier() const { return with_multiplier_; }
  bool has_bulk() const { return with_bulk_; }

  int num_bulk() const { return static_cast<int>(bulk_vertices_.size()); }
  int num_surface() const { return static_cast<int>(surface_vertices_.size()); }
  int size() const {
    return 2 * (num_bulk() + num_surface()) + (with_multiplier_ ? 1 : 0);
  }

  /// Sorted vertex lists of the active patches.
  const std::vector<int>& vertices(Field f) const {
    return f == Field::Bulk ? bulk_vertices_ : surface_vertices_;
  }
  /// Patch-local index of a mesh vertex, -1 when inactive.
  int local_index(Field f, int vertex) const {
    return f == Field::Bulk ? bulk_index_[vertex] : surface_index_[vertex];
  }
  /// Offset of the block of time-basis component `a` (0 or 1).
  int offset(Field f, int a) const {
    const int nb = num_bulk(), ns = num_surface();
    if (f == Field::Bulk) return a == 0 ? 0 : nb + ns;
    return a == 0 ? nb : 2 * nb + ns;
  }
  /// Global unknown of (field, time component, vertex), -1 when inactive.
  int dof(Field f, int a, int vertex) const {
    const int l = local_index(f, vertex);
    return l < 0 ? -1 : offset(f, a) + l;
  }
  int multiplier_index() const {
    if (!with_multiplier_) throw InvalidInput("slab has no multiplier");
    return 2 * (num_bulk() + num_surface());
  }
  bool element_active(Field f, int element) const {
    return f == Field::Bulk ? sets_.bulk_mask[element] != 0
                            : sets_.surface_mask[element] != 0;
  }

 private:
  SlabSets sets_;
  MeshPtr mesh_;
  double t_prev_, t_next_;
  bool with_multiplier_, with_bulk_;
  std::vector<int> bulk_vertices_, surface_vertices_;
  std::vector<int> bulk_index_, surface_index_;
};

SlabSpace build_slab_space(SlabSets sets, MeshPtr mesh, double t_prev,
                           double t_next, bool with_multiplier,
                           bool with_bulk = true);

/// Coefficients over a SlabSpace: v(t, x) = v_0(x) + v_1(x) (t - t_prev)/k.
struct SlabFunction {
  const SlabSpace* space = nullptr;
  Vector coefficients;

  /// Throws OutOfDomain when p is not covered by the field's patch.
  double evaluate(Field f, double t, const Vec2& p) const;
  /// Nodal value of component `a` at a mesh vertex (0 when inactive).
  double nodal(Field f, int a, int vertex) const;
  double multiplier() const {
    return coefficients[space->multiplier_index()];
  }
};

/// Nodal field over all mesh vertices plus a defined-mask; used for the
/// trace u_h(t_n^-) carried from one slab to the next.
struct NodalTrace {
  double time = 0.0;
  Vector bulk;
  Vector surface;
  std::vector<char> bulk_defined;
  std::vector<char> surface_defined;

  const Vector& values(Field f) const { return f == Field::Bulk ? bulk : surface; }
  const std::vector<char>& defined(Field f) const {
    return f == Field::Bulk ? bulk_defined : surface_defined;
  }
};

/// Trace at t_next^- (v_0 + v_1) on the active vertices.
NodalTrace end_trace(const SlabFunction& u);

/// Values of the trace at every active vertex of `space`. Vertices where the
/// trace is undefined get the linear extension of an adjacent element with a
/// fully defined trace, else the mean of defined neighbours (repeated until
/// the patch is filled), else the nearest defined vertex.
Vector extend_trace(const NodalTrace& trace, const SlabSpace& space, Field f);

/// Newton start: u_0 = extended trace, u_1 = 0, lambda = 0.
Vector initial_guess(const NodalTrace& trace, const SlabSpace& space);

}  // namespace stcut
