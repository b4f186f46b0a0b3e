#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "stcut/cutgeom.hpp"
#include "stcut/quadrature.hpp"
#include "stcut/slabspace.hpp"
#include "stcut/solver.hpp"
#include "stcut/velocity.hpp"

namespace stcut {

enum class CouplingKind { Langmuir, Henry, Frumkin };

CouplingKind parse_coupling(const std::string& name);
std::string to_string(CouplingKind kind);

/// Adsorption flux f = b_B u_B - b_S u_S - b_BS u_B u_S (Langmuir, Henry with
/// b_BS = 0) or f = b_B u_B - b_S e^{A u_S} u_S - b_BS u_B u_S (Frumkin).
struct CouplingModel {
  CouplingKind kind = CouplingKind::Langmuir;
  double b_B = 0.0;
  double b_S = 0.0;
  double b_BS = 0.0;
  double frumkin_A = 0.0;
  /// Non-dimensional scaling: bulk terms weighted by b_B/Da and the
  /// conserved quantity is int u_B + Da int u_S.
  bool nondimensional = false;
  double Da = 1.0;

  static CouplingModel langmuir(double b_B, double b_S, double b_BS);
  static CouplingModel henry(double b_B, double b_S);
  static CouplingModel frumkin(double b_B, double b_S, double b_BS, double A);
  /// b_B = b_BS = alpha, b_S = Bi (b_BS dropped for Henry).
  static CouplingModel dimensionless(double alpha, double Bi, double Da,
                                     CouplingKind kind = CouplingKind::Langmuir,
                                     double A = 0.0);

  /// Throws ConfigError on negative parameters or Henry with b_BS != 0.
  void validate() const;
  double flux(double u_B, double u_S) const;

  /// Multiplier of the bulk equation (b_B, or b_B/Da; 1 resp. 1/Da when
  /// b_B = 0).
  double bulk_weight() const;
  /// Multiplier of the surface equation (b_S, or 1 when b_S = 0).
  double surface_weight() const;
  /// Coupling test function c_B v_B - c_S v_S.
  double bulk_test() const;
  double surface_test() const;
  /// Factor of int u_S in the conserved quantity.
  double surface_mass_factor() const { return nondimensional ? Da : 1.0; }
};

struct Coefficients {
  double k_B = 0.0;
  double k_S = 0.0;
  CouplingModel model;
};

/// Spatial matrices at one time instant, indexed by mesh vertex.
struct SpatialForms {
  SparseMatrix mass_bulk;   // (u, v) on Omega_{h,1}
  SparseMatrix bulk;        // a_{B,h}
  SparseMatrix mass_surf;   // (u, v) on Gamma_h
  SparseMatrix surf;        // a_{S,h}
  /// Linear part of the coupling form, [test field][trial field] with
  /// 0 = bulk, 1 = surface, including b and c factors.
  SparseMatrix coupling[2][2];
};

SpatialForms spatial_forms(const CutGeometry& geom, const VelocityField& beta,
                           const Coefficients& coeffs, bool with_bulk = true);

/// Unscaled face penalties sum_F ([n_F . grad u], [n_F . grad v])_F over the
/// bulk and surface face sets, indexed by mesh vertex.
struct GhostPenalty {
  SparseMatrix bulk;
  SparseMatrix surface;
};

GhostPenalty ghost_penalty(const SlabSets& sets, const BackgroundMesh& mesh);

/// j_h(u, u) = tau_B h j_B(u_B, u_B) + tau_S j_S(u_S, u_S).
double ghost_energy(const GhostPenalty& g, const Vector& u_bulk,
                    const Vector& u_surf, double tau_B, double tau_S, double h);

/// Manufactured right-hand sides; empty functions mean zero.
struct SourceTerms {
  std::function<double(double, const Vec2&)> bulk;
  std::function<double(double, const Vec2&)> surface;
};

struct SlabConfig {
  Coefficients coeffs;
  VelocityField velocity;
  TimeRule rule = TimeRule::Simpson;
  double tau_B = 1e-2;
  double tau_S = 1e-2;
  /// Prescribed total mass at t_n (used when the space has a multiplier).
  double target_mass = 0.0;
  SourceTerms sources;
};

/// Residual F(U) = L U + c + N(U) and Jacobian L + DN(U) of one slab.
/// `geoms` holds the geometry at every time-quadrature point; the first must
/// be at t_prev and the last at t_next.
class SlabAssembler {
 public:
  SlabAssembler(const SlabSpace& space, std::vector<const CutGeometry*> geoms,
                const SlabConfig& config, const NodalTrace& previous);

  Vector residual(const Vector& u) const;
  SparseMatrix jacobian(const Vector& u) const;

  const SparseMatrix& linear_part() const { return linear_; }
  const Vector& constant_part() const { return constant_; }
  const TimeQuadrature& quadrature() const { return tq_; }

 private:
  struct SurfacePoint {
    double weight;
    double s;
    std::array<double, 3> phi;
    std::array<int, 3> bulk;  // component-0 dofs, -1 without bulk
    std::array<int, 3> surf;
  };

  void nonlinear(const Vector& u, Vector* f,
                 std::vector<Eigen::Triplet<double>>* jac) const;

  const SlabSpace& space_;
  SlabConfig config_;
  TimeQuadrature tq_;
  SparseMatrix linear_;
  Vector constant_;
  std::vector<SurfacePoint> points_;
  bool has_nonlinear_ = false;
};

/// int_{Omega_{h,1}} u_B + factor * int_{Gamma_h} u_S for nodal fields over
/// all mesh vertices (either vector may be empty).
double mass_functional(const CutGeometry& geom, const Vector& bulk,
                       const Vector& surface, double surface_factor = 1.0);

/// Coordinate text export: one "row col value" line per stored entry.
void write_matrix_coo(std::ostream& os, const SparseMatrix& a);

}  // namespace stcut
