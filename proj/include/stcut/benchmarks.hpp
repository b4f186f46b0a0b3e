#pragma once

#include <functional>
#include <optional>
#include <string>

#include "stcut/forms.hpp"
#include "stcut/levelset.hpp"
#include "stcut/mesh.hpp"
#include "stcut/velocity.hpp"

namespace stcut {

using SpaceFunction = std::function<double(const Vec2&)>;
using SpaceTimeFunction = std::function<double(double, const Vec2&)>;

/// Everything that defines one benchmark problem.
struct Problem {
  int id = 0;
  std::string name;
  Box box;
  int nx = 0;
  int ny = 0;
  double k_ratio = 0.5;
  double t_end = 0.5;
  VelocityField velocity;
  Coefficients coeffs;
  bool bulk = true;
  /// Initial level set (rho > 0 in the bulk phase).
  SpaceFunction levelset0;
  std::optional<AnalyticGeometry> analytic;
  bool analytic_default = false;
  SpaceFunction initial_bulk;
  SpaceFunction initial_surface;
  /// Exact solution, when known.
  SpaceTimeFunction exact_bulk;
  SpaceTimeFunction exact_surface;
  SourceTerms sources;
  /// Exact total mass at time t; empty means the initial discrete mass is
  /// conserved.
  std::function<double(double)> exact_mass;
};

/// Examples 1-4. `coupling` overrides the default Langmuir isotherm.
Problem make_problem(int id, std::optional<CouplingKind> coupling = {});

namespace ex1 {

/// Generated right-hand sides (see tools/gen_ex1_sources.py).
double source_bulk_xy(double t, double x, double y);
double source_surface_xy(double t, double x, double y);

double exact_bulk(double t, const Vec2& p);
/// Uses the radial direction from the moving centre as normal field.
double exact_surface(double t, const Vec2& p);
double source_bulk(double t, const Vec2& p);
double source_surface(double t, const Vec2& p);
/// int_{Omega_1(t)} u_B + int_{Gamma(t)} u_S for the exact solution.
double exact_mass(double t);

}  // namespace ex1

/// Bulk initial data of example 4 (blended around the drop).
double ex4_initial_bulk(const Vec2& p);

}  // namespace stcut
