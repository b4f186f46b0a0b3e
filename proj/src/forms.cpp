#include "stcut/forms.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "stcut/error.hpp"

namespace stcut {

using Triplets = std::vector<Eigen::Triplet<double>>;

CouplingKind parse_coupling(const std::string& name) {
  if (name == "langmuir") return CouplingKind::Langmuir;
  if (name == "henry") return CouplingKind::Henry;
  if (name == "frumkin") return CouplingKind::Frumkin;
  throw ConfigError("unknown coupling model '" + name + "'");
}

std::string to_string(CouplingKind kind) {
  switch (kind) {
    case CouplingKind::Langmuir: return "langmuir";
    case CouplingKind::Henry: return "henry";
    case CouplingKind::Frumkin: return "frumkin";
  }
  return "unknown";
}

CouplingModel CouplingModel::langmuir(double b_B, double b_S, double b_BS) {
  return {CouplingKind::Langmuir, b_B, b_S, b_BS, 0.0, false, 1.0};
}

CouplingModel CouplingModel::henry(double b_B, double b_S) {
  return {CouplingKind::Henry, b_B, b_S, 0.0, 0.0, false, 1.0};
}

CouplingModel CouplingModel::frumkin(double b_B, double b_S, double b_BS,
                                     double A) {
  return {CouplingKind::Frumkin, b_B, b_S, b_BS, A, false, 1.0};
}

CouplingModel CouplingModel::dimensionless(double alpha, double Bi, double Da,
                                           CouplingKind kind, double A) {
  CouplingModel m{kind, alpha, Bi, alpha, A, true, Da};
  if (kind == CouplingKind::Henry) m.b_BS = 0.0;
  return m;
}

void CouplingModel::validate() const {
  if (!(b_B >= 0 && b_S >= 0 && b_BS >= 0)) {
    throw ConfigError("coupling coefficients must be nonnegative");
  }
  if (kind == CouplingKind::Henry && b_BS != 0.0) {
    throw ConfigError("Henry coupling requires b_BS = 0");
  }
  if (nondimensional && !(Da > 0)) {
    throw ConfigError("Damkoehler number must be positive");
  }
  if (!std::isfinite(frumkin_A)) throw ConfigError("Frumkin exponent not finite");
}

double CouplingModel::flux(double u_B, double u_S) const {
  const double desorption = kind == CouplingKind::Frumkin
                                ? b_S * std::exp(frumkin_A * u_S) * u_S
                                : b_S * u_S;
  return b_B * u_B - desorption - b_BS * u_B * u_S;
}

double CouplingModel::bulk_weight() const {
  const double b = b_B > 0 ? b_B : 1.0;
  return nondimensional ? b / Da : b;
}

double CouplingModel::surface_weight() const { return b_S > 0 ? b_S : 1.0; }

double CouplingModel::bulk_test() const {
  return nondimensional ? bulk_weight() * Da : bulk_weight();
}

double CouplingModel::surface_test() const { return surface_weight(); }

namespace {

SparseMatrix from_triplets(int n, const Triplets& t) {
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

}  // namespace

SpatialForms spatial_forms(const CutGeometry& geom, const VelocityField& beta,
                           const Coefficients& coeffs, bool with_bulk) {
  const auto& mesh = geom.coarse_mesh();
  const double t = geom.time();
  const auto& model = coeffs.model;
  const double cB = model.bulk_test(), cS = model.surface_test();
  const bool frumkin = model.kind == CouplingKind::Frumkin;
  // Linear coupling (b_B u_B - b_S u_S, c_B v_B - c_S v_S); Frumkin moves the
  // desorption term into the nonlinear part.
  const double trial[2] = {model.b_B, frumkin ? 0.0 : -model.b_S};
  const double test[2] = {cB, -cS};
  Triplets mb, ab, ms, as, cp[2][2];
  const auto cell_rule = triangle_rule(2);
  const auto seg_rule = gauss_line_rule(2);
  for (int k = 0; k < mesh.num_triangles(); ++k) {
    const auto& tri = mesh.triangle(k);
    const auto& basis = mesh.basis(k);
    const auto& g = basis.gradients;
    if (with_bulk) {
      for (const auto& cell : geom.cells_in(k)) {
        double m[3][3] = {}, a[3][3] = {};
        for (const auto& qp : cell_rule) {
          const Vec2 x = cell.point(qp.bary);
          const double w = qp.weight * cell.area;
          const auto phi = basis.values(x);
          const Vec2 b = beta(t, x);
          for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
              m[i][j] += w * phi[i] * phi[j];
              a[i][j] += w * (b.dot(g[j]) * phi[i] + coeffs.k_B * g[j].dot(g[i]));
            }
          }
        }
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            mb.emplace_back(tri[i], tri[j], m[i][j]);
            ab.emplace_back(tri[i], tri[j], a[i][j]);
          }
        }
      }
    }
    for (const auto& seg : geom.segments_in(k)) {
      const Vec2& n = seg.normal;
      const Mat2 proj = Mat2::Identity() - n * n.transpose();
      Vec2 tg[3];
      for (int i = 0; i < 3; ++i) tg[i] = proj * g[i];
      const double len = seg.length();
      double m[3][3] = {}, a[3][3] = {};
      for (const auto& gp : seg_rule) {
        const Vec2 x = seg.point(gp.s);
        const double w = gp.weight * len;
        const auto phi = basis.values(x);
        const Vec2 b = beta(t, x);
        const double div = tangential_divergence(beta.jacobian(t, x), n);
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            m[i][j] += w * phi[i] * phi[j];
            a[i][j] += w * (b.dot(g[j]) * phi[i] + div * phi[j] * phi[i] +
                            coeffs.k_S * tg[j].dot(tg[i]));
          }
        }
      }
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          ms.emplace_back(tri[i], tri[j], m[i][j]);
          as.emplace_back(tri[i], tri[j], a[i][j]);
          if (!with_bulk) continue;
          for (int p = 0; p < 2; ++p) {
            for (int q = 0; q < 2; ++q) {
              const double v = test[p] * trial[q] * m[i][j];
              if (v != 0.0) cp[p][q].emplace_back(tri[i], tri[j], v);
            }
          }
        }
      }
    }
  }
  const int nv = mesh.num_vertices();
  SpatialForms out;
  out.mass_bulk = from_triplets(nv, mb);
  out.bulk = from_triplets(nv, ab);
  out.mass_surf = from_triplets(nv, ms);
  out.surf = from_triplets(nv, as);
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) out.coupling[p][q] = from_triplets(nv, cp[p][q]);
  }
  return out;
}

GhostPenalty ghost_penalty(const SlabSets& sets, const BackgroundMesh& mesh) {
  auto build = [&](const std::vector<int>& faces) {
    Triplets trip;
    for (int e : faces) {
      const auto& edge = mesh.edge(e);
      if (edge.is_boundary()) throw AssemblyError("penalty face on the boundary");
      const Vec2 d = mesh.vertex(edge.vertices[1]) - mesh.vertex(edge.vertices[0]);
      const double len = d.norm();
      const Vec2 n(d.y() / len, -d.x() / len);
      std::array<int, 4> ids{};
      std::array<double, 4> jump{};
      int m = 0;
      for (int side = 0; side < 2; ++side) {
        const int k = edge.triangles[side];
        const double sign = side == 0 ? 1.0 : -1.0;
        const auto& tri = mesh.triangle(k);
        for (int i = 0; i < 3; ++i) {
          const double val = sign * n.dot(mesh.basis(k).gradients[i]);
          int slot = 0;
          while (slot < m && ids[slot] != tri[i]) ++slot;
          if (slot == m) {
            ids[m] = tri[i];
            jump[m++] = 0.0;
          }
          jump[slot] += val;
        }
      }
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          trip.emplace_back(ids[i], ids[j], len * jump[i] * jump[j]);
        }
      }
    }
    return from_triplets(mesh.num_vertices(), trip);
  };
  return {build(sets.faces_bulk), build(sets.faces_surface)};
}

double ghost_energy(const GhostPenalty& g, const Vector& u_bulk,
                    const Vector& u_surf, double tau_B, double tau_S, double h) {
  double e = 0.0;
  if (u_bulk.size() > 0) e += tau_B * h * u_bulk.dot(g.bulk * u_bulk);
  if (u_surf.size() > 0) e += tau_S * u_surf.dot(g.surface * u_surf);
  return e;
}

namespace {

/// Adds `factor * m` to the block (test field/component, trial
/// field/component) of the slab matrix.
void scatter(Triplets& out, const SlabSpace& space, const SparseMatrix& m,
             double factor, Field test, int b, Field trial, int a) {
  if (factor == 0.0) return;
  for (int j = 0; j < m.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) {
      const int r = space.dof(test, b, static_cast<int>(it.row()));
      const int c = space.dof(trial, a, static_cast<int>(it.col()));
      if (r < 0 || c < 0) {
        if (it.value() == 0.0) continue;
        throw AssemblyError("form touches a vertex outside the active patch");
      }
      out.emplace_back(r, c, factor * it.value());
    }
  }
}

}  // namespace

SlabAssembler::SlabAssembler(const SlabSpace& space,
                             std::vector<const CutGeometry*> geoms,
                             const SlabConfig& config,
                             const NodalTrace& previous)
    : space_(space),
      config_(config),
      tq_(time_quadrature(config.rule, space.t_prev(), space.k())) {
  const auto& model = config_.coeffs.model;
  model.validate();
  if (geoms.size() != tq_.points.size()) {
    throw AssemblyError("geometry missing at a time-quadrature point");
  }
  const double ttol = 1e-12 * std::max(1.0, std::abs(space.t_next()));
  for (size_t q = 0; q < geoms.size(); ++q) {
    if (!geoms[q] || std::abs(geoms[q]->time() - tq_.points[q]) > ttol) {
      throw AssemblyError("geometry time does not match the quadrature point");
    }
  }
  const bool bulk = space.has_bulk();
  if (!bulk && model.b_BS != 0.0) {
    throw ConfigError("bilinear coupling needs the bulk field");
  }
  const auto& mesh = space.mesh();
  const int n = space.size();
  const double k = space.k();
  const double wB = model.bulk_weight(), wS = model.surface_weight();
  const Field B = Field::Bulk, S = Field::Surface;
  Triplets trip;
  constant_ = Vector::Zero(n);

  const GhostPenalty gp = ghost_penalty(space.sets(), mesh);
  const double h = mesh.h();
  const auto src_rule = triangle_rule(4);
  const auto src_line = gauss_line_rule(3);
  const auto seg_rule = gauss_line_rule(2);
  has_nonlinear_ = model.b_BS != 0.0 || model.kind == CouplingKind::Frumkin;

  SpatialForms first, last;
  for (size_t q = 0; q < geoms.size(); ++q) {
    const CutGeometry& geom = *geoms[q];
    const double w = tq_.weights[q];
    const double th[2] = {1.0, tq_.s[q]};
    SpatialForms sf = spatial_forms(geom, config_.velocity, config_.coeffs, bulk);
    for (int b = 0; b < 2; ++b) {
      scatter(trip, space, sf.mass_bulk, wB * w / k * th[b], B, b, B, 1);
      scatter(trip, space, sf.mass_surf, wS * w / k * th[b], S, b, S, 1);
      for (int a = 0; a < 2; ++a) {
        const double f = w * th[a] * th[b];
        scatter(trip, space, sf.bulk, wB * f, B, b, B, a);
        scatter(trip, space, sf.surf, wS * f, S, b, S, a);
        if (bulk) {
          scatter(trip, space, sf.coupling[0][0], f, B, b, B, a);
          scatter(trip, space, sf.coupling[0][1], f, B, b, S, a);
          scatter(trip, space, sf.coupling[1][0], f, S, b, B, a);
          scatter(trip, space, sf.coupling[1][1], f, S, b, S, a);
        }
        scatter(trip, space, gp.bulk, config_.tau_B * h * f, B, b, B, a);
        scatter(trip, space, gp.surface, config_.tau_S * f, S, b, S, a);
      }
    }

    // Manufactured sources enter with the sign of a right-hand side.
    const double t = geom.time();
    for (int e = 0; e < mesh.num_triangles(); ++e) {
      const auto& tri = mesh.triangle(e);
      const auto& basis = mesh.basis(e);
      if (bulk && config_.sources.bulk) {
        for (const auto& cell : geom.cells_in(e)) {
          for (const auto& qp : src_rule) {
            const Vec2 x = cell.point(qp.bary);
            const double f = config_.sources.bulk(t, x) * qp.weight * cell.area;
            const auto phi = basis.values(x);
            for (int i = 0; i < 3; ++i) {
              for (int b = 0; b < 2; ++b) {
                constant_[space.dof(B, b, tri[i])] -= w * th[b] * wB * f * phi[i];
              }
            }
          }
        }
      }
      for (const auto& seg : geom.segments_in(e)) {
        if (config_.sources.surface) {
          for (const auto& lp : src_line) {
            const Vec2 x = seg.point(lp.s);
            const double f = config_.sources.surface(t, x) * lp.weight * seg.length();
            const auto phi = basis.values(x);
            for (int i = 0; i < 3; ++i) {
              for (int b = 0; b < 2; ++b) {
                constant_[space.dof(S, b, tri[i])] -= w * th[b] * wS * f * phi[i];
              }
            }
          }
        }
        if (!has_nonlinear_) continue;
        for (const auto& lp : seg_rule) {
          const Vec2 x = seg.point(lp.s);
          SurfacePoint p;
          p.weight = w * lp.weight * seg.length();
          p.s = tq_.s[q];
          p.phi = basis.values(x);
          for (int i = 0; i < 3; ++i) {
            p.bulk[i] = bulk ? space.dof(B, 0, tri[i]) : -1;
            p.surf[i] = space.dof(S, 0, tri[i]);
          }
          points_.push_back(p);
        }
      }
    }
    if (q == 0) {
      first = std::move(sf);
    } else if (q + 1 == geoms.size()) {
      last = std::move(sf);
    }
  }

  // Upwind jump at t_prev on the geometry of that instant.
  auto jump = [&](Field f, const SparseMatrix& mass, double weight) {
    scatter(trip, space, mass, weight, f, 0, f, 0);
    const Vector& prev = previous.values(f);
    const auto& def = previous.defined(f);
    for (int j = 0; j < mass.outerSize(); ++j) {
      for (SparseMatrix::InnerIterator it(mass, j); it; ++it) {
        if (it.value() == 0.0) continue;
        if (!def[it.col()]) {
          throw AssemblyError("previous trace undefined on the jump domain");
        }
        constant_[space.dof(f, 0, static_cast<int>(it.row()))] -=
            weight * it.value() * prev[it.col()];
      }
    }
  };
  if (previous.bulk.size() != mesh.num_vertices() ||
      previous.surface.size() != mesh.num_vertices()) {
    throw AssemblyError("previous trace does not match the mesh");
  }
  if (bulk) jump(B, first.mass_bulk, wB);
  jump(S, first.mass_surf, wS);

  if (space.has_multiplier()) {
    const int l = space.multiplier_index();
    auto border = [&](Field f, const SparseMatrix& mass, double factor) {
      const Vector m = mass * Vector::Ones(mesh.num_vertices());
      for (int v : space.vertices(f)) {
        if (m[v] == 0.0) continue;
        for (int a = 0; a < 2; ++a) {
          const int d = space.dof(f, a, v);
          trip.emplace_back(l, d, factor * m[v]);
          trip.emplace_back(d, l, factor * m[v]);
        }
      }
    };
    if (bulk) border(B, last.mass_bulk, 1.0);
    border(S, last.mass_surf, model.surface_mass_factor());
    constant_[l] = -config_.target_mass;
  }
  linear_.resize(n, n);
  linear_.setFromTriplets(trip.begin(), trip.end());
}

void SlabAssembler::nonlinear(const Vector& u, Vector* f, Triplets* jac) const {
  const auto& model = config_.coeffs.model;
  const double cB = model.bulk_test(), cS = model.surface_test();
  const bool frumkin = model.kind == CouplingKind::Frumkin;
  const int shift_B = space_.num_bulk() + space_.num_surface();
  for (const auto& p : points_) {
    const double th[2] = {1.0, p.s};
    double uB = 0.0, uS = 0.0;
    for (int i = 0; i < 3; ++i) {
      if (p.bulk[i] >= 0) uB += p.phi[i] * (u[p.bulk[i]] + p.s * u[p.bulk[i] + shift_B]);
      uS += p.phi[i] * (u[p.surf[i]] + p.s * u[p.surf[i] + shift_B]);
    }
    double g = model.b_BS * uB * uS;
    double dgB = model.b_BS * uS;
    double dgS = model.b_BS * uB;
    if (frumkin) {
      const double e = std::exp(model.frumkin_A * uS);
      g += model.b_S * e * uS;
      dgS += model.b_S * (model.frumkin_A * e * uS + e);
    }
    // Contribution -(g, c_B v_B - c_S v_S).
    for (int i = 0; i < 3; ++i) {
      for (int b = 0; b < 2; ++b) {
        const double tb = p.weight * th[b] * p.phi[i];
        const int rb = p.bulk[i] >= 0 ? p.bulk[i] + b * shift_B : -1;
        const int rs = p.surf[i] + b * shift_B;
        if (f) {
          if (rb >= 0) (*f)[rb] -= cB * tb * g;
          (*f)[rs] += cS * tb * g;
        }
        if (!jac) continue;
        for (int j = 0; j < 3; ++j) {
          for (int a = 0; a < 2; ++a) {
            const double ta = th[a] * p.phi[j];
            const int cb = p.bulk[j] >= 0 ? p.bulk[j] + a * shift_B : -1;
            const int cs = p.surf[j] + a * shift_B;
            if (rb >= 0) {
              if (cb >= 0) jac->emplace_back(rb, cb, -cB * tb * dgB * ta);
              jac->emplace_back(rb, cs, -cB * tb * dgS * ta);
            }
            if (cb >= 0) jac->emplace_back(rs, cb, cS * tb * dgB * ta);
            jac->emplace_back(rs, cs, cS * tb * dgS * ta);
          }
        }
      }
    }
  }
}

Vector SlabAssembler::residual(const Vector& u) const {
  if (u.size() != space_.size()) throw InvalidInput("state size mismatch");
  Vector f = linear_ * u + constant_;
  if (has_nonlinear_) nonlinear(u, &f, nullptr);
  return f;
}

SparseMatrix SlabAssembler::jacobian(const Vector& u) const {
  if (u.size() != space_.size()) throw InvalidInput("state size mismatch");
  if (!has_nonlinear_) return linear_;
  Triplets trip;
  trip.reserve(points_.size() * 36 * 2);
  nonlinear(u, nullptr, &trip);
  SparseMatrix dn(linear_.rows(), linear_.cols());
  dn.setFromTriplets(trip.begin(), trip.end());
  return linear_ + dn;
}

double mass_functional(const CutGeometry& geom, const Vector& bulk,
                       const Vector& surface, double surface_factor) {
  const auto& mesh = geom.coarse_mesh();
  double total = 0.0;
  for (int k = 0; k < mesh.num_triangles(); ++k) {
    const auto& tri = mesh.triangle(k);
    const auto& basis = mesh.basis(k);
    auto eval = [&](const Vector& u, const Vec2& x) {
      const auto phi = basis.values(x);
      return phi[0] * u[tri[0]] + phi[1] * u[tri[1]] + phi[2] * u[tri[2]];
    };
    if (bulk.size() > 0) {
      for (const auto& c : geom.cells_in(k)) {
        total += c.area * eval(bulk, (c.corners[0] + c.corners[1] + c.corners[2]) / 3.0);
      }
    }
    if (surface.size() > 0) {
      for (const auto& s : geom.segments_in(k)) {
        total += surface_factor * s.length() * eval(surface, s.point(0.5));
      }
    }
  }
  return total;
}

void write_matrix_coo(std::ostream& os, const SparseMatrix& a) {
  os.precision(17);
  for (int j = 0; j < a.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(a, j); it; ++it) {
      os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    }
  }
}

}  // namespace stcut
