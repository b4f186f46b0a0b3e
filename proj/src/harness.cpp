#include "stcut/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "stcut/error.hpp"
#include "stcut/forms.hpp"
#include "stcut/levelset.hpp"
#include "stcut/quadrature.hpp"

namespace stcut {

using GeomPtr = std::shared_ptr<const CutGeometry>;

LevelSetSource parse_levelset_source(const std::string& name) {
  if (name == "advected") return LevelSetSource::Advected;
  if (name == "analytic") return LevelSetSource::Analytic;
  throw ConfigError("unknown level set source '" + name + "'");
}

std::string to_string(LevelSetSource source) {
  return source == LevelSetSource::Advected ? "advected" : "analytic";
}

namespace {

bool parse_on_off(const nlohmann::json& v, const std::string& key) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "on" || s == "true") return true;
    if (s == "off" || s == "false") return false;
  }
  throw ConfigError("'" + key + "' must be on/off");
}

}  // namespace

SimulationConfig load_config(std::istream& is) {
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  SimulationConfig c;
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& key = it.key();
      const auto& v = it.value();
      if (key == "example") c.example = v.get<int>();
      else if (key == "nx") c.nx = v.get<int>();
      else if (key == "ny") c.ny = v.get<int>();
      else if (key == "k-ratio") c.k_ratio = v.get<double>();
      else if (key == "t-end") c.t_end = v.get<double>();
      else if (key == "t-eval") c.t_eval = v.get<double>();
      else if (key == "time-quadrature") c.rule = parse_time_rule(v.get<std::string>());
      else if (key == "coupling") c.coupling = parse_coupling(v.get<std::string>());
      else if (key == "conserve-mass") c.conserve_mass = parse_on_off(v, key);
      else if (key == "levelset") c.levelset = parse_levelset_source(v.get<std::string>());
      else if (key == "tau-b") c.tau_B = v.get<double>();
      else if (key == "tau-s") c.tau_S = v.get<double>();
      else if (key == "out") c.out_dir = v.get<std::string>();
      else if (key == "fields") c.write_fields = parse_on_off(v, key);
      else if (key == "interface") c.write_interface = parse_on_off(v, key);
      else if (key == "frame-every") c.frame_every = v.get<int>();
      else if (key == "newton-tol") c.newton.tol = v.get<double>();
      else if (key == "max-iters") c.newton.max_iters = v.get<int>();
      else if (key == "condition") c.newton.estimate_condition = parse_on_off(v, key);
      else if (key == "diagonal") {
        const auto s = v.get<std::string>();
        if (s == "uniform") c.diagonal = DiagonalRule::Uniform;
        else if (s == "alternating") c.diagonal = DiagonalRule::Alternating;
        else throw ConfigError("unknown diagonal rule '" + s + "'");
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return c;
}

namespace {

struct Resolved {
  Problem problem;
  int nx, ny;
  double k_ratio, t_end;
  LevelSetSource levelset;
};

Resolved resolve(Problem problem, const SimulationConfig& c) {
  Resolved r{std::move(problem), 0, 0, 0, 0, LevelSetSource::Advected};
  r.nx = c.nx.value_or(r.problem.nx);
  r.ny = c.ny.value_or(c.nx ? std::max(1, static_cast<int>(std::lround(
                                           static_cast<double>(*c.nx) * r.problem.ny /
                                           r.problem.nx)))
                            : r.problem.ny);
  r.k_ratio = c.k_ratio.value_or(r.problem.k_ratio);
  r.t_end = c.t_end.value_or(r.problem.t_end);
  r.levelset = c.levelset.value_or(r.problem.analytic_default
                                       ? LevelSetSource::Analytic
                                       : LevelSetSource::Advected);
  if (r.nx < 1 || r.ny < 1) throw ConfigError("nx and ny must be positive");
  if (!(r.k_ratio > 0)) throw ConfigError("k-ratio must be positive");
  if (!(r.t_end > 0)) throw ConfigError("t-end must be positive");
  if (!(c.tau_B >= 0 && c.tau_S >= 0)) throw ConfigError("tau must be nonnegative");
  if (c.frame_every < 0) throw ConfigError("frame-every must be nonnegative");
  if (r.levelset == LevelSetSource::Analytic && !r.problem.analytic) {
    throw ConfigError("example has no analytic level set");
  }
  return r;
}

Resolved resolve(const SimulationConfig& c) {
  return resolve(make_problem(c.example, c.coupling), c);
}

[[noreturn]] void rethrow_for_slab(int n) {
  const std::string where = "slab " + std::to_string(n) + ": ";
  try {
    throw;
  } catch (const NonConvergence& e) {
    throw NonConvergence(where + e.what(), e.residual());
  } catch (const SingularMatrix& e) {
    throw SingularMatrix(where + e.what(), e.pivot());
  } catch (const SolverError& e) {
    throw SolverError(where + e.what(), e.residual());
  } catch (const GeometryError& e) {
    throw GeometryError(where + e.what());
  } catch (const AssemblyError& e) {
    throw AssemblyError(where + e.what());
  } catch (const OutOfDomain& e) {
    throw OutOfDomain(where + e.what());
  }
}

NodalTrace interpolate_trace(const BackgroundMesh& mesh, const Problem& p) {
  const int nv = mesh.num_vertices();
  NodalTrace tr;
  tr.time = 0.0;
  tr.bulk = Vector::Zero(nv);
  tr.surface = Vector::Zero(nv);
  tr.bulk_defined.assign(nv, p.bulk ? 1 : 0);
  tr.surface_defined.assign(nv, 1);
  for (int v = 0; v < nv; ++v) {
    if (p.bulk) tr.bulk[v] = p.initial_bulk(mesh.vertex(v));
    tr.surface[v] = p.initial_surface(mesh.vertex(v));
  }
  return tr;
}

std::string frame_name(const std::string& stem, int index) {
  std::ostringstream os;
  os << stem << '_' << std::setw(4) << std::setfill('0') << index << ".csv";
  return os.str();
}

class Output {
 public:
  Output(const SimulationConfig& c) : config_(c) {
    if (c.out_dir.empty()) return;
    dir_ = c.out_dir;
    std::filesystem::create_directories(dir_);
    slabs_.open(dir_ / "slabs.jsonl");
    if (!slabs_) throw ConfigError("cannot write to " + dir_.string());
  }
  bool enabled() const { return !dir_.empty(); }

  void slab(const SlabRecord& rec) {
    if (enabled()) slabs_ << slab_json(rec) << '\n';
  }

  void frame(int index, const CutGeometry& g, const NodalTrace& tr) {
    if (!enabled()) return;
    if (config_.write_interface) {
      std::ofstream os(dir_ / frame_name("interface", index));
      write_interface_csv(os, g);
    }
    if (config_.write_fields) {
      std::ofstream os(dir_ / frame_name("fields", index));
      write_fields_csv(os, g.coarse_mesh(), tr);
    }
  }

  void finish(const SimulationResult& r) {
    if (!enabled()) return;
    std::ofstream m(dir_ / "mass.csv");
    write_mass_csv(m, r);
    std::ofstream a(dir_ / "area.csv");
    write_area_csv(a, r);
    std::ofstream c(dir_ / "condition.csv");
    write_condition_csv(c, r);
  }

 private:
  const SimulationConfig& config_;
  std::filesystem::path dir_;
  std::ofstream slabs_;
};

}  // namespace

SimulationResult run_simulation(const SimulationConfig& config,
                                const SlabCallback& on_slab) {
  return run_simulation(make_problem(config.example, config.coupling), config,
                        on_slab);
}

SimulationResult run_simulation(const Problem& problem,
                                const SimulationConfig& config,
                                const SlabCallback& on_slab) {
  const Resolved rc = resolve(problem, config);
  const Problem& prob = rc.problem;
  const MeshPtr coarse = build_uniform_mesh(prob.box, rc.nx, rc.ny, config.diagonal);
  const MeshPtr fine = refine_uniform(*coarse);
  const double h = coarse->h();
  const int steps = std::max(1, static_cast<int>(std::ceil(rc.t_end / (rc.k_ratio * h) - 1e-9)));
  const double k = rc.t_end / steps;

  SimulationResult result;
  result.problem = prob;
  result.h = h;
  result.k = k;
  result.steps = steps;

  const bool analytic = rc.levelset == LevelSetSource::Analytic;
  auto levelset_at = [&](double t) {
    return analytic_levelset(*prob.analytic, fine, t);
  };
  LevelSetField rho = analytic ? levelset_at(0.0)
                               : interpolate_levelset(fine, prob.levelset0, 0.0);
  LevelSetAdvector advector(fine, prob.velocity);
  GeomPtr g_prev = std::make_shared<CutGeometry>(build_cut_geometry(rho, coarse));

  NodalTrace trace = interpolate_trace(*coarse, prob);
  const double surf_factor = prob.coeffs.model.surface_mass_factor();
  result.initial_mass = mass_functional(*g_prev, prob.bulk ? trace.bulk : Vector(),
                                        trace.surface, surf_factor);
  result.initial_area = g_prev->enclosed_area();

  Output out(config);
  out.frame(0, *g_prev, trace);

  SlabConfig sc;
  sc.coeffs = prob.coeffs;
  sc.velocity = prob.velocity;
  sc.rule = config.rule;
  sc.tau_B = config.tau_B;
  sc.tau_S = config.tau_S;
  sc.sources = prob.sources;

  for (int n = 1; n <= steps; ++n) {
    try {
      const double t_prev = (n - 1) * k;
      const TimeQuadrature tq = time_quadrature(config.rule, t_prev, k);
      std::vector<GeomPtr> geoms{g_prev};
      for (size_t q = 1; q < tq.points.size(); ++q) {
        const double tq_time = tq.points[q];
        if (analytic) {
          rho = levelset_at(tq_time);
        } else {
          rho = advector.step(rho, k * (tq.s[q] - tq.s[q - 1]));
          rho.time = tq_time;
        }
        geoms.push_back(std::make_shared<CutGeometry>(build_cut_geometry(rho, coarse)));
      }
      std::vector<const CutGeometry*> raw;
      for (const auto& g : geoms) raw.push_back(g.get());
      SlabSets sets = build_slab_sets(raw, *coarse);
      const SlabSpace space(std::move(sets), coarse, t_prev, tq.points.back(),
                            config.conserve_mass, prob.bulk);
      const double t_next = tq.points.back();
      sc.target_mass = prob.exact_mass ? prob.exact_mass(t_next) : result.initial_mass;
      const SlabAssembler assembler(space, raw, sc, trace);
      const NewtonResult nr =
          newton_solve(assembler, initial_guess(trace, space), config.newton);
      const SlabFunction u{&space, nr.solution};
      trace = end_trace(u);
      const CutGeometry& g_next = *geoms.back();

      SlabRecord rec;
      rec.index = n;
      rec.t = t_next;
      rec.newton_iterations = nr.iterations;
      rec.update_norms = nr.update_norms;
      rec.linear_residuals = nr.linear_residuals;
      rec.condition = nr.condition;
      rec.mass = mass_functional(g_next, prob.bulk ? trace.bulk : Vector(),
                                 trace.surface, surf_factor);
      rec.target_mass = sc.target_mass;
      rec.rel_mass_error = (rec.mass - rec.target_mass) / rec.target_mass;
      rec.area = g_next.enclosed_area();
      rec.rel_area_change = (rec.area - result.initial_area) / result.initial_area;
      rec.num_bulk = space.num_bulk();
      rec.num_surface = space.num_surface();
      rec.lambda = space.has_multiplier() ? u.multiplier() : 0.0;
      result.slabs.push_back(rec);
      out.slab(rec);
      if (on_slab) on_slab(rec);

      if (std::abs(t_next - config.t_eval) <= 1e-9 * k) {
        result.at_eval = Snapshot{t_next, g_next, trace};
      }
      if ((config.frame_every > 0 && n % config.frame_every == 0) || n == steps) {
        out.frame(n, g_next, trace);
      }
      g_prev = geoms.back();
    } catch (const ConfigError&) {
      throw;
    } catch (const Error&) {
      rethrow_for_slab(n);
    }
  }
  result.final_state = Snapshot{g_prev->time(), *g_prev, trace};
  out.finish(result);
  return result;
}

namespace {

struct Accumulator {
  double l2b = 0, l1b = 0, l2s = 0, l1s = 0;
  ErrorNorms norms() const { return {std::sqrt(l2b), l1b, std::sqrt(l2s), l1s}; }
};

double eval_on(const BackgroundMesh& mesh, int element, const Vector& values,
               const Vec2& p) {
  const auto& tri = mesh.triangle(element);
  const auto phi = mesh.basis(element).values(p);
  return phi[0] * values[tri[0]] + phi[1] * values[tri[1]] + phi[2] * values[tri[2]];
}

bool defined_on(const BackgroundMesh& mesh, int element,
                const std::vector<char>& def) {
  const auto& tri = mesh.triangle(element);
  return def[tri[0]] && def[tri[1]] && def[tri[2]];
}

template <class BulkError, class SurfError>
ErrorNorms integrate_errors(const Snapshot& s, BulkError bulk_err,
                            SurfError surf_err) {
  const auto& g = s.geometry;
  const auto& mesh = g.coarse_mesh();
  Accumulator acc;
  const auto cell_rule = triangle_rule(4);
  const auto line_rule = gauss_line_rule(5);
  const bool bulk = !s.trace.bulk_defined.empty() &&
                    std::any_of(s.trace.bulk_defined.begin(),
                                s.trace.bulk_defined.end(), [](char c) { return c; });
  for (int e = 0; e < mesh.num_triangles(); ++e) {
    if (bulk) {
      for (const auto& cell : g.cells_in(e)) {
        if (!defined_on(mesh, e, s.trace.bulk_defined)) {
          throw AssemblyError("bulk solution undefined on Omega_h1");
        }
        for (const auto& qp : cell_rule) {
          const Vec2 x = cell.point(qp.bary);
          const double d = bulk_err(e, x);
          const double w = qp.weight * cell.area;
          acc.l2b += w * d * d;
          acc.l1b += w * std::abs(d);
        }
      }
    }
    for (const auto& seg : g.segments_in(e)) {
      for (const auto& lp : line_rule) {
        const Vec2 x = seg.point(lp.s);
        const double d = surf_err(e, x);
        const double w = lp.weight * seg.length();
        acc.l2s += w * d * d;
        acc.l1s += w * std::abs(d);
      }
    }
  }
  return acc.norms();
}

}  // namespace

ErrorNorms exact_errors(const Snapshot& s, const SpaceTimeFunction& bulk,
                        const SpaceTimeFunction& surface) {
  const auto& mesh = s.geometry.coarse_mesh();
  return integrate_errors(
      s,
      [&](int e, const Vec2& x) {
        return eval_on(mesh, e, s.trace.bulk, x) - (bulk ? bulk(s.t, x) : 0.0);
      },
      [&](int e, const Vec2& x) {
        return eval_on(mesh, e, s.trace.surface, x) - (surface ? surface(s.t, x) : 0.0);
      });
}

ErrorNorms pair_errors(const Snapshot& fine, const Snapshot& coarse) {
  if (std::abs(fine.t - coarse.t) > 1e-9 * std::max(1.0, std::abs(fine.t))) {
    throw ConfigError("snapshots are at different times");
  }
  const auto& fm = fine.geometry.coarse_mesh();
  const auto& cm = coarse.geometry.coarse_mesh();
  const auto& csegs = coarse.geometry.segments();
  auto coarse_on_interface = [&](const Vec2& x, const Vector& values) {
    const auto cp = closest_point_on_interface(coarse.geometry, x);
    return eval_on(cm, csegs[cp.segment].coarse_element, values, cp.point);
  };
  return integrate_errors(
      fine,
      [&](int e, const Vec2& x) {
        const double uh = eval_on(fm, e, fine.trace.bulk, x);
        const auto loc = cm.locate(x);
        const double u2h = defined_on(cm, loc.triangle, coarse.trace.bulk_defined)
                               ? eval_on(cm, loc.triangle, coarse.trace.bulk, x)
                               : coarse_on_interface(x, coarse.trace.bulk);
        return uh - u2h;
      },
      [&](int e, const Vec2& x) {
        return eval_on(fm, e, fine.trace.surface, x) -
               coarse_on_interface(x, coarse.trace.surface);
      });
}

void fill_orders(std::vector<ErrorRow>& rows) {
  for (size_t i = 1; i < rows.size(); ++i) {
    auto ord = [&](double prev, double cur) {
      return (prev > 0 && cur > 0) ? std::log2(prev / cur)
                                   : std::numeric_limits<double>::quiet_NaN();
    };
    rows[i].order_l2_bulk = ord(rows[i - 1].norms.l2_bulk, rows[i].norms.l2_bulk);
    rows[i].order_l2_surf = ord(rows[i - 1].norms.l2_surf, rows[i].norms.l2_surf);
    rows[i].order_l1_bulk = ord(rows[i - 1].norms.l1_bulk, rows[i].norms.l1_bulk);
    rows[i].order_l1_surf = ord(rows[i - 1].norms.l1_surf, rows[i].norms.l1_surf);
  }
}

std::vector<ErrorRow> converge(const SimulationConfig& base, int levels,
                               ErrorMode mode) {
  if (levels < 1) throw ConfigError("need at least one level");
  const Resolved rc = resolve(base);
  if (mode == ErrorMode::Exact && !(rc.problem.exact_bulk || rc.problem.exact_surface)) {
    throw ConfigError("example has no exact solution");
  }
  std::vector<ErrorRow> rows;
  std::optional<Snapshot> previous;
  for (int l = 0; l < levels; ++l) {
    SimulationConfig c = base;
    c.nx = rc.nx << l;
    c.ny = rc.ny << l;
    c.t_end = base.t_eval;
    c.out_dir.clear();
    const SimulationResult r = run_simulation(c);
    if (!r.at_eval) throw ConfigError("t-eval is not a slab endpoint");
    if (mode == ErrorMode::Exact) {
      rows.push_back({r.h, r.k,
                      exact_errors(*r.at_eval, rc.problem.exact_bulk,
                                   rc.problem.exact_surface)});
    } else if (previous) {
      rows.push_back({r.h, r.k, pair_errors(*r.at_eval, *previous)});
    }
    previous = r.at_eval;
  }
  fill_orders(rows);
  return rows;
}

std::vector<ErrorRow> converge_time(const SimulationConfig& base, int levels) {
  if (levels < 2) throw ConfigError("need at least two levels");
  const Resolved rc = resolve(base);
  std::vector<ErrorRow> rows;
  std::optional<Snapshot> previous;
  for (int l = 0; l < levels; ++l) {
    SimulationConfig c = base;
    c.k_ratio = rc.k_ratio / (1 << l);
    c.t_end = base.t_eval;
    c.out_dir.clear();
    const SimulationResult r = run_simulation(c);
    if (!r.at_eval) throw ConfigError("t-eval is not a slab endpoint");
    if (previous) rows.push_back({r.h, r.k, pair_errors(*r.at_eval, *previous)});
    previous = r.at_eval;
  }
  fill_orders(rows);
  return rows;
}

namespace {

void write_number(std::ostream& os, double v) {
  if (std::isnan(v)) {
    os << "nan";
  } else {
    os << v;
  }
}

}  // namespace

void write_errors_csv(std::ostream& os, const std::vector<ErrorRow>& rows) {
  os.precision(10);
  os << "h,k,l2_bulk,l1_bulk,l2_surf,l1_surf,order_l2_bulk,order_l2_surf\n";
  for (const auto& r : rows) {
    os << r.h << ',' << r.k << ',' << r.norms.l2_bulk << ',' << r.norms.l1_bulk
       << ',' << r.norms.l2_surf << ',' << r.norms.l1_surf << ',';
    write_number(os, r.order_l2_bulk);
    os << ',';
    write_number(os, r.order_l2_surf);
    os << '\n';
  }
}

void write_mass_csv(std::ostream& os, const SimulationResult& r) {
  os.precision(17);
  os << "t,rel_mass_error\n";
  os << 0.0 << ',' << 0.0 << '\n';
  for (const auto& s : r.slabs) os << s.t << ',' << s.rel_mass_error << '\n';
}

void write_area_csv(std::ostream& os, const SimulationResult& r) {
  os.precision(17);
  os << "t,rel_area_change\n";
  os << 0.0 << ',' << 0.0 << '\n';
  for (const auto& s : r.slabs) os << s.t << ',' << s.rel_area_change << '\n';
}

void write_condition_csv(std::ostream& os, const SimulationResult& r) {
  os.precision(17);
  os << "t,kappa\n";
  for (const auto& s : r.slabs) {
    os << s.t << ',';
    write_number(os, s.condition);
    os << '\n';
  }
}

void write_fields_csv(std::ostream& os, const BackgroundMesh& mesh,
                      const NodalTrace& trace) {
  os.precision(17);
  os << "vertex,x,y,u_bulk,u_surface\n";
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    const auto& p = mesh.vertex(v);
    os << v << ',' << p.x() << ',' << p.y() << ',';
    if (!trace.bulk_defined.empty() && trace.bulk_defined[v]) os << trace.bulk[v];
    os << ',';
    if (trace.surface_defined[v]) os << trace.surface[v];
    os << '\n';
  }
}

std::string slab_json(const SlabRecord& rec) {
  nlohmann::json j;
  j["slab"] = rec.index;
  j["t"] = rec.t;
  j["newton_iterations"] = rec.newton_iterations;
  j["update_norms"] = rec.update_norms;
  j["linear_residuals"] = rec.linear_residuals;
  j["kappa"] = std::isnan(rec.condition) ? nlohmann::json(nullptr)
                                          : nlohmann::json(rec.condition);
  j["mass"] = rec.mass;
  j["rel_mass_error"] = rec.rel_mass_error;
  j["rel_area_change"] = rec.rel_area_change;
  j["n_bulk"] = rec.num_bulk;
  j["n_surface"] = rec.num_surface;
  j["lambda"] = rec.lambda;
  return j.dump();
}

}  // namespace stcut
