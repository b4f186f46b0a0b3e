#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stcut/benchmarks.hpp"
#include "stcut/cutgeom.hpp"
#include "stcut/slabspace.hpp"
#include "stcut/solver.hpp"

namespace stcut {

enum class LevelSetSource { Advected, Analytic };

LevelSetSource parse_levelset_source(const std::string& name);
std::string to_string(LevelSetSource source);

struct SimulationConfig {
  int example = 1;
  std::optional<int> nx;
  std::optional<int> ny;
  std::optional<double> k_ratio;
  std::optional<double> t_end;
  TimeRule rule = TimeRule::Simpson;
  std::optional<CouplingKind> coupling;
  bool conserve_mass = true;
  std::optional<LevelSetSource> levelset;
  double tau_B = 1e-2;
  double tau_S = 1e-2;
  DiagonalRule diagonal = DiagonalRule::Uniform;
  NewtonConfig newton;
  /// Time of the stored solution snapshot (must be a slab endpoint).
  double t_eval = 0.5;
  /// Output directory; empty disables file output.
  std::string out_dir;
  bool write_fields = false;
  bool write_interface = false;
  /// Write a frame every this many slabs (0: initial and final only).
  int frame_every = 0;
};

/// Reads a JSON object whose keys mirror the CLI flags (e.g. "nx",
/// "k-ratio", "time-quadrature", "conserve-mass": "on").
SimulationConfig load_config(std::istream& is);

struct SlabRecord {
  int index = 0;
  double t = 0.0;
  int newton_iterations = 0;
  std::vector<double> update_norms;
  std::vector<double> linear_residuals;
  double condition = std::numeric_limits<double>::quiet_NaN();
  double mass = 0.0;
  double target_mass = 0.0;
  double rel_mass_error = 0.0;
  double area = 0.0;
  double rel_area_change = 0.0;
  int num_bulk = 0;
  int num_surface = 0;
  double lambda = 0.0;
};

/// Solution at a slab endpoint together with its geometry.
struct Snapshot {
  double t = 0.0;
  CutGeometry geometry;
  NodalTrace trace;
};

struct SimulationResult {
  Problem problem;
  double h = 0.0;
  double k = 0.0;
  int steps = 0;
  double initial_mass = 0.0;
  double initial_area = 0.0;
  std::vector<SlabRecord> slabs;
  std::optional<Snapshot> at_eval;
  Snapshot final_state;
};

using SlabCallback = std::function<void(const SlabRecord&)>;

/// Runs the configured example from t = 0 to t_end.
SimulationResult run_simulation(const SimulationConfig& config,
                                const SlabCallback& on_slab = {});

/// Same, for a caller-built problem; `config.example` and `config.coupling`
/// are ignored.
SimulationResult run_simulation(const Problem& problem,
                                const SimulationConfig& config,
                                const SlabCallback& on_slab = {});

struct ErrorNorms {
  double l2_bulk = 0.0;
  double l1_bulk = 0.0;
  double l2_surf = 0.0;
  double l1_surf = 0.0;
};

/// Errors against closed-form solutions on Omega_{h,1}(t) and Gamma_h(t).
ErrorNorms exact_errors(const Snapshot& s, const SpaceTimeFunction& bulk,
                        const SpaceTimeFunction& surface);

/// ||u_h - u_2h|| on the fine geometry. Surface values of the coarse
/// solution are taken at the closest point of the coarse interface; bulk
/// values at the point itself, falling back to the closest interface point
/// outside the coarse patch.
ErrorNorms pair_errors(const Snapshot& fine, const Snapshot& coarse);

struct ErrorRow {
  double h = 0.0;
  double k = 0.0;
  ErrorNorms norms;
  double order_l2_bulk = std::numeric_limits<double>::quiet_NaN();
  double order_l2_surf = std::numeric_limits<double>::quiet_NaN();
  double order_l1_bulk = std::numeric_limits<double>::quiet_NaN();
  double order_l1_surf = std::numeric_limits<double>::quiet_NaN();
};

enum class ErrorMode { Exact, Pairs };

/// Runs `levels` meshes, doubling nx and ny each time. Exact mode gives one
/// row per mesh, pair mode one row per consecutive pair (tagged with the
/// finer h). Orders are log2 ratios of consecutive rows.
std::vector<ErrorRow> converge(const SimulationConfig& base, int levels,
                               ErrorMode mode);

/// Time refinement at a fixed mesh: k_ratio halved `levels - 1` times.
/// Errors are differences of consecutive step sizes in the exact-solution
/// norms evaluated on the finer run's geometry.
std::vector<ErrorRow> converge_time(const SimulationConfig& base, int levels);

void fill_orders(std::vector<ErrorRow>& rows);

void write_errors_csv(std::ostream& os, const std::vector<ErrorRow>& rows);
void write_mass_csv(std::ostream& os, const SimulationResult& r);
void write_area_csv(std::ostream& os, const SimulationResult& r);
void write_condition_csv(std::ostream& os, const SimulationResult& r);
void write_fields_csv(std::ostream& os, const BackgroundMesh& mesh,
                      const NodalTrace& trace);
/// One JSON object per line.
std::string slab_json(const SlabRecord& rec);

}  // namespace stcut
