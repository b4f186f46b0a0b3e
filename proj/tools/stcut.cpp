// Command line front end: run one benchmark or a convergence study.
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "stcut/error.hpp"
#include "stcut/harness.hpp"

namespace {

struct Flags {
  std::string config_file;
  int example = 1;
  int nx = 0, ny = 0;
  double k_ratio = 0, t_end = 0, t_eval = 0.5;
  std::string rule = "simpson", coupling, conserve = "on", levelset;
  double tau_b = 1e-2, tau_s = 1e-2;
  std::string out;
  bool fields = false, interface = false, condition = false, quiet = false;
  int frame_every = 0;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config_file, "JSON file with the same keys as the flags");
  app->add_option("--example", f.example, "Benchmark 1-4")->check(CLI::Range(1, 4));
  app->add_option("--nx", f.nx, "Cells in x");
  app->add_option("--ny", f.ny, "Cells in y");
  app->add_option("--k-ratio", f.k_ratio, "Time step k = C h");
  app->add_option("--t-end", f.t_end, "Final time");
  app->add_option("--t-eval", f.t_eval, "Snapshot time for error norms");
  app->add_option("--time-quadrature", f.rule)->check(CLI::IsMember({"trapezoid", "simpson"}));
  app->add_option("--coupling", f.coupling)->check(CLI::IsMember({"langmuir", "henry", "frumkin"}));
  app->add_option("--conserve-mass", f.conserve)->check(CLI::IsMember({"on", "off"}));
  app->add_option("--levelset", f.levelset)->check(CLI::IsMember({"advected", "analytic"}));
  app->add_option("--tau-b", f.tau_b, "Bulk ghost penalty");
  app->add_option("--tau-s", f.tau_s, "Surface ghost penalty");
  app->add_option("--out", f.out, "Output directory");
}

stcut::SimulationConfig to_config(const Flags& f, const CLI::App& app) {
  stcut::SimulationConfig c;
  if (!f.config_file.empty()) {
    std::ifstream is(f.config_file);
    if (!is) throw stcut::ConfigError("cannot open " + f.config_file);
    c = stcut::load_config(is);
  }
  auto given = [&](const char* name) { return app.count(name) > 0; };
  if (given("--example")) c.example = f.example;
  if (given("--nx")) c.nx = f.nx;
  if (given("--ny")) c.ny = f.ny;
  if (given("--k-ratio")) c.k_ratio = f.k_ratio;
  if (given("--t-end")) c.t_end = f.t_end;
  if (given("--t-eval")) c.t_eval = f.t_eval;
  if (given("--time-quadrature")) c.rule = stcut::parse_time_rule(f.rule);
  if (given("--coupling")) c.coupling = stcut::parse_coupling(f.coupling);
  if (given("--conserve-mass")) c.conserve_mass = f.conserve == "on";
  if (given("--levelset")) c.levelset = stcut::parse_levelset_source(f.levelset);
  if (given("--tau-b")) c.tau_B = f.tau_b;
  if (given("--tau-s")) c.tau_S = f.tau_s;
  if (given("--out")) c.out_dir = f.out;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Space-time cut finite elements for bulk-surface surfactant transport"};
  app.require_subcommand(1);

  Flags run_flags;
  auto* run = app.add_subcommand("run", "Run one benchmark");
  add_common(run, run_flags);
  run->add_flag("--fields", run_flags.fields, "Write nodal field frames");
  run->add_flag("--interface", run_flags.interface, "Write interface frames");
  run->add_option("--frame-every", run_flags.frame_every, "Slabs between frames");
  run->add_flag("--condition", run_flags.condition, "Estimate condition numbers");
  run->add_flag("--quiet", run_flags.quiet, "No per-slab progress");

  Flags conv_flags;
  int levels = 4;
  std::string mode = "auto";
  auto* conv = app.add_subcommand("converge", "Mesh or time-step refinement study");
  add_common(conv, conv_flags);
  conv->add_option("--levels", levels, "Number of runs")->check(CLI::Range(1, 8));
  conv->add_option("--mode", mode, "exact, pairs, time or auto")
      ->check(CLI::IsMember({"auto", "exact", "pairs", "time"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      stcut::SimulationConfig c = to_config(run_flags, *run);
      if (run_flags.fields) c.write_fields = true;
      if (run_flags.interface) c.write_interface = true;
      if (run->count("--frame-every")) c.frame_every = run_flags.frame_every;
      if (run_flags.condition) c.newton.estimate_condition = true;
      const bool quiet = run_flags.quiet;
      const auto r = stcut::run_simulation(c, [quiet](const stcut::SlabRecord& s) {
        if (quiet) return;
        std::cerr << "slab " << s.index << " t=" << s.t << " newton=" << s.newton_iterations
                  << " mass_err=" << s.rel_mass_error << '\n';
      });
      std::cout << "example " << r.problem.id << " (" << r.problem.name << ")\n"
                << "h " << r.h << "  k " << r.k << "  slabs " << r.steps << '\n';
      if (!r.slabs.empty()) {
        const auto& last = r.slabs.back();
        std::cout << "final rel mass error " << last.rel_mass_error << '\n'
                  << "final rel area change " << last.rel_area_change << '\n';
      }
      if (r.at_eval && (r.problem.exact_bulk || r.problem.exact_surface)) {
        const auto e = stcut::exact_errors(*r.at_eval, r.problem.exact_bulk,
                                           r.problem.exact_surface);
        std::cout << "errors at t=" << r.at_eval->t << ": l2_bulk " << e.l2_bulk
                  << " l2_surf " << e.l2_surf << '\n';
      }
    } else {
      const stcut::SimulationConfig c = to_config(conv_flags, *conv);
      std::vector<stcut::ErrorRow> rows;
      if (mode == "time") {
        rows = stcut::converge_time(c, levels);
      } else {
        stcut::ErrorMode m = stcut::ErrorMode::Pairs;
        if (mode == "exact" || (mode == "auto" && c.example == 1)) m = stcut::ErrorMode::Exact;
        rows = stcut::converge(c, levels, m);
      }
      stcut::write_errors_csv(std::cout, rows);
      if (!c.out_dir.empty()) {
        std::filesystem::create_directories(c.out_dir);
        std::ofstream os(std::filesystem::path(c.out_dir) / "errors.csv");
        stcut::write_errors_csv(os, rows);
      }
    }
  } catch (const stcut::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
