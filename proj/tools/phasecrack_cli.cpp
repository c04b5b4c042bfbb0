// Command-line driver: check | sweep | minimize | recover | sharp.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "phasecrack/config.hpp"

namespace fs = std::filesystem;
using namespace phasecrack;

namespace {

constexpr int kOk = 0;
constexpr int kInvariant = 1;
constexpr int kConfig = 2;

struct Context {
  RunConfig cfg;
  fs::path out;
  bool quiet = false;
  std::string command;

  void say(const std::string& line) const {
    if (!quiet) std::cout << line << '\n';
  }
};

/// Writes `<name>.partial` and renames it to `<name>` only when `ok`.
class Artifact {
 public:
  Artifact(const fs::path& dir, const std::string& name) : final_(dir / name), partial_(dir / (name + ".partial")) {
    stream_.open(partial_);
    if (!stream_) throw Error("cannot write " + partial_.string());
    stream_.precision(17);
  }
  std::ostream& stream() { return stream_; }
  void finish(bool ok) {
    stream_.close();
    if (ok) fs::rename(partial_, final_);
  }

 private:
  fs::path final_;
  fs::path partial_;
  std::ofstream stream_;
};

void write_manifest(const Context& ctx, int exit_code) {
  std::ofstream m(ctx.out / "manifest.txt");
  m << "# phasecrack " << kVersion << "\n";
  m << "# command: " << ctx.command << "\n";
  m << "# seed: " << ctx.cfg.seed << "\n";
  m << "# exit: " << exit_code << "\n";
  m << emit_config(ctx.cfg);
}

int run_check(const Context& ctx) {
  const auto P = ctx.cfg.potentials();
  const auto report = check_admissibility(P, ctx.cfg.potential.samples);
  Artifact file(ctx.out, "check.txt");
  std::ostringstream text;
  text.precision(17);
  for (const auto& c : report.conditions) {
    text << (c.passed ? "pass " : "FAIL ") << c.name << "  worst_margin=" << c.worst_margin
         << "  samples=" << c.samples;
    if (!c.note.empty()) text << "  (" << c.note << ")";
    text << '\n';
  }
  text << "alpha_surf = " << surface_density(P) << '\n';
  text << "alpha_frac = " << fracture_density(P) << '\n';
  text << (report.passed ? "admissible" : "not admissible") << '\n';
  file.stream() << text.str();
  file.finish(true);
  if (!ctx.quiet) std::cout << text.str();
  return report.passed ? kOk : kInvariant;
}

int run_sweep(const Context& ctx) {
  const auto P = ctx.cfg.potentials();
  SweepPlan plan = ctx.cfg.sweep;
  plan.geometry = ctx.cfg.geometry;
  const auto table = gamma_sweep(plan, P, ctx.cfg.elastic);
  Artifact file(ctx.out, "sweep.csv");
  write_sweep_csv(file.stream(), table);
  bool ok = true;
  for (const auto& r : table.rows) ok = ok && r.status.rfind("error", 0) != 0;
  file.finish(ok);
  if (!ctx.quiet) write_sweep_csv(std::cout, table);
  return ok ? kOk : kInvariant;
}

void dump_state(const Context& ctx, const DiffuseState& s) {
  for (const auto& [name, write] :
       std::initializer_list<std::pair<const char*, std::function<void(std::ostream&)>>>{
           {"c.txt", [&](std::ostream& os) { write_field(os, s.c); }},
           {"u.txt", [&](std::ostream& os) { write_field(os, s.u); }},
           {"z.txt", [&](std::ostream& os) { write_field(os, s.z); }}}) {
    Artifact file(ctx.out, name);
    write(file.stream());
    file.finish(true);
  }
}

int run_minimize(const Context& ctx) {
  const auto P = ctx.cfg.potentials();
  const Grid grid = grid_for(ctx.cfg.geometry, ctx.cfg.cells);
  const double eps = ctx.cfg.eps;
  const double delta = ctx.cfg.sweep.delta_rule(eps);
  const auto s0 = default_initial_state(grid, ctx.cfg.solver, eps, delta);
  const auto result = alternate(s0, P, ctx.cfg.elastic, ctx.cfg.solver);
  const auto& sweeps = result.trajectory.sweeps;

  bool ok = true;
  std::string failure;
  for (std::size_t k = 1; k < sweeps.size(); ++k) {
    const double prev = sweeps[k - 1].energy.e_total;
    if (sweeps[k].energy.e_total > prev + 10 * ctx.cfg.solver.cg_tol * std::abs(prev)) {
      ok = false;
      failure = "energy increased at sweep " + std::to_string(k);
    }
    if (ctx.cfg.solver.mass_constraint && std::abs(sweeps[k].mass - *ctx.cfg.solver.mass_constraint) > 1e-12) {
      ok = false;
      failure = "mass drifted at sweep " + std::to_string(k);
    }
  }
  for (double z : result.state.z.values) {
    if (!(z >= 0 && z <= 1)) {
      ok = false;
      failure = "damage left [0, 1]";
    }
  }

  Artifact file(ctx.out, "trajectory.csv");
  auto& os = file.stream();
  os << "sweep,e_phase,e_elastic,e_crack,e_total,mass,u_status,z_status,c_status\n";
  for (std::size_t k = 0; k < sweeps.size(); ++k) {
    const auto& r = sweeps[k];
    os << k << ',' << format_number(r.energy.e_phase) << ',' << format_number(r.energy.e_elastic) << ','
       << format_number(r.energy.e_crack) << ',' << format_number(r.energy.e_total) << ',' << format_number(r.mass)
       << ',' << to_string(r.u) << ',' << to_string(r.z) << ',' << to_string(r.c) << '\n';
  }
  file.finish(ok);
  dump_state(ctx, result.state);
  const auto& last = sweeps.back().energy;
  ctx.say("termination: " + result.trajectory.termination + " after " + std::to_string(sweeps.size() - 1) +
          " sweeps");
  ctx.say("e_phase = " + format_number(last.e_phase) + "  e_elastic = " + format_number(last.e_elastic) +
          "  e_crack = " + format_number(last.e_crack) + "  e_total = " + format_number(last.e_total));
  if (!ok) std::cerr << "invariant failure: " << failure << '\n';
  return ok ? kOk : kInvariant;
}

int run_recover(const Context& ctx) {
  const auto P = ctx.cfg.potentials();
  const Grid grid = grid_for(ctx.cfg.geometry, ctx.cfg.cells);
  const double eps = ctx.cfg.eps;
  const double delta = ctx.cfg.sweep.delta_rule(eps);
  RecoveryOptions opt;
  opt.lambda = ctx.cfg.sweep.lambda;
  opt.enforce_width = ctx.cfg.sweep.enforce_width;
  opt.profile_cells = ctx.cfg.sweep.profile_cells;
  const auto rec = build_recovery(ctx.cfg.geometry, eps, delta, grid, P, opt);
  dump_state(ctx, rec.state);
  const auto e = diffuse_energy(rec.state, P, ctx.cfg.elastic);
  for (const auto& note : rec.notes) ctx.say("note: " + note);
  ctx.say("e_phase = " + format_number(e.e_phase) + "  e_elastic = " + format_number(e.e_elastic) +
          "  e_crack = " + format_number(e.e_crack) + "  e_total = " + format_number(e.e_total));
  return kOk;
}

int run_sharp(const Context& ctx) {
  const auto P = ctx.cfg.potentials();
  const auto e = sharp_energy(ctx.cfg.geometry, P, ctx.cfg.elastic);
  Artifact file(ctx.out, "sharp.txt");
  std::ostringstream text;
  text << "e_phase = " << format_number(e.e_phase) << '\n'
       << "e_elastic = " << format_number(e.e_elastic) << '\n'
       << "e_crack = " << format_number(e.e_crack) << '\n'
       << "e_total = " << format_number(e.e_total) << '\n';
  if (e.excluded_bound > 0) text << "excluded_bound = " << format_number(e.excluded_bound) << '\n';
  for (const auto& w : e.warnings) text << "warning: " << w << '\n';
  file.stream() << text.str();
  file.finish(true);
  if (!ctx.quiet) std::cout << text.str();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diffuse phase-field fracture with phase separation: checks, sweeps and solves"};
  std::string config_path;
  std::string out_dir;
  std::optional<long long> seed;
  bool quiet = false;
  app.add_option("--config", config_path, "Configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory (overrides [run] out)");
  app.add_option("--seed", seed, "Random seed (overrides [run] seed)");
  app.add_flag("--quiet", quiet, "Print nothing on success");
  app.require_subcommand(1, 1);
  app.fallthrough();
  const std::pair<const char*, const char*> commands[] = {
      {"check", "Check the potentials' structural assumptions"},
      {"sweep", "Run the recovery-sequence sweep over eps"},
      {"minimize", "Alternating minimization from the jittered start"},
      {"recover", "Build and dump one recovery state"},
      {"sharp", "Evaluate the sharp-interface energy of the geometry"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  Context ctx;
  ctx.quiet = quiet;
  ctx.command = app.get_subcommands().front()->get_name();
  try {
    ctx.cfg = config_path.empty() ? parse_config_string("") : parse_config(config_path);
    if (seed) {
      ctx.cfg.seed = static_cast<std::uint64_t>(*seed);
      ctx.cfg.solver.seed = ctx.cfg.seed;
    }
    if (!out_dir.empty()) ctx.cfg.out = out_dir;
    ctx.cfg.sweep.output = ctx.cfg.out;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kConfig;
  } catch (const Error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfig;
  }

  ctx.out = ctx.cfg.out;
  std::error_code ec;
  fs::create_directories(ctx.out, ec);
  if (ec) {
    std::cerr << "cannot create output directory " << ctx.out << ": " << ec.message() << '\n';
    return kConfig;
  }

  int code = kOk;
  try {
    if (ctx.command == "check") code = run_check(ctx);
    if (ctx.command == "sweep") code = run_sweep(ctx);
    if (ctx.command == "minimize") code = run_minimize(ctx);
    if (ctx.command == "recover") code = run_recover(ctx);
    if (ctx.command == "sharp") code = run_sharp(ctx);
  } catch (const Error& e) {
    std::cerr << ctx.command << " failed: " << e.what() << '\n';
    code = kInvariant;
  }
  write_manifest(ctx, code);
  return code;
}
