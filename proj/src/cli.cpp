#include "hydro/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hydro/boussinesq.hpp"
#include "hydro/config.hpp"
#include "hydro/diagnostics.hpp"
#include "hydro/initial_data.hpp"
#include "hydro/primitive.hpp"
#include "hydro/snapshot_io.hpp"
#include "hydro/sweep.hpp"

namespace hydro {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct FlagSpec {
  const char* key;
  const char* help;
};

const std::vector<FlagSpec> kFlags = {
    {"lambda", "aspect ratio in (0, 1]"},
    {"beta", "vertical viscosity exponent (> 2)"},
    {"gamma", "vertical diffusivity exponent (> 2)"},
    {"f0", "Coriolis parameter"},
    {"grid", "grid size N or NXxNYxNZ (even, >= 8)"},
    {"dt", "time step"},
    {"t_end", "final time"},
    {"dealias", "true or false"},
    {"lambdas", "comma-separated, strictly decreasing lambda values (sweep)"},
    {"recipe", "initial-data recipe file (default: canonical data)"},
    {"amplitude", "amplitude of the canonical data"},
    {"out", "output directory"},
    {"snapshot_every", "snapshot cadence in steps (0: first and last only)"},
    {"seed", "random seed (verify-lemma)"},
    {"samples", "number of random fields (verify-lemma)"},
    {"coarse_grid", "coarse grid size (verify-lemma)"},
    {"fine_grid", "fine grid size (verify-lemma)"},
    {"band", "highest mode of the random fields (verify-lemma)"},
    {"system", "boussinesq, primitive or both (energy-report)"},
    {"threads", "worker threads for sweep (default from HYDROLAB_THREADS)"},
};

std::string flag_name(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return "--" + key;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
}

InitialData load_initial(const RunConfig& c) {
  const Recipe recipe = c.recipe.empty() ? canonical_recipe(c.amplitude) : load_recipe(c.recipe);
  return make_initial(recipe, c.params.grid);
}

/// Everything needed to repeat the run. The output directory is left out so
/// that repeated runs into different directories produce identical files.
Json manifest(const RunConfig& c) {
  Json m;
  m["tool"] = "hydrolab";
  m["version"] = kVersion;
  m["subcommand"] = c.subcommand;
  m["seed"] = c.seed;
  Json cfg;
  for (const auto& [key, value] : config_entries(c)) {
    if (key != "out") cfg[key] = value;
  }
  m["config"] = cfg;
  m["grid"] = {{"nx", c.params.grid.nx()}, {"ny", c.params.grid.ny()}, {"nz", c.params.grid.nz()}};
  if (c.subcommand != "verify-lemma") {
    m["steps"] = c.params.steps();
    m["eta"] = c.params.eta();
    const Recipe recipe = c.recipe.empty() ? canonical_recipe(c.amplitude) : load_recipe(c.recipe);
    m["recipe_text"] = format_recipe(recipe);
  }
  return m;
}

void write_json(const fs::path& path, const Json& j) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

void write_records(const fs::path& path, const std::vector<StepRecord>& records) {
  std::ofstream csv = open_out(path);
  csv << "step,time,E,D,residual,violation,divergence,barotropic,parity_fraction,dzv_L4\n";
  for (const auto& r : records) {
    csv << r.step << ',' << r.time << ',' << r.energy << ',' << r.dissipation << ','
        << r.residual << ',' << r.violation << ',' << r.divergence << ',' << r.barotropic << ','
        << r.parity_fraction << ',' << r.dzv_L4 << '\n';
  }
  if (!csv) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::string snapshot_name(long step) {
  std::ostringstream name;
  name << "snap_" << std::setw(6) << std::setfill('0') << step << ".bin";
  return name.str();
}

Json run_boussinesq_cmd(const RunConfig& c, const fs::path& dir) {
  const InitialData initial = load_initial(c);
  RunOptions options;
  options.snapshot_every = c.snapshot_every;
  const auto traj = run_boussinesq(initial, c.params, options);
  write_records(dir / "diagnostics.csv", traj.records);
  Json files = Json::array();
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    const FlowState& s = traj.snapshots[i];
    const std::string name = snapshot_name(traj.snapshot_steps[i]);
    write_snapshot(dir / name, {s.time, {{"v1", s.v[0]}, {"v2", s.v[1]}, {"w", s.w},
                                         {"rho", s.rho}, {"p", s.p}}});
    files.push_back(name);
  }
  return {{"snapshots", files}, {"max_violation", traj.budget.max_violation}};
}

Json run_primitive_cmd(const RunConfig& c, const fs::path& dir) {
  const InitialData initial = load_initial(c);
  RunOptions options;
  options.snapshot_every = c.snapshot_every;
  const auto traj = run_primitive(initial, c.params, options);
  write_records(dir / "diagnostics.csv", traj.records);
  Json files = Json::array();
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    const HydroState& s = traj.snapshots[i];
    const std::string name = snapshot_name(traj.snapshot_steps[i]);
    write_snapshot(dir / name, {s.time, {{"v1", s.v[0]}, {"v2", s.v[1]}, {"w", s.w},
                                         {"rho", s.rho}, {"p", s.p},
                                         {"p_surface", s.p_surface}}});
    files.push_back(name);
  }
  return {{"snapshots", files}, {"max_violation", traj.budget.max_violation}};
}

Json sweep_cmd(const RunConfig& c, const fs::path& dir) {
  const InitialData initial = load_initial(c);
  SweepOptions options;
  options.threads = c.threads;
  options.series_every = std::max<long>(1, c.snapshot_every);
  const SweepResult result = run_sweep(c.lambdas, c.params, initial, c.params.t_end, options);
  emit_report(result, dir);
  Json j;
  j["predicted_slope"] = result.predicted_slope;
  if (result.fitted_slope) j["fitted_slope"] = *result.fitted_slope;
  else j["fitted_slope"] = nullptr;
  return j;
}

Json verify_lemma_cmd(const RunConfig& c, const fs::path& dir) {
  const LemmaProbe probe =
      probe_ladyzhenskaya(c.seed, c.samples, c.coarse_grid, c.fine_grid, c.band);
  {
    std::ofstream csv = open_out(dir / "ratios.csv");
    csv << "sample,coarse_ratio,fine_ratio\n";
    for (std::size_t i = 0; i < probe.coarse_ratios.size(); ++i) {
      csv << i << ',' << probe.coarse_ratios[i] << ',' << probe.fine_ratios[i] << '\n';
    }
  }
  Json j;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["coarse_grid"] = c.coarse_grid;
  j["fine_grid"] = c.fine_grid;
  j["band"] = c.band;
  j["coarse_max"] = probe.coarse_max;
  j["fine_max"] = probe.fine_max;
  j["relative_change"] = probe.relative_change;
  j["within_5_percent"] = probe.relative_change <= 0.05;
  write_json(dir / "lemma.json", j);
  return {{"coarse_max", probe.coarse_max}, {"fine_max", probe.fine_max}};
}

Json energy_entry(const EnergyBudget& fine, const EnergyBudget& coarse) {
  Json j;
  j["max_violation_dt"] = coarse.max_violation;
  j["max_violation_half_dt"] = fine.max_violation;
  j["max_abs_residual_dt"] = coarse.max_abs_residual;
  j["max_abs_residual_half_dt"] = fine.max_abs_residual;
  j["shrink_ratio"] = fine.max_violation > 0.0 ? Json(coarse.max_violation / fine.max_violation)
                                               : Json(nullptr);
  j["residual_shrink_ratio"] = fine.max_abs_residual > 0.0
                                   ? Json(coarse.max_abs_residual / fine.max_abs_residual)
                                   : Json(nullptr);
  j["final_energy"] = coarse.energy;
  j["final_dissipation"] = coarse.dissipation;
  return j;
}

Json energy_report_cmd(const RunConfig& c, const fs::path& dir) {
  const InitialData initial = load_initial(c);
  SolverParams half = c.params;
  half.dt = c.params.dt / 2.0;
  Json report;
  report["dt"] = c.params.dt;
  report["half_dt"] = half.dt;
  if (c.system == "boussinesq" || c.system == "both") {
    const auto a = run_boussinesq(initial, c.params);
    const auto b = run_boussinesq(initial, half);
    write_records(dir / "energy_boussinesq.csv", a.records);
    report["boussinesq"] = energy_entry(b.budget, a.budget);
  }
  if (c.system == "primitive" || c.system == "both") {
    const auto a = run_primitive(initial, c.params);
    const auto b = run_primitive(initial, half);
    write_records(dir / "energy_primitive.csv", a.records);
    report["primitive"] = energy_entry(b.budget, a.budget);
  }
  write_json(dir / "energy_report.json", report);
  return report;
}

}  // namespace

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
      return 2;
    case ErrorCode::ValidationError:
    case ErrorCode::InvalidArgument:
      return 3;
    case ErrorCode::IoError:
      return 4;
    case ErrorCode::BlowUp:
    case ErrorCode::CflViolation:
    case ErrorCode::NonPositiveError:
    case ErrorCode::DegenerateInput:
      return 5;
    case ErrorCode::NonZeroVerticalMean:
    case ErrorCode::ZeroMeanViolation:
    case ErrorCode::CompatibilityViolation:
    case ErrorCode::ParityViolation:
    case ErrorCode::BarotropicViolation:
    case ErrorCode::GridMismatch:
      return 6;
  }
  return 1;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scaled Boussinesq and primitive-equation solvers with convergence diagnostics",
               "hydrolab"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  struct Sub {
    CLI::App* app;
    std::string config;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
  };
  const std::vector<std::pair<std::string, std::string>> subcommands = {
      {"run-boussinesq", "integrate the scaled Boussinesq system"},
      {"run-primitive", "integrate the primitive (hydrostatic) system"},
      {"sweep", "run both systems over a list of lambdas and fit the convergence rate"},
      {"verify-lemma", "probe the anisotropic Ladyzhenskaya inequality on random fields"},
      {"energy-report", "check the discrete energy inequality at dt and dt/2"},
  };
  std::vector<Sub> subs(subcommands.size());
  for (std::size_t i = 0; i < subcommands.size(); ++i) {
    Sub& s = subs[i];
    s.app = app.add_subcommand(subcommands[i].first, subcommands[i].second);
    s.app->add_option("--config", s.config, "key = value config file; flags override it");
    for (const auto& f : kFlags) {
      s.options[f.key] = s.app->add_option(flag_name(f.key), s.values[f.key], f.help);
    }
  }

  if (args.empty()) {
    err << app.help();
    return 2;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const Sub& s = *std::find_if(subs.begin(), subs.end(),
                                 [](const Sub& x) { return x.app->parsed(); });
    RunConfig config;
    config.threads = threads_from_environment();
    if (!s.config.empty()) config = load_config(s.config, config);
    config.subcommand = s.app->get_name();
    std::map<std::string, std::string> flags;
    for (const auto& [key, opt] : s.options) {
      if (opt->count() > 0) flags[key] = s.values.at(key);
    }
    config = apply_overrides(std::move(config), flags);
    validate_config(config);

    const fs::path dir = config.out;
    prepare_dir(dir);
    const auto start = std::chrono::steady_clock::now();
    Json summary;
    if (config.subcommand == "run-boussinesq") summary = run_boussinesq_cmd(config, dir);
    else if (config.subcommand == "run-primitive") summary = run_primitive_cmd(config, dir);
    else if (config.subcommand == "sweep") summary = sweep_cmd(config, dir);
    else if (config.subcommand == "verify-lemma") summary = verify_lemma_cmd(config, dir);
    else summary = energy_report_cmd(config, dir);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    Json m = manifest(config);
    m["result"] = summary;
    write_json(dir / "manifest.json", m);
    write_json(dir / "timing.json", Json{{"wall_seconds", wall}});
    out << config.subcommand << ": wrote " << dir.string() << '\n';
    return 0;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hydro
