/*
 * Copyright 2026 The csimplex Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "csimplex/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "csimplex/criteria.hpp"
#include "csimplex/model_io.hpp"
#include "csimplex/odeflow.hpp"
#include "csimplex/simplex.hpp"

namespace csimplex::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string model_path;
  std::string out_path;
  std::uint64_t seed = 42;
  double tol = 1e-10;
  std::size_t grid = 0;  // 0: per-command default
  std::size_t samples = 0;
  std::size_t max_iter = 5000;
  std::string format = "json";
  bool force = false;
  // simulate
  std::vector<double> x0;
  std::size_t steps = 100;
  // sweep1d
  double a = 1.0;
  double b_min = 0.1;
  double b_max = 3.0;
  std::size_t count = 30;
  std::size_t burn_in = 1000;
  std::size_t record = 128;
  // wangjiang
  std::size_t pairs = 20;
  double t_end = 3.0;
};

/// Input the user can fix: bad model file, bad flag value.
struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Output {
 public:
  Output(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  void primary(const std::string& text) const {
    if (cfg_.out_path.empty() || cfg_.out_path == "-") {
      out_ << text;
    } else {
      write_file(cfg_.out_path, text);
    }
  }

  /// JSON sidecar next to a CSV output; skipped when writing to stdout.
  void sidecar(const json& meta) const {
    if (cfg_.out_path.empty() || cfg_.out_path == "-") return;
    write_file(cfg_.out_path + ".json", meta.dump(2) + "\n");
  }

 private:
  static void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw BadInput("cannot write " + path);
    f << text;
  }

  const RunConfig& cfg_;
  std::ostream& out_;
};

std::string csv_row(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line + "\n";
}

json run_echo(const RunConfig& cfg, const std::string& command) {
  json j;
  j["command"] = command;
  j["seed"] = cfg.seed;
  if (!cfg.model_path.empty()) j["model_file"] = cfg.model_path;
  return j;
}

LoadedModel load(const RunConfig& cfg) {
  if (cfg.model_path.empty()) throw BadInput("--model is required");
  return load_model(cfg.model_path);
}

// --grid and --samples belong to the criteria only under `check`; for
// `simplex` they size the surface and the residual.
CheckOptions check_options(const RunConfig& cfg, bool own_flags) {
  CheckOptions opts;
  if (own_flags && cfg.grid) opts.grid.resolution = cfg.grid;
  if (own_flags && cfg.samples) opts.sampling.samples = cfg.samples;
  opts.sampling.seed = cfg.seed;
  return opts;
}

int cmd_check(const RunConfig& cfg, const Output& io) {
  const LoadedModel lm = load(cfg);
  CriteriaReport report = check_all(*lm.model, check_options(cfg, true));
  report.model = lm.name;
  report.seed = cfg.seed;
  if (cfg.format == "csv") {
    std::string text = csv_row({"id", "verdict", "worst", "samples", "seed"});
    for (const auto& r : report.records) {
      text += csv_row({r.id, to_string(r.verdict), format_number(r.worst),
                       std::to_string(r.samples), std::to_string(cfg.seed)});
    }
    io.primary(text);
  } else {
    json j = report.to_json();
    j["overall"] = to_string(report.overall());
    j["run"] = run_echo(cfg, "check");
    io.primary(j.dump(2) + "\n");
  }
  return report.exit_code();
}

int cmd_simplex(const RunConfig& cfg, const Output& io, std::ostream& err) {
  const LoadedModel lm = load(cfg);
  const CompetitionModel& model = *lm.model;
  const std::size_t n = model.dimension();

  json meta = run_echo(cfg, "simplex");
  meta["model"] = lm.name;
  meta["family"] = model.family();
  meta["tol"] = cfg.tol;

  if (!cfg.force) {
    const CriteriaReport report = check_all(model, check_options(cfg, false));
    if (report.exit_code() != kExitPass) {
      err << "criteria report is " << to_string(report.overall())
          << "; run `check` for details or pass --force\n";
      return report.exit_code();
    }
  }

  if (n >= 4) {
    // No surface for n >= 4: iterate a cloud and test that it is unordered.
    Rng rng(cfg.seed);
    const std::size_t seeds = cfg.samples ? cfg.samples : 10000;
    const auto cloud = compute_point_cloud(model, seeds, cfg.max_iter, rng);
    const UnorderedResult un = unordered_check_cloud(cloud);
    std::vector<std::string> head;
    for (std::size_t i = 1; i <= n; ++i) head.push_back("x_" + std::to_string(i));
    std::string text = csv_row(head);
    for (const auto& x : cloud) {
      std::vector<std::string> row;
      for (Eigen::Index i = 0; i < x.size(); ++i) row.push_back(format_number(x[i]));
      text += csv_row(row);
    }
    meta["mode"] = "point_cloud";
    meta["seeds"] = seeds;
    meta["steps"] = cfg.max_iter;
    meta["unordered"] = {{"pass", un.pass}, {"pair", {un.first, un.second}}};
    io.primary(text);
    io.sidecar(meta);
    return un.pass ? kExitPass : kExitFail;
  }

  SimplexOptions opts;
  opts.m = cfg.grid;
  opts.tol = cfg.tol;
  opts.max_iter = cfg.max_iter;
  std::optional<RadialSurface> surface;
  try {
    surface = compute_carrying_simplex(model, opts);
  } catch (const SurfaceError& e) {
    err << "surface iteration failed: " << e.what() << "\n";
    return kExitNoConvergence;
  }
  const RadialSurface& s = *surface;

  std::vector<std::string> head;
  for (std::size_t i = 1; i <= n; ++i) head.push_back("d_" + std::to_string(i));
  head.push_back("r");
  for (std::size_t i = 1; i <= n; ++i) head.push_back("x_" + std::to_string(i));
  std::string text = csv_row(head);
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    const Vector d = s.grid.direction(k);
    const Vector x = s.node_point(k);
    std::vector<std::string> row;
    for (Eigen::Index i = 0; i < d.size(); ++i) row.push_back(format_number(d[i]));
    row.push_back(format_number(s.radii[k]));
    for (Eigen::Index i = 0; i < x.size(); ++i) row.push_back(format_number(x[i]));
    text += csv_row(row);
  }

  VerifyOptions vopts;
  vopts.seed = cfg.seed;
  if (cfg.samples) vopts.residual_samples = cfg.samples;
  const VerificationReport ver = verify_surface(s, model, vopts);
  meta["mode"] = "surface";
  meta["m"] = s.grid.resolution();
  meta["max_iter"] = cfg.max_iter;
  meta["iterations"] = s.iterations;
  meta["final_delta"] = s.final_delta;
  meta["converged"] = s.converged;
  meta["monotone_violations"] = s.monotone_violations;
  meta["verification"] = ver.to_json();
  meta["verification_pass"] = ver.pass(cfg.tol);
  io.primary(text);
  io.sidecar(meta);
  if (!s.converged) {
    err << "no convergence after " << s.iterations << " iterations (last change "
        << s.final_delta << "); surface written as best effort\n";
    return kExitNoConvergence;
  }
  return ver.pass(cfg.tol) ? kExitPass : kExitFail;
}

int cmd_simulate(const RunConfig& cfg, const Output& io) {
  const LoadedModel lm = load(cfg);
  const std::size_t n = lm.model->dimension();
  if (cfg.x0.size() != n) {
    throw BadInput("--x0 needs " + std::to_string(n) + " values");
  }
  Vector x0v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) x0v[static_cast<Eigen::Index>(i)] = cfg.x0[i];
  StateVector x0(x0v);  // throws DomainError outside K

  const bool ode = lm.system.has_value();
  std::vector<double> times;
  std::vector<Vector> states;
  if (ode) {
    const auto& pm = static_cast<const PoincareModel&>(*lm.model);
    Trajectory tr = integrate(*lm.system, x0, 0.0, double(cfg.steps), pm.config());
    times = std::move(tr.times);
    states = std::move(tr.states);
  } else {
    StateVector x = x0;
    times.push_back(0.0);
    states.push_back(x.vec());
    for (std::size_t k = 1; k <= cfg.steps; ++k) {
      x = eval_map(*lm.model, x);
      times.push_back(double(k));
      states.push_back(x.vec());
    }
  }

  const std::string var = ode ? "u_" : "x_";
  if (cfg.format == "json") {
    json j = run_echo(cfg, "simulate");
    j["index"] = ode ? "t" : "k";
    j["times"] = times;
    j["states"] = json::array();
    for (const auto& s : states) j["states"].push_back(to_json_array(s));
    io.primary(j.dump(2) + "\n");
    return kExitPass;
  }
  std::vector<std::string> head{ode ? "t" : "k"};
  for (std::size_t i = 1; i <= n; ++i) head.push_back(var + std::to_string(i));
  std::string text = csv_row(head);
  for (std::size_t k = 0; k < states.size(); ++k) {
    std::vector<std::string> row{ode ? format_number(times[k]) : std::to_string(k)};
    for (Eigen::Index i = 0; i < states[k].size(); ++i) row.push_back(format_number(states[k][i]));
    text += csv_row(row);
  }
  io.primary(text);
  json meta = run_echo(cfg, "simulate");
  meta["steps"] = cfg.steps;
  io.sidecar(meta);
  return kExitPass;
}

int cmd_sweep1d(const RunConfig& cfg, const Output& io) {
  const auto rows = sweep_1d(cfg.a, cfg.b_min, cfg.b_max, cfg.count, cfg.burn_in, cfg.record);
  if (cfg.format == "json") {
    json j = run_echo(cfg, "sweep1d");
    j["a"] = cfg.a;
    j["rows"] = json::array();
    for (const auto& r : rows) {
      j["rows"].push_back({{"b", r.b},
                           {"class", r.cls},
                           {"period", r.period},
                           {"final_distance", r.final_distance},
                           {"points", r.points}});
    }
    io.primary(j.dump(2) + "\n");
    return kExitPass;
  }
  std::string text = "b,class,points\n";
  for (const auto& r : rows) {
    std::vector<std::string> row{format_number(r.b), r.cls};
    for (double p : r.points) row.push_back(format_number(p));
    text += csv_row(row);
  }
  io.primary(text);
  json meta = run_echo(cfg, "sweep1d");
  meta["a"] = cfg.a;
  meta["burn_in"] = cfg.burn_in;
  meta["record"] = cfg.record;
  io.sidecar(meta);
  return kExitPass;
}

int cmd_wangjiang(const RunConfig& cfg, const Output& io, std::ostream& err) {
  const LoadedModel lm = load(cfg);
  if (!lm.system) throw BadInput("wangjiang needs a periodic_lv model");
  const PeriodicSystem& sys = *lm.system;
  const auto& pm = static_cast<const PoincareModel&>(*lm.model);

  json j = run_echo(cfg, "wangjiang");
  for (const auto& rec : check_A_conditions(sys)) {
    if (rec.id == "A1" && rec.verdict == Verdict::kFail) {
      j["refused"] = true;
      j["A1"] = rec.to_json();
      io.primary(j.dump(2) + "\n");
      err << "system is not competitive: " << rec.detail << "\n";
      return kExitFail;
    }
  }

  const std::size_t n = sys.dimension();
  Rng rng(cfg.seed);
  double min_slope = std::numeric_limits<double>::infinity();
  Verdict overall = Verdict::kPass;
  j["pairs"] = json::array();
  for (std::size_t p = 0; p < cfg.pairs; ++p) {
    Vector u(static_cast<Eigen::Index>(n)), v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      u[i] = rng.uniform(0.05, 1.0);
      v[i] = u[i] * (1.0 + rng.uniform(0.1, 1.0));
    }
    const WangJiangResult r =
        wang_jiang_check(sys, StateVector(u), StateVector(v), 0.0, cfg.t_end, pm.config());
    min_slope = std::min(min_slope, r.min_slope);
    if (r.verdict == Verdict::kFail) {
      overall = Verdict::kFail;
    } else if (r.verdict == Verdict::kInconclusive && overall == Verdict::kPass) {
      overall = Verdict::kInconclusive;
    }
    j["pairs"].push_back({{"u0", to_json_array(u)},
                          {"v0", to_json_array(v)},
                          {"verdict", to_string(r.verdict)},
                          {"min_slope", r.min_slope},
                          {"checked_until", r.checked_until},
                          {"ordering_broke", r.ordering_broke}});
  }
  j["verdict"] = to_string(overall);
  j["min_slope"] = cfg.pairs ? json(min_slope) : json(nullptr);
  j["t_end"] = cfg.t_end;
  io.primary(j.dump(2) + "\n");
  return overall == Verdict::kPass ? kExitPass
                                   : overall == Verdict::kFail ? kExitFail : kExitInconclusive;
}

void common_flags(CLI::App* sub, RunConfig& cfg, bool model) {
  if (model) sub->add_option("--model", cfg.model_path, "model description (JSON)")->required();
  sub->add_option("--out", cfg.out_path, "output file (default: stdout)");
  sub->add_option("--seed", cfg.seed, "seed of the single random generator")->capture_default_str();
  sub->add_option("--format", cfg.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Carrying simplex toolkit for competitive maps", "csimplex"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "run the criteria report on a model");
  common_flags(check, cfg, true);
  check->add_option("--grid", cfg.grid, "grid resolution for the order-interval scans")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  check->add_option("--samples", cfg.samples, "random samples per sampled condition");

  auto* simplex = app.add_subcommand("simplex", "compute and verify the carrying simplex");
  common_flags(simplex, cfg, true);
  simplex->add_option("--grid", cfg.grid, "simplex grid resolution m (n <= 3)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  simplex->add_option("--tol", cfg.tol, "stop when the largest radius change is below tol")
      ->check(CLI::PositiveNumber);
  simplex->add_option("--max-iter", cfg.max_iter, "iteration cap (cloud steps for n >= 4)");
  simplex->add_option("--samples", cfg.samples, "residual samples (cloud seeds for n >= 4)");
  simplex->add_flag("--force", cfg.force, "skip the criteria pre-check");

  auto* simulate = app.add_subcommand("simulate", "iterate the map or integrate the ODE");
  common_flags(simulate, cfg, true);
  simulate->add_option("--x0", cfg.x0, "initial state")->delimiter(',')->required();
  simulate->add_option("--steps", cfg.steps, "map iterations or ODE periods");

  auto* sweep = app.add_subcommand("sweep1d", "orbit diagram of x exp(b - a x)");
  common_flags(sweep, cfg, false);
  sweep->add_option("--a", cfg.a)->check(CLI::PositiveNumber);
  sweep->add_option("--b-min", cfg.b_min)->check(CLI::PositiveNumber);
  sweep->add_option("--b-max", cfg.b_max)->check(CLI::PositiveNumber);
  sweep->add_option("--count", cfg.count);
  sweep->add_option("--burn-in", cfg.burn_in);
  sweep->add_option("--record", cfg.record);

  auto* wj = app.add_subcommand("wangjiang", "ratio monotonicity of ordered ODE solutions");
  common_flags(wj, cfg, true);
  wj->add_option("--pairs", cfg.pairs, "number of random ordered start pairs");
  wj->add_option("--t-end", cfg.t_end, "integration horizon")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitBadInput;
  }

  // CSV is the natural format for surfaces, trajectories and sweeps.
  const bool format_given = app.get_subcommands().front()->count("--format") > 0;
  if (!format_given && !check->parsed() && !wj->parsed()) cfg.format = "csv";

  const Output io(cfg, out);
  try {
    if (check->parsed()) return cmd_check(cfg, io);
    if (simplex->parsed()) return cmd_simplex(cfg, io, err);
    if (simulate->parsed()) return cmd_simulate(cfg, io);
    if (sweep->parsed()) return cmd_sweep1d(cfg, io);
    return cmd_wangjiang(cfg, io, err);
  } catch (const ModelFileError& e) {
    err << "bad model file: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const BadInput& e) {
    err << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const NoAxialFixedPoint& e) {
    err << e.what() << "\n";
    return kExitFail;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace csimplex::cli
