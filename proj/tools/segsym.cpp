#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "segsym/error.hpp"
#include "segsym/experiment.hpp"
#include "segsym/io.hpp"
#include "segsym/kernels.hpp"

using namespace segsym;

namespace {

// Flag values are kept as text and handed to the scenario parser, so the CLI
// and `run config.json` share one validation path.
struct Sub {
  Sub(CLI::App* a, std::string s) : app(a), scenario(std::move(s)) {
    app->add_option("--config", config, "JSON params (flat object or one with a \"params\" member); flags override");
  }

  CLI::App* app;
  std::string scenario;
  std::string config;
  std::map<std::string, std::string> values;  // param key -> text

  void param(const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option(flag, values[key], help);
  }
};

void common_solver_flags(Sub& s) {
  s.param("--tol", "tol", "residual tolerance");
  s.param("--max-iter", "max_iter", "iteration cap");
  s.param("--damping", "damping", "step damping in (0, 1]");
  s.param("--relaxation", "relaxation", "SOR factor in (0, 2); 0 picks the optimum");
  s.param("--seed", "seed", "random seed");
}

nlohmann::json config_params(const std::string& path) {
  const std::string text = io::read_text(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    parse_experiment(text);  // rethrows with line and column
  }
  if (!j.is_object()) fail(ErrorKind::ConfigInvalid, path + ": config must be a JSON object");
  if (j.contains("params")) {
    if (!j["params"].is_object()) fail(ErrorKind::ConfigInvalid, path + ": params must be an object");
    return j["params"];
  }
  return j;
}

Experiment to_experiment(const Sub& s, const std::vector<std::string>& outputs) {
  Experiment e;
  e.name = s.scenario;
  e.scenario = s.scenario;
  if (!s.config.empty()) e.params = config_params(s.config);
  for (const auto& [k, v] : s.values)
    if (!v.empty()) e.params[k] = v;
  e.outputs = outputs;
  return e;
}

int execute(const Sub& s, const std::vector<std::string>& outputs) {
  Experiment e;
  e.name = s.scenario;
  try {
    e = to_experiment(s, outputs);
    const Outcome o = run_experiment(e, std::cout);
    std::cout << o.result_line(e.name) << std::endl;
    return o.exit_code;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    std::cout << "RESULT name=" << e.name << " status=fail error=" << to_string(err.kind()) << std::endl;
    return exit_code_for(err.kind());
  }
}

}  // namespace

int main(int argc, char** argv) {
  kernels::configure_threads();
  CLI::App app{"segsym: numerics for the segregation system  Delta u = u v^2, Delta v = v u^2"};
  app.require_subcommand(1);

  Sub profile{app.add_subcommand("profile", "solve the one-dimensional profile"), "profile"};
  std::string profile_out = "profile.csv";
  profile.param("--half-length", "half_length", "domain [-L, L]");
  profile.param("--spacing", "h", "grid spacing");
  common_solver_flags(profile);
  profile.app->add_option("--out", profile_out, "output csv (x,u,v)");

  Sub solve{app.add_subcommand("solve2d", "solve the planar system on a square"), "solve2d"};
  std::string out_u = "u.csv", out_v = "v.csv";
  solve.param("--half-width", "half_width", "square [-a, a]^2");
  solve.param("--spacing", "h", "grid spacing, e.g. 1/128");
  solve.param("--kappa", "kappa", "interaction strength");
  solve.param("--bc", "bc", "linear-pair | profile-extension | custom-csv");
  solve.param("--direction", "direction", "x,y direction of the boundary pair");
  solve.param("--in-u", "in_u", "u field csv for custom-csv");
  solve.param("--in-v", "in_v", "v field csv for custom-csv");
  common_solver_flags(solve);
  solve.app->add_option("--out-u", out_u, "u field output");
  solve.app->add_option("--out-v", out_v, "v field output");

  Sub diag{app.add_subcommand("diag", "evaluate a diagnostic on stored fields"), "diag"};
  std::string diag_out = "trace.csv";
  diag.param("--functional", "functional", "N|H|D|J|deficit|flatness|cone|bounds");
  diag.param("--in-u", "in_u", "u field csv");
  diag.param("--in-v", "in_v", "v field csv");
  diag.param("--kappa", "kappa", "interaction strength of the fields");
  diag.param("--center", "center", "x,y base point");
  diag.param("--radii", "radii", "r1:r2:step or a comma list");
  diag.param("--direction", "direction", "x,y axis for cone");
  diag.param("--aperture", "aperture", "cone aperture in [0, 1]");
  diag.param("--margin", "margin", "interior margin for the gradient bound");
  common_solver_flags(diag);
  diag.app->add_option("--out", diag_out, "output csv");

  Sub smin{app.add_subcommand("spheremin", "constrained minimisation on the sphere"), "spheremin"};
  std::string smin_out = "report.json";
  smin.param("--kappa", "kappa", "interaction strength");
  smin.param("--lambda", "lambda", "mass ratio lambda_kappa");
  smin.param("--cells", "cells", "angular cells");
  smin.param("--n", "n", "ambient dimension (2 or 3)");
  common_solver_flags(smin);
  smin.app->add_option("--out", smin_out, "report json");

  Sub sweep{app.add_subcommand("spheresweep", "spheremin over several kappa"), "spheresweep"};
  std::string sweep_out = "sweep.csv";
  sweep.param("--kappas", "kappas", "comma list, e.g. 1e2,1e3,1e4");
  sweep.param("--lambda", "lambda", "mass ratio lambda_kappa");
  sweep.param("--cells", "cells", "angular cells");
  sweep.param("--n", "n", "ambient dimension (2 or 3)");
  common_solver_flags(sweep);
  sweep.app->add_option("--out", sweep_out, "sweep csv");

  Sub blow{app.add_subcommand("blowdown", "blow-down direction convergence"), "blowdown"};
  std::string blow_out = "records.csv";
  blow.param("--in-u", "in_u", "u field csv");
  blow.param("--in-v", "in_v", "v field csv");
  blow.param("--radii", "radii", "comma list of R");
  blow.param("--target-h", "target_h", "spacing of the unit target grid");
  blow.app->add_option("--out", blow_out, "records csv");

  std::string config;
  CLI::App* run = app.add_subcommand("run", "run an experiment config (JSON)");
  run->add_option("config", config, "config path")->required();

  CLI::App* list = app.add_subcommand("list-presets", "list scenario presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*list) {
    std::cout << list_presets();
    return 0;
  }
  if (*run) {
    std::string name = config;
    try {
      const Experiment e = load_experiment(config);
      name = e.name;
      const Outcome o = run_experiment(e, std::cout);
      std::cout << o.result_line(name) << std::endl;
      return o.exit_code;
    } catch (const Error& err) {
      std::cerr << "error: " << err.what() << "\n";
      std::cout << "RESULT name=" << name << " status=fail error=" << to_string(err.kind()) << std::endl;
      return exit_code_for(err.kind());
    }
  }
  if (*profile.app) return execute(profile, {profile_out});
  if (*solve.app) return execute(solve, {out_u, out_v});
  if (*diag.app) return execute(diag, {diag_out});
  if (*smin.app) return execute(smin, {smin_out});
  if (*sweep.app) return execute(sweep, {sweep_out});
  if (*blow.app) return execute(blow, {blow_out});
  return 1;
}
