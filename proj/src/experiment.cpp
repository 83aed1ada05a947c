#include "segsym/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "segsym/acceptance.hpp"
#include "segsym/blowdown.hpp"
#include "segsym/diagnostics.hpp"
#include "segsym/elliptic2d.hpp"
#include "segsym/io.hpp"
#include "segsym/profile1d.hpp"
#include "segsym/sphere.hpp"
#include "segsym/stats.hpp"

namespace segsym {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad_config(const std::string& what) { fail(ErrorKind::ConfigInvalid, what); }

std::string trim(std::string s) {
  const auto a = s.find_first_not_of(" \t");
  const auto b = s.find_last_not_of(" \t");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

double to_double(const std::string& s, const std::string& field) {
  // "1/128" style fractions are accepted for grid spacings
  if (const auto slash = s.find('/'); slash != std::string::npos && slash > 0)
    return to_double(trim(s.substr(0, slash)), field) / to_double(trim(s.substr(slash + 1)), field);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    bad_config(field + ": '" + s + "' is not a number");
  }
  if (used != s.size()) bad_config(field + ": '" + s + "' is not a number");
  return v;
}

// Typed access to a flat params object; unknown keys are rejected by finish().
class Params {
 public:
  Params(const json& j, std::string scenario) : j_(j), scenario_(std::move(scenario)) {
    if (!j_.is_object()) bad_config("params must be an object");
  }

  bool has(const std::string& key) {
    used_.insert(key);
    return j_.contains(key);
  }

  double number(const std::string& key, double fallback) { return has(key) ? get_number(key) : fallback; }

  double number(const std::string& key) {
    if (!has(key)) bad_config("missing parameter '" + key + "' for scenario " + scenario_);
    return get_number(key);
  }

  long integer(const std::string& key, long fallback) {
    if (!has(key)) return fallback;
    const double v = get_number(key);
    if (v != std::floor(v)) bad_config(key + " must be an integer");
    return static_cast<long>(v);
  }

  bool flag(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    if (!j_[key].is_boolean()) bad_config(key + " must be true or false");
    return j_[key].get<bool>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    if (!j_[key].is_string()) bad_config(key + " must be a string");
    return j_[key].get<std::string>();
  }

  std::string text(const std::string& key) {
    if (!has(key)) bad_config("missing parameter '" + key + "' for scenario " + scenario_);
    return text(key, "");
  }

  std::vector<double> list(const std::string& key, bool radii) {
    if (!has(key)) bad_config("missing parameter '" + key + "' for scenario " + scenario_);
    const json& v = j_[key];
    if (v.is_string()) return radii ? parse_radii(v.get<std::string>()) : parse_list(v.get<std::string>());
    if (!v.is_array()) bad_config(key + " must be a list or a string");
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) bad_config(key + " entries must be numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  Point point(const std::string& key, Point fallback) {
    if (!has(key)) return fallback;
    std::vector<double> v = list(key, false);
    if (v.size() != 2) bad_config(key + " needs two coordinates");
    return {v[0], v[1]};
  }

  void finish() const {
    for (const auto& [k, _] : j_.items())
      if (!used_.count(k)) bad_config("unknown parameter '" + k + "' for scenario " + scenario_);
  }

 private:
  double get_number(const std::string& key) {
    const json& v = j_[key];
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return to_double(trim(v.get<std::string>()), key);
    bad_config(key + " must be a number");
  }

  const json& j_;
  std::string scenario_;
  std::set<std::string> used_;
};

SolveConfig solve_config(Params& p) {
  SolveConfig cfg;
  cfg.tol = p.number("tol", cfg.tol);
  cfg.max_iter = p.integer("max_iter", cfg.max_iter);
  cfg.damping = p.number("damping", cfg.damping);
  cfg.relaxation = p.number("relaxation", cfg.relaxation);
  cfg.deterministic = p.flag("deterministic", cfg.deterministic);
  const long seed = p.integer("seed", static_cast<long>(cfg.seed));
  if (seed < 0) bad_config("seed must be nonnegative");
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.boundary_floor = p.number("boundary_floor", cfg.boundary_floor);
  try {
    cfg.validate();
  } catch (const Error& e) {
    bad_config(e.what());
  }
  return cfg;
}

void check(bool cond, const std::string& what) {
  if (!cond) bad_config(what);
}

fs::path input_file(Params& p, const std::string& key) {
  const fs::path path = p.text(key);
  if (!fs::exists(path)) fail(ErrorKind::InputMissing, key + ": no such file " + path.string());
  return path;
}

const std::string& output(const Experiment& e, std::size_t k, const std::string& what) {
  if (e.outputs.size() <= k) bad_config("outputs[" + std::to_string(k) + "] (" + what + ") is missing");
  return e.outputs[k];
}

std::string num(double v) { return io::fmt17(v); }

std::string meta_line(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string s = "# meta";
  for (const auto& [k, v] : kv) s += " " + k + "=" + v;
  return s + "\n";
}

Point unit(Point e) {
  const double n = norm(e);
  check(n > 0.0, "direction must be nonzero");
  return (1.0 / n) * e;
}

Outcome run_profile(const Experiment& e, Params& p) {
  const double L = p.number("half_length", 20.0);
  const double h = p.number("h", 0.05);
  const SolveConfig cfg = solve_config(p);
  p.finish();
  check(L >= 10.0, "half_length must be at least 10");
  check(h > 0.0 && h <= 0.1, "h must lie in (0, 0.1]");
  const fs::path out = output(e, 0, "profile csv");

  const Profile1D prof = solve_profile(L, h, cfg);
  const AsymptoticSlopes s = asymptotic_slope(prof);
  const double x0 = crossing_point(prof);
  std::string csv = meta_line({{"half_length", num(L)}, {"h", num(h)}, {"residual", num(prof.residual)}});
  csv += "x,u,v\n";
  for (std::size_t i = 0; i < prof.size(); ++i) csv += num(prof.x(i)) + "," + num(prof.u[i]) + "," + num(prof.v[i]) + "\n";
  io::write_atomic(out, csv);
  Outcome o;
  o.summary = {{"residual", num(prof.residual)}, {"iterations", std::to_string(prof.iterations)},
               {"crossing", num(x0)},           {"slope_plus", num(s.slope_plus)},
               {"slope_minus", num(s.slope_minus)}};
  return o;
}

Outcome run_solve2d(const Experiment& e, Params& p) {
  const double hw = p.number("half_width", 1.0);
  const double h = p.number("h", 1.0 / 128);
  const double kappa = p.number("kappa");
  const std::string bc = p.text("bc", "linear-pair");
  const Point dir = p.point("direction", {1.0, 0.0});
  const SolveConfig cfg = solve_config(p);
  check(kappa >= 0.0, "kappa must be >= 0");
  check(hw > 0.0 && h > 0.0 && h < hw, "need 0 < h < half_width");
  check(bc == "linear-pair" || bc == "profile-extension" || bc == "custom-csv",
        "bc must be linear-pair, profile-extension or custom-csv");
  fs::path in_u, in_v;
  if (bc == "custom-csv") {
    in_u = input_file(p, "in_u");
    in_v = input_file(p, "in_v");
  }
  p.finish();
  const Point ed = unit(dir);
  const fs::path out_u = output(e, 0, "u field"), out_v = output(e, 1, "v field");

  SolutionPair sol;
  if (bc == "linear-pair") {
    sol = solve_system(Grid2D::centered_square(hw, h), linear_pair_u(ed), linear_pair_v(ed), kappa, cfg);
  } else if (bc == "profile-extension") {
    const Profile1D prof = solve_profile(std::max(10.0, std::ceil(hw * std::sqrt(2.0)) + 10.0), 0.05, cfg);
    sol = solve_system(Grid2D::centered_square(hw, h),
                       [&](Point x) { return profile_at(prof, prof.u, dot(x, ed)); },
                       [&](Point x) { return profile_at(prof, prof.v, dot(x, ed)); }, kappa, cfg);
  } else {
    const Field u = io::read_field(in_u), v = io::read_field(in_v);
    if (!u.grid.same_as(v.grid)) fail(ErrorKind::InputMissing, "in_u and in_v live on different grids");
    sol = solve_system(u.grid, from_field(u), from_field(v), kappa, cfg);
  }
  io::write_field(out_u, sol.u);
  io::write_field(out_v, sol.v);
  Outcome o;
  o.summary = {{"kappa", num(kappa)},
               {"residual", num(sol.residual)},
               {"tol_applied", num(sol.tol_applied)},
               {"sweeps", std::to_string(sol.sweeps)},
               {"energy", num(discrete_energy(sol.u, sol.v, kappa))}};
  return o;
}

Outcome run_diag(const Experiment& e, Params& p) {
  const std::string fn = p.text("functional");
  const fs::path in_u = input_file(p, "in_u"), in_v = input_file(p, "in_v");
  const double kappa = p.number("kappa", 0.0);
  const Point center = p.point("center", {});
  const std::vector<double> radii = p.list("radii", true);
  const Point dir = p.point("direction", {1.0, 0.0});
  const double aperture = p.number("aperture", 0.75);
  const double margin = p.number("margin", 0.0);
  const SolveConfig cfg = solve_config(p);
  p.finish();
  static const std::set<std::string> known{"N", "H", "D", "J", "deficit", "flatness", "cone", "bounds"};
  check(known.count(fn) > 0, "functional must be one of N, H, D, J, deficit, flatness, cone, bounds");
  check(kappa >= 0.0, "kappa must be >= 0");
  check(!radii.empty(), "radii must not be empty");
  const fs::path out = output(e, 0, "trace csv");

  const Field u = io::read_field(in_u), v = io::read_field(in_v);
  if (!u.grid.same_as(v.grid)) fail(ErrorKind::InputMissing, "in_u and in_v live on different grids");
  const PairFields pf(u, v, kappa);
  Outcome o;
  std::vector<std::pair<std::string, std::string>> meta{{"functional", fn}, {"kappa", num(kappa)}};
  std::string body;

  if (fn == "N" || fn == "H" || fn == "D" || fn == "J") {
    const Functional f = fn == "N" ? Functional::N : fn == "H" ? Functional::H : fn == "D" ? Functional::D : Functional::J;
    MonotonicityTrace t = trace(pf, f, center, radii);
    o.summary.emplace_back("min_pairwise_slope", num(min_pairwise_slope(t)));
    if (f == Functional::J) {
      const AcfFit fit = acf_correction_constant(t);
      meta.emplace_back("C_fit", fit.finite ? num(fit.c_fit) : "inf");
      o.summary.emplace_back("C_fit", fit.finite ? num(fit.c_fit) : "inf");
    }
    body = "r,value\n";
    for (std::size_t k = 0; k < t.radii.size(); ++k) body += num(t.radii[k]) + "," + num(t.values[k]) + "\n";
  } else if (fn == "deficit") {
    body = "r,deficit,energy_w,energy_phi,sup_grad_phi\n";
    std::vector<double> ds;
    for (double r : radii) {
      const HarmonicDeficit d = harmonic_deficit(u, v, center, r, cfg);
      ds.push_back(d.deficit);
      body += num(r) + "," + num(d.deficit) + "," + num(d.energy_w) + "," + num(d.energy_phi) + "," +
              num(d.sup_grad_phi) + "\n";
    }
    if (radii.size() >= 2 && std::all_of(ds.begin(), ds.end(), [](double d) { return d > 0.0; }))
      o.summary.emplace_back("deficit_exponent", num(fit_loglog(radii, ds).slope));
  } else if (fn == "flatness") {
    body = "r,e_x,e_y,magnitude,h_flat\n";
    for (double r : radii) {
      const Flatness f = flatness_direction(u, v, center, r);
      body += num(r) + "," + num(f.e.x) + "," + num(f.e.y) + "," + num(f.magnitude) + "," + num(f.h_flat) + "\n";
    }
  } else if (fn == "cone") {
    const ConeCheck c = cone_monotonicity(pf, unit(dir), aperture);
    meta.emplace_back("aperture", num(aperture));
    body = "aperture,violation,transverse_sup,directions\n" + num(aperture) + "," + num(c.violation) + "," +
           num(c.transverse_sup) + "," + std::to_string(c.directions) + "\n";
    o.summary = {{"violation", num(c.violation)}, {"transverse_sup", num(c.transverse_sup)}};
  } else {
    const ProductBounds b = product_bounds(pf, center, radii);
    const double grad = gradient_bounds(pf, std::max(margin, 2.0 * u.grid.h));
    const std::string expo = b.mass_exponent ? num(*b.mass_exponent) : "undefined";
    meta.insert(meta.end(), {{"sup_uv", num(b.sup_uv)}, {"sup_mixed", num(b.sup_mixed)},
                             {"mass_exponent", expo}, {"gradient_sup", num(grad)}});
    o.summary = {{"sup_uv", num(b.sup_uv)}, {"sup_mixed", num(b.sup_mixed)}, {"mass_exponent", expo},
                 {"gradient_sup", num(grad)}};
    body = "r,mass\n";
    for (std::size_t k = 0; k < b.windows.size(); ++k) body += num(b.windows[k]) + "," + num(b.masses[k]) + "\n";
  }
  meta.emplace_back("center", num(center.x) + "," + num(center.y));
  io::write_atomic(out, meta_line(meta) + body);
  return o;
}

json report_json(const MinimizerReport& r) {
  return {{"n", r.n},
          {"kappa", r.kappa},
          {"lambda_kappa", r.lambda_kappa},
          {"value", r.value},
          {"x_kappa", r.x_kappa},
          {"y_kappa", r.y_kappa},
          {"mult1", r.mult1},
          {"mult2", r.mult2},
          {"seg", r.seg},
          {"xi_kappa", r.xi_kappa},
          {"iterations", r.iterations},
          {"alpha", r.pair.alpha},
          {"ubar", r.pair.ubar},
          {"vbar", r.pair.vbar}};
}

void sphere_params(Params& p, double& lambda, int& cells, int& n) {
  lambda = p.number("lambda", 1.0);
  cells = static_cast<int>(p.integer("cells", 512));
  n = static_cast<int>(p.integer("n", 2));
  check(lambda > 0.0, "lambda must be positive");
  check(cells >= 8, "cells must be at least 8");
  check(n == 2 || n == 3, "n must be 2 or 3");
}

Outcome run_spheremin(const Experiment& e, Params& p) {
  const double kappa = p.number("kappa");
  double lambda;
  int cells, n;
  sphere_params(p, lambda, cells, n);
  const SolveConfig cfg = solve_config(p);
  p.finish();
  check(kappa >= 1.0, "kappa must be at least 1");
  const fs::path out = output(e, 0, "report json");
  const MinimizerReport r = minimize_spherical(kappa, lambda, cells, cfg, n);
  io::write_atomic(out, report_json(r).dump(2) + "\n");
  Outcome o;
  o.summary = {{"value", num(r.value)}, {"mult1", num(r.mult1)}, {"mult2", num(r.mult2)}, {"seg", num(r.seg)}};
  return o;
}

Outcome run_spheresweep(const Experiment& e, Params& p) {
  const std::vector<double> kappas = p.list("kappas", false);
  double lambda;
  int cells, n;
  sphere_params(p, lambda, cells, n);
  const SolveConfig cfg = solve_config(p);
  p.finish();
  check(kappas.size() >= 3, "kappas needs at least three values");
  for (double k : kappas) check(k >= 1.0, "every kappa must be at least 1");
  const fs::path out = output(e, 0, "sweep csv");
  const SweepFit fit = kappa_sweep(kappas, lambda, cells, cfg, n);
  std::string csv = meta_line({{"C", num(fit.C)},
                               {"exponent", num(fit.exponent)},
                               {"deficit_nonpositive", fit.deficit_nonpositive ? "1" : "0"}});
  csv += "kappa,value,mult1,mult2,seg\n";
  for (const auto& r : fit.reports)
    csv += num(r.kappa) + "," + num(r.value) + "," + num(r.mult1) + "," + num(r.mult2) + "," + num(r.seg) + "\n";
  io::write_atomic(out, csv);
  Outcome o;
  o.summary = {{"C", num(fit.C)}, {"exponent", num(fit.exponent)}};
  if (fit.deficit_nonpositive) o.summary.emplace_back("flag", "DeficitNonpositive");
  return o;
}

Outcome run_blowdown(const Experiment& e, Params& p) {
  const fs::path in_u = input_file(p, "in_u"), in_v = input_file(p, "in_v");
  const std::vector<double> radii = p.list("radii", true);
  const double target_h = p.number("target_h", 1.0 / 128);
  p.finish();
  check(radii.size() >= 3, "radii needs at least three values");
  check(target_h > 0.0 && target_h <= 0.25, "target_h must lie in (0, 0.25]");
  const fs::path out = output(e, 0, "records csv");
  const Field u = io::read_field(in_u), v = io::read_field(in_v);
  if (!u.grid.same_as(v.grid)) fail(ErrorKind::InputMissing, "in_u and in_v live on different grids");
  const DirectionConvergence dc = direction_convergence(u, v, radii, target_h);
  std::string csv = meta_line({{"cauchy_gap", num(dc.cauchy_gap)}}) + "R,L,e_x,e_y,flatness,deficit\n";
  for (const auto& r : dc.records)
    csv += num(r.R) + "," + num(r.L) + "," + num(r.e.x) + "," + num(r.e.y) + "," + num(r.flatness) + "," +
           num(r.deficit) + "\n";
  io::write_atomic(out, csv);
  Outcome o;
  o.summary = {{"cauchy_gap", num(dc.cauchy_gap)}, {"records", std::to_string(dc.records.size())}};
  return o;
}

Outcome run_accept(const Experiment& e, Params& p, std::ostream& log) {
  AcceptanceOptions opts;
  if (p.has("only"))
    for (double id : p.list("only", false)) opts.only.push_back(static_cast<int>(id));
  opts.cfg = solve_config(p);
  p.finish();
  for (int id : opts.only) check(id >= 1 && id <= 13, "only: criterion ids run from 1 to 13");
  opts.out_dir = e.outputs.empty() ? fs::path("accept_out") : fs::path(e.outputs[0]);
  const auto results = run_acceptance(opts, [&](const CriterionResult& r) { log << summary_line(r) << "\n" << std::flush; });
  Outcome o;
  int passed = 0;
  std::string failed;
  for (const auto& r : results) {
    if (r.pass) {
      ++passed;
    } else {
      failed += (failed.empty() ? "" : ",") + std::to_string(r.id);
    }
  }
  o.status = failed.empty() ? "pass" : "fail";
  o.exit_code = failed.empty() ? 0 : 4;
  o.summary = {{"passed", std::to_string(passed)}, {"total", std::to_string(results.size())}};
  if (!failed.empty()) o.summary.emplace_back("failed", failed);
  return o;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> list{
      {"accept", "run acceptance criteria 1-13 and write one csv per criterion", "whole proof chain",
       "[out_dir]"},
      {"blowdown", "rescale u(R.)/L(R) and track the best flat direction over R", "blow-down and asymptotic cone",
       "[records.csv]"},
      {"diag", "frequency, ACF, deficit, flatness, cone and segregation diagnostics", "monotonicity formulas",
       "[trace.csv]"},
      {"profile", "one-dimensional heteroclinic profile by Newton", "one-dimensional solution", "[profile.csv]"},
      {"solve2d", "red-black SOR solve of the planar system with kappa continuation", "planar elliptic system",
       "[u.csv, v.csv]"},
      {"spheremin", "constrained minimisation of gamma(x) + gamma(y) on the sphere",
       "constrained minimization on the sphere", "[report.json]"},
      {"spheresweep", "spheremin over several kappa with a fit of 2 - value", "constrained minimization on the sphere",
       "[sweep.csv]"}};
  return list;
}

std::string list_presets() {
  std::ostringstream s;
  s << "id           outputs          topic                                    description\n";
  for (const auto& p : presets()) {
    s << p.id << std::string(13 - std::min<std::size_t>(12, p.id.size()), ' ') << p.outputs
      << std::string(17 - std::min<std::size_t>(16, p.outputs.size()), ' ') << p.topic
      << std::string(41 - std::min<std::size_t>(40, p.topic.size()), ' ') << p.description << "\n";
  }
  return s.str();
}

Experiment parse_experiment(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < err.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    bad_config("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
  if (!j.is_object()) bad_config("config must be a JSON object");
  Experiment e;
  for (const auto& [k, v] : j.items()) {
    if (k == "name") {
      if (!v.is_string()) bad_config("name must be a string");
      e.name = v.get<std::string>();
    } else if (k == "scenario") {
      if (!v.is_string()) bad_config("scenario must be a string");
      e.scenario = v.get<std::string>();
    } else if (k == "params") {
      if (!v.is_object()) bad_config("params must be an object");
      e.params = v;
    } else if (k == "outputs") {
      if (!v.is_array()) bad_config("outputs must be a list of paths");
      for (const auto& x : v) {
        if (!x.is_string()) bad_config("outputs must be a list of paths");
        e.outputs.push_back(x.get<std::string>());
      }
    } else {
      bad_config("unknown config field '" + k + "'");
    }
  }
  if (e.scenario.empty()) bad_config("scenario is required");
  const auto& ps = presets();
  if (std::none_of(ps.begin(), ps.end(), [&](const Preset& p) { return p.id == e.scenario; }))
    bad_config("unknown scenario '" + e.scenario + "'");
  if (e.name.empty()) e.name = e.scenario;
  return e;
}

Experiment load_experiment(const fs::path& path) {
  if (!fs::exists(path)) fail(ErrorKind::InputMissing, "config not found: " + path.string());
  return parse_experiment(io::read_text(path));
}

std::string Outcome::result_line(const std::string& name) const {
  std::string s = "RESULT name=" + name + " status=" + status;
  for (const auto& [k, v] : summary) s += " " + k + "=" + v;
  return s;
}

Outcome run_experiment(const Experiment& exp, std::ostream& log) {
  Params p(exp.params, exp.scenario);
  if (exp.scenario == "profile") return run_profile(exp, p);
  if (exp.scenario == "solve2d") return run_solve2d(exp, p);
  if (exp.scenario == "diag") return run_diag(exp, p);
  if (exp.scenario == "spheremin") return run_spheremin(exp, p);
  if (exp.scenario == "spheresweep") return run_spheresweep(exp, p);
  if (exp.scenario == "blowdown") return run_blowdown(exp, p);
  if (exp.scenario == "accept") return run_accept(exp, p, log);
  bad_config("unknown scenario '" + exp.scenario + "'");
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InputMissing:
      return 2;
    case ErrorKind::NoConvergence:
    case ErrorKind::ZeroDenominator:
    case ErrorKind::NoSignChange:
    case ErrorKind::MultipleSignChanges:
      return 3;
    default:
      return 1;
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(item, "list"));
  }
  if (out.empty()) bad_config("empty list '" + text + "'");
  return out;
}

std::vector<double> parse_radii(const std::string& text) {
  if (text.find(':') == std::string::npos) {
    std::vector<double> out = parse_list(text);
    for (std::size_t k = 1; k < out.size(); ++k) check(out[k] > out[k - 1], "radii must increase");
    return out;
  }
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(trim(item));
  check(parts.size() == 3, "radii range must read a:b:step");
  const double a = to_double(parts[0], "radii"), b = to_double(parts[1], "radii"), step = to_double(parts[2], "radii");
  check(a > 0.0 && b >= a && step > 0.0, "radii range needs 0 < a <= b and step > 0");
  std::vector<double> out;
  for (long k = 0; a + k * step <= b + 1e-9 * step; ++k) out.push_back(a + k * step);
  return out;
}

}  // namespace segsym
