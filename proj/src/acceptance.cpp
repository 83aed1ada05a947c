#include "segsym/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "segsym/blowdown.hpp"
#include "segsym/diagnostics.hpp"
#include "segsym/elliptic2d.hpp"
#include "segsym/error.hpp"
#include "segsym/io.hpp"
#include "segsym/profile1d.hpp"
#include "segsym/sphere.hpp"
#include "segsym/stats.hpp"

namespace segsym {

namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

class Sheet {
 public:
  void le(const std::string& name, double value, double bound) { add(name, value, "<=", bound, value <= bound); }
  void ge(const std::string& name, double value, double bound) { add(name, value, ">=", bound, value >= bound); }
  void lt(const std::string& name, double value, double bound) { add(name, value, "<", bound, value < bound); }
  void eq(const std::string& name, double value, double target) { add(name, value, "==", target, value == target); }
  void flag(const std::string& name, bool ok) { add(name, ok ? 1.0 : 0.0, "==", 1.0, ok); }

  std::vector<Check> checks;

 private:
  void add(const std::string& name, double value, const char* rel, double bound, bool pass) {
    checks.push_back({name, value, rel, bound, pass && std::isfinite(value)});
  }
};

std::vector<double> arange(double a, double b, double step) {
  std::vector<double> out;
  for (int k = 0; a + k * step <= b + 1e-9 * step; ++k) out.push_back(a + k * step);
  return out;
}

std::string num(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

std::string fmt_point(Point p) {
  std::ostringstream s;
  s << "(" << p.x << "," << p.y << ")";
  return s.str();
}

// Heavy inputs shared between criteria, built on first use.
class Suite {
 public:
  explicit Suite(const SolveConfig& cfg) : cfg_(cfg) {}

  const SolutionPair& solved(double kappa) {
    auto& slot = solved_[kappa];
    if (!slot) {
      const Grid2D g = Grid2D::centered_square(1.0, 1.0 / 128);
      slot = std::make_unique<SolutionPair>(solve_system(g, linear_pair_u(), linear_pair_v(), kappa, cfg_));
    }
    return *slot;
  }

  const Profile1D& profile(double L) {
    auto& slot = profiles_[L];
    if (!slot) slot = std::make_unique<Profile1D>(solve_profile(L, 0.05, cfg_));
    return *slot;
  }

  const SolveConfig& cfg() const { return cfg_; }

 private:
  SolveConfig cfg_;
  std::map<double, std::unique_ptr<SolutionPair>> solved_;
  std::map<double, std::unique_ptr<Profile1D>> profiles_;
};

const std::vector<double> kSolvedKappas{1e2, 1e3};
const std::vector<Point> kBasePoints{{0.0, 0.0}, {0.0, 0.3}, {0.0, -0.3}};
const double kSolvedH = 1.0 / 128;

std::vector<double> solved_radii() { return arange(0.1, 0.45, 0.05); }

std::string tag(double kappa, Point x) {
  std::ostringstream s;
  s << "kappa=" << kappa << " x=" << fmt_point(x);
  return s.str();
}

void c01_profile(Suite& s, Sheet& out) {
  const Profile1D& p = s.profile(20.0);
  out.le("residual", p.residual, 1e-10);
  const double x0 = crossing_point(p);
  double sym = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double r = 2.0 * x0 - p.x(i);
    if (std::abs(r) > p.half_length) continue;
    sym = std::max(sym, std::abs(profile_at(p, p.u, r) - p.v[i]));
  }
  out.le("reflection sup|u(2x0-x)-v(x)|", sym, 1e-3);
  double du = 0.0, dv = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    du = std::max(du, p.u[i] - p.u[i + 1]);
    dv = std::max(dv, p.v[i + 1] - p.v[i]);
  }
  out.le("u decrease", du, 1e-10);
  out.le("v increase", dv, 1e-10);
  std::vector<double> xr, lr, xl, ll;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = p.x(i) - x0;
    const double uv = p.u[i] * p.v[i];
    if (!(uv > 0.0)) continue;
    if (d >= 1.0 && d <= 5.0) xr.push_back(d), lr.push_back(std::log(uv));
    if (-d >= 1.0 && -d <= 5.0) xl.push_back(-d), ll.push_back(std::log(uv));
  }
  out.lt("uv decay rate (x > x0)", fit_line(xr, lr).slope, 0.0);
  out.lt("uv decay rate (x < x0)", fit_line(xl, ll).slope, 0.0);
}

void c02_linear_pair(Suite& s, Sheet& out) {
  const double h = 1.0 / 256;
  const Grid2D g = Grid2D::centered_square(1.5, h);
  const Field u = Field::sample(g, linear_pair_u());
  const Field v = Field::sample(g, linear_pair_v());
  const PairFields pf(u, v, 0.0);
  for (double r : arange(0.5, 1.0, 0.1)) {
    const std::string at = " r=" + num(r);
    out.le("H rel err" + at, std::abs(almgren_H(pf, {}, r) / (kPi * r * r) - 1.0), 5 * h);
    out.le("N err" + at, std::abs(almgren_N(pf, {}, r) - 1.0), 5 * h);
    out.le("J rel err" + at, std::abs(acf_J(pf, {}, r) / (kPi * kPi / 4) - 1.0), 5 * h);
    out.le("L rel err" + at, std::abs(compute_L(u, v, r) / (std::sqrt(kPi) * r) - 1.0), 5 * h);
  }
  out.le("harmonic deficit R=1 (C=1)", harmonic_deficit(u, v, {}, 1.0, s.cfg()).deficit, h);
}

void c03_almgren(Suite& s, Sheet& out) {
  const auto radii = solved_radii();
  for (double kappa : kSolvedKappas) {
    const SolutionPair& sp = s.solved(kappa);
    const PairFields pf(sp.u, sp.v, kappa);
    for (Point x : kBasePoints)
      out.ge("N min pairwise slope " + tag(kappa, x), min_pairwise_slope(frequency_trace(pf, x, radii)),
             -5 * kSolvedH);
  }
}

void c04_doubling(Suite& s, Sheet& out) {
  const auto radii = solved_radii();
  for (double kappa : kSolvedKappas) {
    const SolutionPair& sp = s.solved(kappa);
    const PairFields pf(sp.u, sp.v, kappa);
    for (Point x : kBasePoints) {
      const MonotonicityTrace th = trace(pf, Functional::H, x, radii);
      for (double r1 : {0.1, 0.15, 0.2}) {
        const DoublingCheck c = check_doubling(th, 1.0, r1, 2 * r1);
        out.le("H(2r)/H(r) r=" + num(r1) + " " + tag(kappa, x), c.ratio, c.bound);
      }
    }
  }
}

void c05_decay(Suite& s, Sheet& out) {
  const Grid2D g = Grid2D::centered_square(2.0, 1.0 / 128);
  std::vector<double> roots, logs;
  for (double M : {10.0, 100.0, 1000.0}) {
    const Field w = solve_linear_decay(M, 1.0, 2.0, g, s.cfg());
    double sup = 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        if (norm(g.node(i, j)) <= 1.0) sup = std::max(sup, w.at(i, j));
    roots.push_back(std::sqrt(M));
    logs.push_back(std::log(sup));
  }
  const LineFit f = fit_line(roots, logs);
  out.lt("slope of log sup w vs sqrt(M)", f.slope, 0.0);
  out.le("correlation", f.correlation, -0.999);
}

void c06_acf(Suite& s, Sheet& out) {
  constexpr double kJBound = 10.0;
  const auto radii = solved_radii();
  for (double kappa : kSolvedKappas) {
    const SolutionPair& sp = s.solved(kappa);
    const PairFields pf(sp.u, sp.v, kappa);
    for (Point x : kBasePoints) {
      const AcfFit fit = acf_trace_and_fit(pf, x, radii);
      out.flag("C_fit finite " + tag(kappa, x), fit.finite);
      out.le("C_fit " + tag(kappa, x), fit.c_fit, 1e3);
      const auto [lo, hi] = std::minmax_element(fit.trace.values.begin(), fit.trace.values.end());
      out.ge("min J " + tag(kappa, x), *lo, 1.0 / kJBound);
      out.le("max J " + tag(kappa, x), *hi, kJBound);
    }
  }
  const Grid2D g = Grid2D::centered_square(1.0, kSolvedH);
  const Field u = Field::sample(g, linear_pair_u());
  const Field v = Field::sample(g, linear_pair_v());
  out.eq("C_fit linear pair", acf_trace_and_fit(PairFields(u, v, 0.0), {}, radii).c_fit, 0.0);
}

// Weights summed in sorted order, so permuted cells give bit-equal totals.
double level_measure(const SphericalPair& p, const std::vector<double>& f, double t) {
  std::vector<double> ws;
  for (int i = 0; i < p.m; ++i)
    if (f[i] > t) ws.push_back(p.w[i]);
  std::sort(ws.begin(), ws.end());
  double total = 0.0;
  for (double w : ws) total += w;
  return total;
}

void c07_rearrangement(Suite& s, Sheet& out) {
  std::mt19937_64 rng(s.cfg().seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int n : {2, 3}) {
    long measure_bad = 0, energy_bad = 0, product_bad = 0, idem_bad = 0;
    double energy_excess = -INFINITY, product_excess = -INFINITY;
    for (int trial = 0; trial < 1000; ++trial) {
      SphericalPair p = SphericalPair::make(n, 256);
      for (int i = 0; i < p.m; ++i) {
        p.ubar[i] = unif(rng);
        p.vbar[i] = unif(rng);
      }
      const SphericalPair q = rearrange_pair(p);
      for (auto which : {&SphericalPair::ubar, &SphericalPair::vbar}) {
        for (double t : p.*which)
          if (level_measure(p, p.*which, t) != level_measure(q, q.*which, t)) ++measure_bad;
      }
      for (Which w : {Which::U, Which::V}) {
        const double e0 = dirichlet_energy(p, w), e1 = dirichlet_energy(q, w);
        energy_excess = std::max(energy_excess, e1 - e0);
        if (e1 > e0 * (1 + 1e-12)) ++energy_bad;
      }
      double prod0 = 0.0, prod1 = 0.0;
      for (int i = 0; i < p.m; ++i) {
        prod0 += p.w[i] * p.ubar[i] * p.vbar[i];
        prod1 += q.w[i] * q.ubar[i] * q.vbar[i];
      }
      product_excess = std::max(product_excess, prod1 - prod0);
      if (prod1 > prod0 * (1 + 1e-12)) ++product_bad;
      const SphericalPair r = rearrange_pair(q);
      if (r.ubar != q.ubar || r.vbar != q.vbar) ++idem_bad;
    }
    const std::string d = " n=" + std::to_string(n);
    out.eq("level-set measure mismatches" + d, static_cast<double>(measure_bad), 0.0);
    out.eq("energy increases" + d, static_cast<double>(energy_bad), 0.0);
    out.le("max energy change" + d, energy_excess, 0.0);
    out.eq("product increases" + d, static_cast<double>(product_bad), 0.0);
    out.le("max product change" + d, product_excess, 0.0);
    out.eq("idempotence failures" + d, static_cast<double>(idem_bad), 0.0);
  }
}

void c08_sphere(Suite& s, Sheet& out) {
  const std::vector<double> kappas{1e2, 1e3, 1e4};
  const SweepFit fit = kappa_sweep(kappas, 1.0, 512, s.cfg(), 2);
  std::vector<double> segs;
  for (const auto& r : fit.reports) {
    const std::string k = " kappa=" + num(r.kappa);
    out.le("value" + k, r.value, 2.0 + 1e-6);
    out.le("value rise during descent" + k, r.max_increase, 1e-12);
    segs.push_back(r.seg);
  }
  out.le("deficit exponent", fit.exponent, -0.2);
  const auto& last = fit.reports.back();
  out.le("|mult1 - 1| kappa=1e4", std::abs(last.mult1 - 1.0), 0.05);
  out.le("|mult2 - 1| kappa=1e4", std::abs(last.mult2 - 1.0), 0.05);
  const double seg_exp = fit_loglog(kappas, segs).slope;
  out.ge("segregation exponent", seg_exp, -0.65);
  out.le("segregation exponent", seg_exp, -0.35);
}

void c09_gamma(Suite&, Sheet& out) {
  out.eq("gamma(0)", gamma(0.0, 2), 0.0);
  double worst = 0.0, convex = 0.0;
  for (int n = 2; n <= 10; ++n) {
    worst = std::max(worst, std::abs(gamma(n - 1.0, n) - 1.0));
    const double d = 1e-3;
    for (double x = d; x <= 10.0; x += 0.01)
      convex = std::max(convex, (gamma(x + d, n) - 2 * gamma(x, n) + gamma(x - d, n)) / (d * d));
  }
  out.le("max |gamma(n-1)-1| n=2..10", worst, 1e-12);
  out.le("max finite-difference gamma''", convex, 1e-8);
}

struct Extension {
  Field u, v;
  double x0;
};

Extension extension(Suite& s, double L, double half_width, double h) {
  const Profile1D& p = s.profile(L);
  const Grid2D g = Grid2D::centered_square(half_width, h);
  auto [u, v] = extend_to_2d(p, g, {1.0, 0.0});
  return {std::move(u), std::move(v), crossing_point(p)};
}

void c10_blowdown(Suite& s, Sheet& out) {
  const double h = 0.125;
  const Extension ext = extension(s, 192.0, 128.0, h);
  const std::vector<double> radii{8.0, 16.0, 32.0};
  const DirectionConvergence dc = direction_convergence(ext.u, ext.v, radii);
  out.le("cauchy gap (deg)", dc.cauchy_gap * 180.0 / kPi, 2.0);
  std::vector<double> deficits;
  for (std::size_t k = 0; k < dc.records.size(); ++k) {
    deficits.push_back(dc.records[k].deficit);
    if (k > 0)
      out.le("flatness R=" + num(radii[k]) + " minus previous",
             dc.records[k].flatness - dc.records[k - 1].flatness, 0.0);
  }
  out.le("normalized deficit slope", fit_loglog(radii, deficits).slope, -0.3);
  const PairFields pf(ext.u, ext.v, 1.0);
  for (double y : {-40.0, 0.0, 40.0}) {
    const Point x{ext.x0, y};
    const MonotonicityTrace t = frequency_trace(pf, x, radii);
    out.le("max N at " + fmt_point(x), *std::max_element(t.values.begin(), t.values.end()), 1.0 + 5 * h);
  }
}

void c11_segregation(Suite& s, Sheet& out) {
  const double h = 0.125;
  const std::vector<double> windows{4.0, 8.0, 16.0};
  std::vector<ProductBounds> pb;
  for (auto [L, hw] : {std::pair{40.0, 32.0}, std::pair{80.0, 64.0}}) {
    const Extension ext = extension(s, L, hw, h);
    pb.push_back(product_bounds(PairFields(ext.u, ext.v, 1.0), {ext.x0, 0.0}, windows));
    const std::string d = " half-width=" + num(hw);
    out.flag("mass exponent defined" + d, pb.back().mass_exponent.has_value());
    out.le("mass exponent" + d, pb.back().mass_exponent.value_or(INFINITY), 1.3);
  }
  out.le("|sup uv ratio - 1|", std::abs(pb[1].sup_uv / pb[0].sup_uv - 1.0), 0.25);
  out.le("|sup mixed ratio - 1|", std::abs(pb[1].sup_mixed / pb[0].sup_mixed - 1.0), 0.25);
}

void c12_cone(Suite& s, Sheet& out) {
  const double h = 0.125;
  const Extension ext = extension(s, 40.0, 32.0, h);
  const PairFields pf(ext.u, ext.v, 1.0);
  out.le("violation aperture 3/4", cone_monotonicity(pf, {1.0, 0.0}, 0.75).violation, 5 * h);
  out.le("transverse sup aperture 0", cone_monotonicity(pf, {1.0, 0.0}, 0.0).transverse_sup, 5 * h);
}

using Runner = void (*)(Suite&, Sheet&);

const std::map<int, Runner>& runners() {
  static const std::map<int, Runner> table{
      {1, c01_profile},   {2, c02_linear_pair}, {3, c03_almgren},   {4, c04_doubling},
      {5, c05_decay},     {6, c06_acf},         {7, c07_rearrangement}, {8, c08_sphere},
      {9, c09_gamma},     {10, c10_blowdown},   {11, c11_segregation},  {12, c12_cone}};
  return table;
}

std::string csv_name(int id, const std::string& name) {
  std::ostringstream s;
  s << "c" << (id < 10 ? "0" : "") << id << "_" << name << ".csv";
  return s.str();
}

std::string to_csv(const std::vector<Check>& checks) {
  std::string out = "check,value,relation,bound,pass\n";
  for (const auto& c : checks)
    out += "\"" + c.name + "\"," + io::fmt17(c.value) + "," + c.relation + "," + io::fmt17(c.bound) + "," +
           (c.pass ? "1" : "0") + "\n";
  return out;
}

CriterionResult run_one(int id, const std::string& name, Suite& suite, const fs::path& dir) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  const auto t0 = std::chrono::steady_clock::now();
  Sheet sheet;
  try {
    runners().at(id)(suite, sheet);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.checks = std::move(sheet.checks);
  r.pass = r.error.empty() && !r.checks.empty() &&
           std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.pass; });
  io::write_atomic(dir / csv_name(id, name), to_csv(r.checks) + (r.error.empty() ? "" : "# error: " + r.error + "\n"));
  return r;
}

}  // namespace

const std::vector<std::pair<int, std::string>>& criteria() {
  static const std::vector<std::pair<int, std::string>> list{
      {1, "profile-structure"},    {2, "linear-pair-oracles"}, {3, "almgren-monotonicity"},
      {4, "doubling"},             {5, "exponential-decay"},   {6, "acf-monotonicity"},
      {7, "rearrangement-laws"},   {8, "spherical-minimization"}, {9, "gamma-identities"},
      {10, "blowdown-flatness"},   {11, "segregation-bounds"}, {12, "cone-monotonicity"},
      {13, "determinism"}};
  return list;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  opts.cfg.validate();
  auto selected = [&](int id) { return opts.only.empty() || std::count(opts.only.begin(), opts.only.end(), id) > 0; };
  for (int id : opts.only) require(id >= 1 && id <= 13, "criterion ids run from 1 to 13");
  io::ensure_directory(opts.out_dir);

  std::vector<CriterionResult> results;
  std::vector<std::pair<int, std::string>> ran;
  {
    Suite suite(opts.cfg);
    for (const auto& [id, name] : criteria()) {
      if (id == 13 || !selected(id)) continue;
      results.push_back(run_one(id, name, suite, opts.out_dir));
      ran.emplace_back(id, name);
      if (on_result) on_result(results.back());
    }
  }
  if (!selected(13)) return results;

  CriterionResult det;
  det.id = 13;
  det.name = "determinism";
  const auto t0 = std::chrono::steady_clock::now();
  Sheet sheet;
  try {
    const fs::path again = opts.out_dir / "rerun";
    io::ensure_directory(again);
    Suite suite(opts.cfg);
    for (const auto& [id, name] : ran) run_one(id, name, suite, again);
    sheet.flag("criteria rerun", !ran.empty());
    for (const auto& [id, name] : ran) {
      const std::string file = csv_name(id, name);
      sheet.flag("identical " + file, io::read_text(opts.out_dir / file) == io::read_text(again / file));
    }
  } catch (const std::exception& e) {
    det.error = e.what();
  }
  det.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  det.checks = std::move(sheet.checks);
  det.pass = det.error.empty() && !ran.empty() &&
             std::all_of(det.checks.begin(), det.checks.end(), [](const Check& c) { return c.pass; });
  io::write_atomic(opts.out_dir / csv_name(13, det.name), to_csv(det.checks));
  results.push_back(det);
  if (on_result) on_result(det);
  return results;
}

std::string summary_line(const CriterionResult& r) {
  std::ostringstream s;
  s.precision(3);
  s << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << " (" << std::fixed << r.seconds << " s)";
  s.unsetf(std::ios::fixed);
  s.precision(6);
  if (!r.error.empty()) {
    s << " error: " << r.error;
  } else {
    for (const auto& c : r.checks)
      if (!c.pass) {
        s << " first failing check: " << c.name << " = " << c.value << " " << c.relation << " " << c.bound;
        break;
      }
  }
  return s.str();
}

}  // namespace segsym
