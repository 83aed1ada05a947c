#include "segsym/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

#include "segsym/error.hpp"
#include "segsym/stats.hpp"

namespace segsym {

namespace {

constexpr double kShellFloor = 1e-14;

void require_ball(const Grid2D& g, Point x, double r) {
  if (!(r > 0.0)) fail(ErrorKind::Precondition, "radius must be positive");
  if (!g.contains_ball(x, r)) fail(ErrorKind::BallOutsideDomain, "ball leaves the grid");
}

void require_increasing(std::span<const double> radii) {
  require(!radii.empty(), "no radii");
  for (std::size_t i = 1; i < radii.size(); ++i)
    require(radii[i] > radii[i - 1], "radii must be strictly increasing");
}

double sq(double a) { return a * a; }

}  // namespace

PairFields::PairFields(const Field& u, const Field& v, double kappa)
    : u_(&u), v_(&v), kappa_(kappa), gu_(gradient(u)), gv_(gradient(v)), mass_(u.grid) {
  require(u.grid.same_as(v.grid), "u and v live on different grids");
  require(kappa >= 0.0, "kappa must be nonnegative");
  for (std::size_t k = 0; k < mass_.values.size(); ++k) mass_.values[k] = sq(u.values[k]) + sq(v.values[k]);
}

double PairFields::interaction(std::size_t k) const { return kappa_ * sq(u_->values[k] * v_->values[k]); }

double PairFields::energy_density(std::size_t k) const {
  return sq(gu_.x[k]) + sq(gu_.y[k]) + sq(gv_.x[k]) + sq(gv_.y[k]) + interaction(k);
}

double PairFields::energy_density_u(std::size_t k) const { return sq(gu_.x[k]) + sq(gu_.y[k]) + interaction(k); }

double PairFields::energy_density_v(std::size_t k) const { return sq(gv_.x[k]) + sq(gv_.y[k]) + interaction(k); }

const char* to_string(Functional f) {
  switch (f) {
    case Functional::D: return "D";
    case Functional::H: return "H";
    case Functional::N: return "N";
    case Functional::J: return "J";
  }
  return "?";
}

double almgren_D(const PairFields& pf, Point x, double r) {
  require_ball(pf.grid(), x, r);
  return ball_integral(pf.grid(), x, r, [&](std::size_t k) { return pf.energy_density(k); });
}

double almgren_H(const PairFields& pf, Point x, double r) {
  require_ball(pf.grid(), x, r);
  return shell_integral(pf.mass(), x, r) / r;
}

double almgren_N(const PairFields& pf, Point x, double r) {
  require_ball(pf.grid(), x, r);
  const double shell = shell_integral(pf.mass(), x, r);
  if (shell <= kShellFloor) fail(ErrorKind::ZeroDenominator, "shell integral of u^2 + v^2 vanishes");
  return r * almgren_D(pf, x, r) / shell;
}

double almgren_D(const Field& u, const Field& v, double kappa, Point x, double r) {
  return almgren_D(PairFields(u, v, kappa), x, r);
}

double almgren_H(const Field& u, const Field& v, Point x, double r) { return almgren_H(PairFields(u, v, 0.0), x, r); }

double almgren_N(const Field& u, const Field& v, double kappa, Point x, double r) {
  return almgren_N(PairFields(u, v, kappa), x, r);
}

double acf_J(const PairFields& pf, Point x, double r) {
  require_ball(pf.grid(), x, r);
  const double a = ball_integral(pf.grid(), x, r, [&](std::size_t k) { return pf.energy_density_u(k); });
  const double b = ball_integral(pf.grid(), x, r, [&](std::size_t k) { return pf.energy_density_v(k); });
  return a * b / std::pow(r, 4);
}

double acf_J(const Field& u, const Field& v, double kappa, Point x, double r) {
  return acf_J(PairFields(u, v, kappa), x, r);
}

double acf_J_radial3(std::span<const double> u, std::span<const double> v, double drho, double kappa, double r) {
  require(u.size() == v.size() && u.size() >= 3, "radial profiles need matching length >= 3");
  require(drho > 0.0 && r > 0.0, "drho and r must be positive");
  const std::size_t n = u.size();
  if (r > drho * static_cast<double>(n - 1) + 1e-12) fail(ErrorKind::BallOutsideDomain, "radius beyond radial profile");

  auto deriv = [&](std::span<const double> f, std::size_t i) {
    if (i == 0) return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * drho);
    if (i == n - 1) return (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * drho);
    return (f[i + 1] - f[i - 1]) / (2.0 * drho);
  };
  // weight 4 pi rho: |y|^-1 kernel times polar measure 4 pi rho^2
  auto integrand = [&](std::span<const double> f, std::size_t i) {
    const double rho = drho * static_cast<double>(i);
    return (sq(deriv(f, i)) + kappa * sq(u[i] * v[i])) * 4.0 * std::numbers::pi * rho;
  };
  auto integrate = [&](std::span<const double> f) {
    double sum = 0.0;
    std::size_t i = 0;
    for (; drho * static_cast<double>(i + 1) <= r + 1e-12 && i + 1 < n; ++i)
      sum += 0.5 * drho * (integrand(f, i) + integrand(f, i + 1));
    const double rest = r - drho * static_cast<double>(i);
    if (rest > 1e-12 && i + 1 < n) {
      const double a = integrand(f, i);
      const double b = a + (integrand(f, i + 1) - a) * rest / drho;
      sum += 0.5 * rest * (a + b);
    }
    return sum;
  };
  return integrate(u) * integrate(v) / std::pow(r, 4);
}

MonotonicityTrace trace(const PairFields& pf, Functional f, Point x, std::span<const double> radii) {
  require_increasing(radii);
  require_ball(pf.grid(), x, radii.back());
  MonotonicityTrace t{to_string(f), x, {radii.begin(), radii.end()}, std::vector<double>(radii.size()), pf.kappa()};
  std::exception_ptr err;
  const long count = static_cast<long>(radii.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      const double r = radii[static_cast<std::size_t>(i)];
      double val = 0.0;
      switch (f) {
        case Functional::D: val = almgren_D(pf, x, r); break;
        case Functional::H: val = almgren_H(pf, x, r); break;
        case Functional::N: val = almgren_N(pf, x, r); break;
        case Functional::J: val = acf_J(pf, x, r); break;
      }
      t.values[static_cast<std::size_t>(i)] = val;
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return t;
}

MonotonicityTrace frequency_trace(const PairFields& pf, Point x, std::span<const double> radii) {
  return trace(pf, Functional::N, x, radii);
}

double min_pairwise_increment(const MonotonicityTrace& t) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < t.values.size(); ++i)
    for (std::size_t j = i + 1; j < t.values.size(); ++j) best = std::min(best, t.values[j] - t.values[i]);
  return t.values.size() < 2 ? 0.0 : best;
}

double min_pairwise_slope(const MonotonicityTrace& t) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < t.values.size(); ++i)
    for (std::size_t j = i + 1; j < t.values.size(); ++j)
      best = std::min(best, (t.values[j] - t.values[i]) / (t.radii[j] - t.radii[i]));
  return t.values.size() < 2 ? 0.0 : best;
}

namespace {

double loglog_interp(const MonotonicityTrace& t, double r) {
  const auto& R = t.radii;
  if (r < R.front() * (1 - 1e-12) || r > R.back() * (1 + 1e-12))
    fail(ErrorKind::Precondition, "radius outside the sampled trace");
  for (double val : t.values)
    if (!(val > 0.0)) fail(ErrorKind::ZeroDenominator, "H must be positive for log interpolation");
  if (R.size() == 1) return t.values[0];
  std::size_t k = 0;
  while (k + 2 < R.size() && r > R[k + 1]) ++k;
  const double s = (std::log(r) - std::log(R[k])) / (std::log(R[k + 1]) - std::log(R[k]));
  return std::exp(std::log(t.values[k]) + s * (std::log(t.values[k + 1]) - std::log(t.values[k])));
}

}  // namespace

DoublingCheck check_doubling(const MonotonicityTrace& trace_H, double d, double r1, double r2) {
  require(r1 > 0.0 && r2 >= r1, "need 0 < r1 <= r2");
  require(d >= 0.0, "doubling exponent must be nonnegative");
  const double h1 = loglog_interp(trace_H, r1);
  const double h2 = loglog_interp(trace_H, r2);
  DoublingCheck c;
  c.ratio = h2 / h1;
  c.bound = std::exp(d) * std::pow(r2 / r1, 2.0 * d);
  c.pass = c.ratio <= c.bound;
  return c;
}

AcfFit acf_correction_constant(MonotonicityTrace t) {
  require(t.radii.size() == t.values.size(), "trace size mismatch");
  std::vector<double> logs(t.values.size());
  for (std::size_t i = 0; i < logs.size(); ++i) {
    if (!(t.values[i] > 0.0)) fail(ErrorKind::ZeroDenominator, "J vanishes at a sampled radius");
    logs[i] = std::log(t.values[i]);
  }
  auto feasible = [&](double C) {
    for (std::size_t i = 0; i < logs.size(); ++i)
      for (std::size_t j = i + 1; j < logs.size(); ++j)
        if (logs[j] - C / std::sqrt(t.radii[j]) < logs[i] - C / std::sqrt(t.radii[i])) return false;
    return true;
  };
  AcfFit out;
  constexpr double kMax = 1e3;
  if (feasible(0.0)) {
    out.c_fit = 0.0;
  } else if (!feasible(kMax)) {
    out.c_fit = std::numeric_limits<double>::infinity();
    out.finite = false;
  } else {
    double lo = 0.0, hi = kMax;
    for (int it = 0; it < 48; ++it) {
      const double mid = 0.5 * (lo + hi);
      (feasible(mid) ? hi : lo) = mid;
    }
    out.c_fit = hi;
  }
  out.trace = std::move(t);
  return out;
}

AcfFit acf_trace_and_fit(const PairFields& pf, Point x, std::span<const double> radii) {
  return acf_correction_constant(trace(pf, Functional::J, x, radii));
}

double nondegeneracy_exponent(const Field& u, const Field& v, std::span<const double> radii, Point center) {
  require_increasing(radii);
  require(radii.size() >= 2, "need at least two radii");
  require_ball(u.grid, center, radii.back());
  const Field sum = combine(u, v, [](double a, double b) { return a + b; });
  std::vector<double> shells;
  for (double r : radii) {
    const double s = shell_integral(sum, center, r);
    if (!(s > 0.0)) fail(ErrorKind::ZeroDenominator, "shell integral of u + v vanishes");
    shells.push_back(s);
  }
  return fit_loglog(radii, shells).slope;
}

ProductBounds product_bounds(const PairFields& pf, Point center, std::span<const double> windows) {
  ProductBounds out;
  const auto& u = pf.u().values;
  const auto& v = pf.v().values;
  for (std::size_t k = 0; k < u.size(); ++k) {
    out.sup_uv = std::max(out.sup_uv, u[k] * v[k]);
    const double gu = std::hypot(pf.grad_u().x[k], pf.grad_u().y[k]);
    const double gv = std::hypot(pf.grad_v().x[k], pf.grad_v().y[k]);
    out.sup_mixed = std::max(out.sup_mixed, std::abs(u[k]) * gv + std::abs(v[k]) * gu);
  }
  if (windows.empty()) return out;
  require_increasing(windows);
  require_ball(pf.grid(), center, windows.back());
  bool positive = true;
  for (double R : windows) {
    const double m = ball_integral(pf.grid(), center, R, [&](std::size_t k) { return sq(u[k] * v[k]); });
    out.windows.push_back(R);
    out.masses.push_back(m);
    positive = positive && m > 0.0;
  }
  if (positive && windows.size() >= 2) out.mass_exponent = fit_loglog(out.windows, out.masses).slope;
  return out;
}

double gradient_bounds(const PairFields& pf, double margin) {
  const Grid2D& g = pf.grid();
  require(margin >= 2.0 * g.h * (1 - 1e-12), "margin must be at least 2h");
  const int m = static_cast<int>(std::ceil(margin / g.h - 1e-9));
  require(2 * m < g.nx && 2 * m < g.ny, "margin leaves no interior");
  double best = 0.0;
  for (int j = m; j < g.ny - m; ++j)
    for (int i = m; i < g.nx - m; ++i) {
      const std::size_t k = g.index(i, j);
      best = std::max(best, std::hypot(pf.grad_u().x[k], pf.grad_u().y[k]) +
                                std::hypot(pf.grad_v().x[k], pf.grad_v().y[k]));
    }
  return best;
}

double holder_seminorm(const Field& f, double alpha, std::optional<Ball> region, double pair_floor) {
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
  require(pair_floor > 0.0, "pair floor must be positive");
  const Grid2D& g = f.grid;
  if (region) require_ball(g, region->center, region->radius);
  const int stride = std::max(1, static_cast<int>(std::ceil(std::max(g.nx, g.ny) / 64.0)));
  std::vector<Point> pts;
  std::vector<double> vals;
  for (int j = 0; j < g.ny; j += stride)
    for (int i = 0; i < g.nx; i += stride) {
      const Point p = g.node(i, j);
      if (region && norm(p - region->center) > region->radius) continue;
      pts.push_back(p);
      vals.push_back(f.at(i, j));
    }
  double best = 0.0;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      const double d = norm(pts[a] - pts[b]);
      if (d < pair_floor) continue;
      best = std::max(best, std::abs(vals[a] - vals[b]) / std::pow(d, alpha));
    }
  return best;
}

ConeCheck cone_monotonicity(const PairFields& pf, Point e, double aperture) {
  require(aperture >= 0.0 && aperture <= 1.0, "aperture must lie in [0, 1]");
  const double len = norm(e);
  require(len > 0.0, "direction must be nonzero");
  e = (1.0 / len) * e;
  const Point perp{-e.y, e.x};
  const Grid2D& g = pf.grid();
  std::vector<Point> fan;
  for (int k = 0; k < 64; ++k) {
    const double t = 2.0 * std::numbers::pi * k / 64.0;
    const Point tau{std::cos(t) * e.x - std::sin(t) * e.y, std::sin(t) * e.x + std::cos(t) * e.y};
    if (dot(tau, e) >= aperture - 1e-12) fan.push_back(tau);
  }
  ConeCheck out;
  out.directions = static_cast<int>(fan.size());
  for (int j = 2; j < g.ny - 2; ++j)
    for (int i = 2; i < g.nx - 2; ++i) {
      const std::size_t k = g.index(i, j);
      const Point gu{pf.grad_u().x[k], pf.grad_u().y[k]};
      const Point gv{pf.grad_v().x[k], pf.grad_v().y[k]};
      for (const Point& tau : fan) out.violation = std::max({out.violation, -dot(tau, gu), dot(tau, gv)});
      out.transverse_sup = std::max({out.transverse_sup, std::abs(dot(perp, gu)), std::abs(dot(perp, gv))});
    }
  return out;
}

HarmonicDeficit harmonic_deficit(const Field& u, const Field& v, Point x, double R, const SolveConfig& cfg) {
  require(u.grid.same_as(v.grid), "u and v live on different grids");
  require_ball(u.grid, x, R);
  const Field w = combine(u, v, [](double a, double b) { return a - b; });
  const Field phi = solve_harmonic(u.grid, x, R, from_field(w), cfg);
  const Field diff = combine(w, phi, [](double a, double b) { return a - b; });
  const VectorField gd = gradient(diff);
  const VectorField gw = gradient(w);
  const VectorField gp = gradient(phi);
  const Grid2D& g = u.grid;
  HarmonicDeficit out;
  out.deficit = ball_integral(g, x, R, [&](std::size_t k) { return sq(gd.x[k]) + sq(gd.y[k]); });
  out.energy_w = ball_integral(g, x, R, [&](std::size_t k) { return sq(gw.x[k]) + sq(gw.y[k]); });
  out.energy_phi = ball_integral(g, x, R, [&](std::size_t k) { return sq(gp.x[k]) + sq(gp.y[k]); });
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      if (norm(g.node(i, j) - x) < R - g.h) {
        const std::size_t k = g.index(i, j);
        out.sup_grad_phi = std::max(out.sup_grad_phi, std::hypot(gp.x[k], gp.y[k]));
      }
  return out;
}

namespace {

struct Sample {
  double dx, dy, u, v;
};

double flat_error(const std::vector<Sample>& pts, double theta, double a) {
  const double c = a * std::cos(theta), s = a * std::sin(theta);
  double worst = 0.0;
  for (const Sample& p : pts) {
    const double t = c * p.dx + s * p.dy;
    worst = std::max(worst, std::abs(p.u - std::max(t, 0.0)) + std::abs(p.v - std::max(-t, 0.0)));
  }
  return worst;
}

template <class F>
double golden_min(F&& f, double lo, double hi, int iters, double& fbest) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
  double fa = f(a), fb = f(b);
  for (int it = 0; it < iters; ++it) {
    if (fa <= fb) {
      hi = b; b = a; fb = fa;
      a = hi - g * (hi - lo); fa = f(a);
    } else {
      lo = a; a = b; fa = fb;
      b = lo + g * (hi - lo); fb = f(b);
    }
  }
  if (fa <= fb) { fbest = fa; return a; }
  fbest = fb;
  return b;
}

}  // namespace

Flatness flatness_direction(const Field& u, const Field& v, Point x, double R) {
  require(u.grid.same_as(v.grid), "u and v live on different grids");
  const Grid2D& g = u.grid;
  require_ball(g, x, R);
  std::vector<Sample> pts;
  double amax = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const Point d = g.node(i, j) - x;
      if (norm(d) > R) continue;
      const std::size_t k = g.index(i, j);
      pts.push_back({d.x, d.y, u.values[k], v.values[k]});
      amax = std::max(amax, std::abs(u.values[k] - v.values[k]));
    }
  require(!pts.empty(), "ball holds no nodes");
  const double a0 = amax > 0.0 ? amax / R : 1.0;

  std::vector<Sample> coarse;
  const std::size_t stride = std::max<std::size_t>(1, pts.size() / 4000);
  for (std::size_t k = 0; k < pts.size(); k += stride) coarse.push_back(pts[k]);

  constexpr int kDirs = 256, kMags = 16;
  double best = std::numeric_limits<double>::infinity(), theta = 0.0, a = a0;
  for (int m = 0; m < kMags; ++m) {
    const double am = a0 * (0.5 + m / (kMags - 1.0));
    for (int d = 0; d < kDirs; ++d) {
      const double th = 2.0 * std::numbers::pi * d / kDirs;
      const double err = flat_error(coarse, th, am);
      if (err < best) { best = err; theta = th; a = am; }
    }
  }
  const double dth = 2.0 * std::numbers::pi / kDirs, da = a0 / (kMags - 1.0);
  best = flat_error(pts, theta, a);
  for (int round = 0; round < 3; ++round) {
    double f = 0.0;
    const double th = golden_min([&](double t) { return flat_error(pts, t, a); }, theta - dth, theta + dth, 40, f);
    if (f < best) { best = f; theta = th; }
    const double am = golden_min([&](double s) { return flat_error(pts, theta, s); }, std::max(0.0, a - da), a + da, 40, f);
    if (f < best) { best = f; a = am; }
  }
  Flatness out;
  out.e = {std::cos(theta), std::sin(theta)};
  out.magnitude = a;
  out.h_flat = best / R;
  return out;
}

}  // namespace segsym
