#include "segsym/elliptic2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "segsym/error.hpp"

namespace segsym {

namespace k = kernels;

BoundaryData linear_pair_u(Point e) {
  return [e](Point p) { return std::max(dot(p, e), 0.0); };
}

BoundaryData linear_pair_v(Point e) {
  return [e](Point p) { return std::max(-dot(p, e), 0.0); };
}

BoundaryData from_field(const Field& f) {
  return [&f](Point p) { return interpolate(f, p); };
}

namespace {

double relaxation_factor(const Grid2D& g, const SolveConfig& cfg, double shift_h2 = 0.0) {
  const double omega = cfg.relaxation > 0.0 ? cfg.relaxation : k::optimal_omega(g, shift_h2);
  return omega * cfg.damping;
}

// Smallest residual the 5-point stencil can resolve for data of size `scale`.
double rounding_floor(const Grid2D& g, double scale) {
  return 256.0 * std::numeric_limits<double>::epsilon() * scale / (g.h * g.h);
}

double sup_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

bool energy_increase(double before, double after) { return after > before + 1e-12 * std::max(1.0, std::abs(before)); }

// Node-aligned window holding B_R(c) plus one ring of rim nodes.
struct Window {
  int i0 = 0;
  int j0 = 0;
  Grid2D grid;
};

Window disk_window(const Grid2D& g, Point c, double R) {
  const int i0 = std::max(0, static_cast<int>(std::floor((c.x - R - g.origin.x) / g.h)) - 1);
  const int i1 = std::min(g.nx - 1, static_cast<int>(std::ceil((c.x + R - g.origin.x) / g.h)) + 1);
  const int j0 = std::max(0, static_cast<int>(std::floor((c.y - R - g.origin.y) / g.h)) - 1);
  const int j1 = std::min(g.ny - 1, static_cast<int>(std::ceil((c.y + R - g.origin.y) / g.h)) + 1);
  require(i1 - i0 >= 2 && j1 - j0 >= 2, "disk too small for the grid spacing");
  return {i0, j0, Grid2D(i1 - i0 + 1, j1 - j0 + 1, g.h, g.node(i0, j0))};
}

struct LinearSolveStats {
  long sweeps = 0;
  double residual = 0.0;
  double tol_applied = 0.0;
};

LinearSolveStats relax_linear(const Grid2D& g, const k::Mask& mask, std::vector<double>& w, double shift,
                              const SolveConfig& cfg, bool relative, const char* where) {
  k::LinearSweep sweep{shift * g.h * g.h, relaxation_factor(g, cfg, shift * g.h * g.h)};
  const int check_every = 25;
  LinearSolveStats st;
  st.tol_applied = std::max(cfg.tol, rounding_floor(g, sup_abs(w)));
  double best = std::numeric_limits<double>::infinity();
  int stalled = 0;
  for (;;) {
    st.residual = k::parallel::residual_linear(g, mask, w, shift);
    double measure = st.residual / st.tol_applied;
    if (relative) measure = std::max(measure, k::parallel::relative_residual_linear(g, mask, w, shift) / cfg.tol);
    if (measure <= 1.0) return st;
    if (measure < 0.9 * best) {
      best = measure;
      stalled = 0;
    } else if (++stalled >= 10 && measure < 100.0 && sweep.omega > cfg.damping) {
      sweep.omega = std::max(cfg.damping, 1.0 + 0.5 * (sweep.omega - 1.0));
      stalled = 0;
    }
    if (st.sweeps >= cfg.max_iter) throw NoConvergence(where, st.sweeps, st.residual);
    for (int s = 0; s < check_every; ++s) k::parallel::sweep_linear(g, mask, w, sweep);
    st.sweeps += check_every;
  }
}

}  // namespace

double discrete_energy(const Field& u, const Field& v, double kappa) {
  require(u.grid.same_as(v.grid), "energy needs fields on one grid");
  return k::parallel::pair_energy(u.grid, u.values, v.values, kappa);
}

SolutionPair relax_system(Field u, Field v, double kappa, const SolveConfig& cfg, bool parallel, int log_every) {
  cfg.validate();
  require(kappa >= 0.0, "kappa must be nonnegative");
  require(u.grid.same_as(v.grid), "initial pair must share one grid");
  require(log_every >= 1, "log_every must be positive");
  const Grid2D g = u.grid;
  const auto mask = k::interior_mask(g);
  k::PairSweep sweep{kappa * g.h * g.h, relaxation_factor(g, cfg)};

  auto residual = [&] {
    return parallel ? k::parallel::residual_pair(g, mask, u.values, v.values, kappa)
                    : k::serial::residual_pair(g, mask, u.values, v.values, kappa);
  };
  auto energy_now = [&] {
    return parallel ? k::parallel::pair_energy(g, u.values, v.values, kappa, cfg.deterministic)
                    : k::serial::pair_energy(g, u.values, v.values, kappa);
  };

  SolutionPair out;
  out.kappa = kappa;
  out.tol_applied = std::max(cfg.tol, rounding_floor(g, std::max(sup_abs(u.values), sup_abs(v.values))));
  out.energy_trace.push_back(energy_now());
  long sweeps = 0;
  double res = residual();
  double best = res;
  int stalled = 0;
  while (res > out.tol_applied) {
    if (sweeps >= cfg.max_iter) throw NoConvergence("solve_system", sweeps, res);
    for (int s = 0; s < log_every; ++s) {
      if (parallel)
        k::parallel::sweep_pair(g, mask, u.values, v.values, sweep);
      else
        k::serial::sweep_pair(g, mask, u.values, v.values, sweep);
    }
    sweeps += log_every;
    const double e = energy_now();
    if (energy_increase(out.energy_trace.back(), e)) {
      std::ostringstream os;
      os << "energy rose from " << out.energy_trace.back() << " to " << e << " after sweep " << sweeps;
      fail(ErrorKind::NoConvergence, os.str());
    }
    out.energy_trace.push_back(e);
    res = residual();
    // Over-relaxation amplifies rounding into a residual floor; finish with
    // less over-relaxation each time progress stops.
    if (res < 0.9 * best) {
      best = res;
      stalled = 0;
    } else if (++stalled >= 10 && res < 100.0 * out.tol_applied && sweep.omega > cfg.damping) {
      sweep.omega = std::max(cfg.damping, 1.0 + 0.5 * (sweep.omega - 1.0));
      stalled = 0;
    }
  }
  out.u = std::move(u);
  out.v = std::move(v);
  out.residual = res;
  out.kappa = kappa;
  out.sweeps = sweeps;
  return out;
}

SolutionPair solve_system(const Grid2D& g, const BoundaryData& bdata_u, const BoundaryData& bdata_v, double kappa,
                          const SolveConfig& cfg) {
  cfg.validate();
  require(kappa >= 0.0, "kappa must be nonnegative");
  Field u(g), v(g);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (i != 0 && j != 0 && i != g.nx - 1 && j != g.ny - 1) continue;
      const Point p = g.node(i, j);
      const double bu = bdata_u(p), bv = bdata_v(p);
      if (!(bu >= 0.0) || !(bv >= 0.0)) {
        std::ostringstream os;
        os << "boundary values must be nonnegative; got (" << bu << ", " << bv << ") at (" << p.x << ", " << p.y
           << ")";
        fail(ErrorKind::Precondition, os.str());
      }
      u.at(i, j) = bu;
      v.at(i, j) = bv;
    }
  }

  // kappa = 0 stage, then kappa / 10^m, ..., kappa
  std::vector<double> stages{0.0};
  if (kappa > 0.0) {
    double s = kappa;
    std::vector<double> up;
    while (s > 1.0 + 1e-12) {
      up.push_back(s);
      s /= 10.0;
    }
    up.push_back(s);
    stages.insert(stages.end(), up.rbegin(), up.rend());
  }
  SolveConfig loose = cfg;
  loose.tol = std::max(cfg.tol, 1e-6);
  long total = 0;
  SolutionPair sol;
  for (std::size_t st = 0; st < stages.size(); ++st) {
    const bool last = st + 1 == stages.size();
    sol = relax_system(std::move(u), std::move(v), stages[st], last ? cfg : loose);
    total += sol.sweeps;
    u = std::move(sol.u);
    v = std::move(sol.v);
    if (last) {
      sol.u = std::move(u);
      sol.v = std::move(v);
    }
  }
  sol.sweeps = total;
  return sol;
}

double energy(const Field& u, const Field& v, double kappa, std::optional<Ball> region) {
  require(u.grid.same_as(v.grid), "energy needs fields on one grid");
  const VectorField gu = gradient(u), gv = gradient(v);
  auto density = [&](std::size_t i) {
    return gu.x[i] * gu.x[i] + gu.y[i] * gu.y[i] + gv.x[i] * gv.x[i] + gv.y[i] * gv.y[i] +
           kappa * u.values[i] * u.values[i] * v.values[i] * v.values[i];
  };
  if (region) return ball_integral(u.grid, region->center, region->radius, density);
  double total = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i) total += density(i);
  return total * u.grid.h * u.grid.h;
}

Field solve_harmonic(const Grid2D& g, Point c, double R, const BoundaryData& bdata, const SolveConfig& cfg) {
  cfg.validate();
  if (!(R > 0.0) || !g.contains_ball(c, R)) fail(ErrorKind::BallOutsideDomain, "harmonic replacement ball exceeds grid");
  const Window win = disk_window(g, c, R);
  const Grid2D& sg = win.grid;
  const auto mask = k::disk_mask(sg, c, R);
  std::vector<double> w(sg.size());
  double rim_sum = 0.0;
  long rim_count = 0;
  for (int j = 0; j < sg.ny; ++j) {
    for (int i = 0; i < sg.nx; ++i) {
      const std::size_t idx = sg.index(i, j);
      w[idx] = bdata(sg.node(i, j));
      if (!mask[idx]) {
        rim_sum += w[idx];
        ++rim_count;
      }
    }
  }
  const double mean = rim_count ? rim_sum / rim_count : 0.0;
  for (std::size_t idx = 0; idx < w.size(); ++idx)
    if (mask[idx]) w[idx] = mean;
  relax_linear(sg, mask, w, 0.0, cfg, false, "solve_harmonic");

  Field phi(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) phi.at(i, j) = bdata(g.node(i, j));
  for (int j = 0; j < sg.ny; ++j)
    for (int i = 0; i < sg.nx; ++i) phi.at(win.i0 + i, win.j0 + j) = w[sg.index(i, j)];
  return phi;
}

Field solve_linear_decay(double M, double A, double R_outer, const Grid2D& g, const SolveConfig& cfg) {
  cfg.validate();
  require(M > 0.0, "decay rate M must be positive");
  require(A > 0.0, "bound A must be positive");
  const Point origin{0.0, 0.0};
  if (!(R_outer > 0.0) || !g.contains_ball(origin, R_outer))
    fail(ErrorKind::BallOutsideDomain, "decay disk exceeds grid");
  const Window win = disk_window(g, origin, R_outer);
  const Grid2D& sg = win.grid;
  const auto mask = k::disk_mask(sg, origin, R_outer);
  std::vector<double> w(sg.size(), A);
  for (std::size_t idx = 0; idx < w.size(); ++idx)
    if (mask[idx]) w[idx] = 0.0;
  relax_linear(sg, mask, w, M, cfg, true, "solve_linear_decay");

  Field out(g, A);
  for (int j = 0; j < sg.ny; ++j)
    for (int i = 0; i < sg.nx; ++i) out.at(win.i0 + i, win.j0 + j) = w[sg.index(i, j)];
  return out;
}

}  // namespace segsym
