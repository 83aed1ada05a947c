#include "segsym/sphere.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <numeric>
#include <random>

#include "segsym/error.hpp"
#include "segsym/stats.hpp"

namespace segsym {

namespace {

constexpr double kPi = std::numbers::pi;

double fiber(int n) { return n == 2 ? 2.0 : 2.0 * kPi; }

double sphere_measure(int n) { return n == 2 ? 2.0 * kPi : 4.0 * kPi; }

}  // namespace

SphericalPair SphericalPair::make(int n, int m) {
  require(n == 2 || n == 3, "dimension must be 2 or 3");
  require(m >= 8, "need at least 8 cells");
  SphericalPair p;
  p.n = n;
  p.m = m;
  p.edges.resize(m + 1);
  p.alpha.resize(m);
  p.w.assign(m, sphere_measure(n) / m);
  for (int k = 0; k <= m; ++k)
    p.edges[k] = n == 2 ? kPi * k / m : std::acos(std::clamp(1.0 - 2.0 * k / m, -1.0, 1.0));
  for (int i = 0; i < m; ++i)
    p.alpha[i] = n == 2 ? kPi * (i + 0.5) / m : std::acos(1.0 - (2.0 * i + 1.0) / m);
  p.ubar.assign(m, 0.0);
  p.vbar.assign(m, 0.0);
  return p;
}

double SphericalPair::total_measure() const { return std::accumulate(w.begin(), w.end(), 0.0); }

void SphericalPair::validate() const {
  require(n == 2 || n == 3, "dimension must be 2 or 3");
  const auto sz = static_cast<std::size_t>(m);
  require(alpha.size() == sz && w.size() == sz && ubar.size() == sz && vbar.size() == sz && edges.size() == sz + 1,
          "spherical pair arrays disagree with m");
  for (int i = 0; i < m; ++i) {
    require(w[i] > 0.0, "cell weights must be positive");
    require(ubar[i] >= 0.0 && vbar[i] >= 0.0, "spherical values must be nonnegative");
    require(alpha[i] > edges[i] && alpha[i] < edges[i + 1], "cell centre outside its cell");
  }
  require(std::abs(total_measure() - sphere_measure(n)) <= 1e-10, "weights do not sum to the sphere measure");
}

double gamma(double x, int n) {
  require(n >= 2, "dimension must be at least 2");
  if (x < 0.0) fail(ErrorKind::NegativeInput, "gamma needs x >= 0");
  const double a = 0.5 * (n - 2);
  return std::sqrt(a * a + x) - a;
}

double gamma_prime(double x, int n) {
  if (x < 0.0) fail(ErrorKind::NegativeInput, "gamma needs x >= 0");
  const double a = 0.5 * (n - 2);
  return 0.5 / std::sqrt(a * a + x);
}

namespace {

// Pours value atoms, largest first, into cells from alpha = 0 (from_top) or from alpha = pi.
std::vector<double> pour(const std::vector<double>& vals, const std::vector<double>& w, bool from_top) {
  const std::size_t m = vals.size();
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
  std::vector<double> out(m, 0.0);
  std::size_t atom = 0;
  double left = m ? w[idx[0]] : 0.0;
  for (std::size_t step = 0; step < m; ++step) {
    const std::size_t cell = from_top ? step : m - 1 - step;
    double cap = w[cell], acc = 0.0;
    int pieces = 0;
    double single = 0.0;
    while (cap > 0.0 && atom < m) {
      const double take = std::min(left, cap);
      acc += take * vals[idx[atom]];
      single = vals[idx[atom]];
      ++pieces;
      cap -= take;
      left -= take;
      if (left <= 1e-15 * w[idx[atom]]) {
        if (++atom < m) left = w[idx[atom]];
      }
      if (cap <= 1e-15 * w[cell]) break;
    }
    // one atom filling the whole cell keeps its value bit-exactly
    out[cell] = pieces == 1 ? single : acc / (w[cell] - std::max(cap, 0.0));
  }
  return out;
}

}  // namespace

SphericalPair rearrange_pair(const SphericalPair& p) {
  p.validate();
  SphericalPair out = p;
  out.ubar = pour(p.ubar, p.w, true);
  out.vbar = pour(p.vbar, p.w, false);
  return out;
}

namespace {

// Edge coefficient between cells i and i + 1.
double edge_coeff(const SphericalPair& p, int i) {
  const double s = p.n == 2 ? 1.0 : std::sin(p.edges[i + 1]);
  return fiber(p.n) * s / (p.alpha[i + 1] - p.alpha[i]);
}

double energy_of(const SphericalPair& p, const std::vector<double>& f) {
  double e = 0.0;
  for (int i = 0; i + 1 < p.m; ++i) e += edge_coeff(p, i) * (f[i + 1] - f[i]) * (f[i + 1] - f[i]);
  return e;
}

double mass_of(const SphericalPair& p, const std::vector<double>& f) {
  double s = 0.0;
  for (int i = 0; i < p.m; ++i) s += p.w[i] * f[i] * f[i];
  return s;
}

}  // namespace

double dirichlet_energy(const SphericalPair& p, Which which) {
  require(p.m >= 8, "need at least 8 cells");
  return energy_of(p, which == Which::U ? p.ubar : p.vbar);
}

double spherical_mass(const SphericalPair& p, Which which) { return mass_of(p, which == Which::U ? p.ubar : p.vbar); }

double spherical_overlap(const SphericalPair& p) {
  double s = 0.0;
  for (int i = 0; i < p.m; ++i) s += p.w[i] * p.ubar[i] * p.ubar[i] * p.vbar[i] * p.vbar[i];
  return s;
}

namespace {

struct Eval {
  double x, y, value, overlap;
};

Eval evaluate(const SphericalPair& p, double kappa, double lam2) {
  const double I = spherical_overlap(p);
  Eval e;
  e.overlap = I;
  e.x = energy_of(p, p.ubar) + kappa * lam2 * I;
  e.y = energy_of(p, p.vbar) + kappa * I;
  e.value = gamma(e.x, p.n) + gamma(e.y, p.n);
  return e;
}

void normalize(const SphericalPair& p, std::vector<double>& f) {
  const double s = std::sqrt(mass_of(p, f));
  if (!(s > 0.0)) fail(ErrorKind::ZeroDenominator, "spherical function vanishes");
  for (double& x : f) x /= s;
}

// Lowest eigenvector of a K + diag(w pot) against the mass diag(w), returned
// with unit mass and nonnegative entries.
std::vector<double> lowest_mode(const SphericalPair& p, double a, const std::vector<double>& pot) {
  const int m = p.m;
  std::vector<double> d(m, 0.0), e(m, 0.0);
  for (int i = 0; i + 1 < m; ++i) {
    const double c = a * edge_coeff(p, i);
    d[i] += c;
    d[i + 1] += c;
    e[i] = -c / std::sqrt(p.w[i] * p.w[i + 1]);
  }
  for (int i = 0; i < m; ++i) d[i] = d[i] / p.w[i] + pot[i];
  lapack_int found = 0;
  std::vector<double> vals(m), z(m);
  std::vector<lapack_int> support(2);
  const lapack_int info =
      LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', m, d.data(), e.data(), 0.0, 0.0, 1, 1, 0.0, &found, vals.data(),
                     z.data(), m, support.data());
  if (info != 0 || found != 1) fail(ErrorKind::NoConvergence, "tridiagonal eigensolver failed");
  const double sign = std::accumulate(z.begin(), z.end(), 0.0) < 0.0 ? -1.0 : 1.0;
  std::vector<double> f(m);
  for (int i = 0; i < m; ++i) f[i] = std::max(0.0, sign * z[i]) / std::sqrt(p.w[i]);
  normalize(p, f);
  return f;
}

struct RunResult {
  SphericalPair pair;
  long iterations = 0;
  double max_increase = 0.0;
  double value = 0.0;
};

RunResult descend(SphericalPair p, double kappa, double lam2, const SolveConfig& cfg) {
  RunResult r;
  std::vector<double> history;
  Eval cur = evaluate(p, kappa, lam2);
  history.push_back(cur.value);
  std::vector<double> pot(p.m);
  for (long it = 1; it <= cfg.max_iter; ++it) {
    for (int half = 0; half < 2; ++half) {
      const double gx = gamma_prime(cur.x, p.n), gy = gamma_prime(cur.y, p.n);
      const double c = (gx * lam2 + gy) * kappa;
      auto& other = half == 0 ? p.vbar : p.ubar;
      for (int i = 0; i < p.m; ++i) pot[i] = c * other[i] * other[i];
      (half == 0 ? p.ubar : p.vbar) = lowest_mode(p, half == 0 ? gx : gy, pot);
      cur = evaluate(p, kappa, lam2);
    }
    if (it % 10 == 0) {
      SphericalPair q = rearrange_pair(p);
      const Eval e = evaluate(q, kappa, lam2);
      if (e.value <= cur.value) {
        p = std::move(q);
        cur = e;
      }
    }
    r.max_increase = std::max(r.max_increase, cur.value - history.back());
    history.push_back(cur.value);
    if (history.size() > 50 && history[history.size() - 51] - cur.value < cfg.tol) {
      r.iterations = it;
      r.value = cur.value;
      r.pair = std::move(p);
      return r;
    }
  }
  throw NoConvergence("minimize_spherical", cfg.max_iter, history[history.size() - 51] - cur.value);
}

SphericalPair test_pair(int n, int m) {
  SphericalPair p = SphericalPair::make(n, m);
  for (int i = 0; i < m; ++i) {
    p.ubar[i] = std::max(std::cos(p.alpha[i]), 0.0);
    p.vbar[i] = std::max(-std::cos(p.alpha[i]), 0.0);
  }
  normalize(p, p.ubar);
  normalize(p, p.vbar);
  return p;
}

}  // namespace

double test_function_value(double kappa, double lambda_kappa, int m, int n) {
  return evaluate(test_pair(n, m), kappa, lambda_kappa * lambda_kappa).value;
}

MinimizerReport minimize_spherical(double kappa, double lambda_kappa, int m, const SolveConfig& cfg, int n) {
  cfg.validate();
  require(kappa >= 1.0, "kappa must be at least 1");
  require(lambda_kappa > 0.0 && std::isfinite(lambda_kappa), "lambda_kappa must be positive");
  const double lam2 = lambda_kappa * lambda_kappa;

  std::vector<SphericalPair> starts{test_pair(n, m)};
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int k = 0; k < 3; ++k) {
    SphericalPair p = SphericalPair::make(n, m);
    for (int i = 0; i < m; ++i) {
      p.ubar[i] = unif(rng);
      p.vbar[i] = unif(rng);
    }
    normalize(p, p.ubar);
    normalize(p, p.vbar);
    starts.push_back(std::move(p));
  }

  RunResult best;
  bool have = false;
  for (auto& s : starts) {
    RunResult r = descend(std::move(s), kappa, lam2, cfg);
    if (!have || r.value < best.value) {
      best = std::move(r);
      have = true;
    }
  }

  const SphericalPair& p = best.pair;
  const Eval e = evaluate(p, kappa, lam2);
  const double gx = gamma_prime(e.x, n), gy = gamma_prime(e.y, n);
  MinimizerReport rep;
  rep.n = n;
  rep.kappa = kappa;
  rep.lambda_kappa = lambda_kappa;
  rep.value = e.value;
  rep.x_kappa = e.x;
  rep.y_kappa = e.y;
  rep.mult1 = e.x + gy / gx * kappa * e.overlap;
  rep.mult2 = e.y + lam2 * gx / gy * kappa * e.overlap;
  rep.xi_kappa = std::sqrt((lam2 + gy / gx) / (1.0 + lam2 * gx / gy));
  for (int i = 0; i < m; ++i) rep.seg = std::max(rep.seg, p.ubar[i] * p.vbar[i]);
  rep.iterations = best.iterations;
  rep.max_increase = best.max_increase;
  rep.pair = p;
  return rep;
}

SweepFit fit_deficit(std::vector<double> kappas, std::vector<double> values) {
  require(kappas.size() == values.size(), "kappas and values differ in length");
  require(kappas.size() >= 3, "need at least three kappa values");
  const auto [lo, hi] = std::minmax_element(kappas.begin(), kappas.end());
  require(*lo > 0.0 && *hi / *lo >= 100.0 * (1 - 1e-12), "kappas must span at least two decades");
  SweepFit fit;
  std::vector<double> deficit;
  for (double v : values) {
    if (v >= 2.0) fit.deficit_nonpositive = true;
    deficit.push_back(std::max(2.0 - v, 1e-15));
  }
  const LineFit lf = fit_loglog(kappas, deficit);
  fit.exponent = lf.slope;
  fit.C = std::exp(lf.intercept);
  return fit;
}

SweepFit kappa_sweep(const std::vector<double>& kappas, double lambda_kappa, int m, const SolveConfig& cfg, int n) {
  std::vector<MinimizerReport> reps(kappas.size());
  std::exception_ptr err;
  const long count = static_cast<long>(kappas.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < count; ++k) {
    try {
      reps[static_cast<std::size_t>(k)] = minimize_spherical(kappas[static_cast<std::size_t>(k)], lambda_kappa, m, cfg, n);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  std::vector<double> values;
  for (const auto& r : reps) values.push_back(r.value);
  SweepFit fit = fit_deficit(kappas, values);
  fit.reports = std::move(reps);
  return fit;
}

}  // namespace segsym
