#include "segsym/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

namespace segsym::kernels {

Mask interior_mask(const Grid2D& g) {
  Mask m(g.size(), 0);
  for (int j = 1; j < g.ny - 1; ++j)
    for (int i = 1; i < g.nx - 1; ++i) m[g.index(i, j)] = 1;
  return m;
}

Mask disk_mask(const Grid2D& g, Point c, double radius) {
  Mask m(g.size(), 0);
  for (int j = 1; j < g.ny - 1; ++j)
    for (int i = 1; i < g.nx - 1; ++i)
      if (norm(g.node(i, j) - c) < radius) m[g.index(i, j)] = 1;
  return m;
}

double optimal_omega(const Grid2D& g, double shift_h2) {
  const double rho = (2.0 * std::cos(std::numbers::pi / (g.nx - 1)) + 2.0 * std::cos(std::numbers::pi / (g.ny - 1))) /
                     (4.0 + shift_h2);
  return 2.0 / (1.0 + std::sqrt(std::max(0.0, 1.0 - rho * rho)));
}

int configure_threads() {
  int n = omp_get_num_procs();
  if (const char* env = std::getenv("SEGSYM_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  n = std::max(1, n);
  omp_set_num_threads(n);
  return n;
}

namespace {

inline void pair_row(const Grid2D& g, const Mask& mask, double* u, double* v, PairSweep p, int j, int color) {
  const std::size_t nx = static_cast<std::size_t>(g.nx);
  const int start = 1 + ((j + 1 + color) & 1);
  for (int i = start; i < g.nx - 1; i += 2) {
    const std::size_t k = g.index(i, j);
    if (!mask[k]) continue;
    const double su = u[k - 1] + u[k + 1] + u[k - nx] + u[k + nx];
    const double ustar = su / (4.0 + p.kappa_h2 * v[k] * v[k]);
    const double un = std::max(0.0, u[k] + p.omega * (ustar - u[k]));
    u[k] = un;
    const double sv = v[k - 1] + v[k + 1] + v[k - nx] + v[k + nx];
    const double vstar = sv / (4.0 + p.kappa_h2 * un * un);
    v[k] = std::max(0.0, v[k] + p.omega * (vstar - v[k]));
  }
}

inline void linear_row(const Grid2D& g, const Mask& mask, double* w, LinearSweep p, int j, int color) {
  const std::size_t nx = static_cast<std::size_t>(g.nx);
  const int start = 1 + ((j + 1 + color) & 1);
  const double denom = 4.0 + p.shift_h2;
  for (int i = start; i < g.nx - 1; i += 2) {
    const std::size_t k = g.index(i, j);
    if (!mask[k]) continue;
    const double s = w[k - 1] + w[k + 1] + w[k - nx] + w[k + nx];
    w[k] += p.omega * (s / denom - w[k]);
  }
}

inline double pair_residual_row(const Grid2D& g, const Mask& mask, const double* u, const double* v, double kappa,
                                int j) {
  const std::size_t nx = static_cast<std::size_t>(g.nx);
  const double inv_h2 = 1.0 / (g.h * g.h);
  double r = 0.0;
  for (int i = 1; i < g.nx - 1; ++i) {
    const std::size_t k = g.index(i, j);
    if (!mask[k]) continue;
    const double lu = (u[k - 1] + u[k + 1] + u[k - nx] + u[k + nx] - 4.0 * u[k]) * inv_h2;
    const double lv = (v[k - 1] + v[k + 1] + v[k - nx] + v[k + nx] - 4.0 * v[k]) * inv_h2;
    r = std::max(r, std::abs(lu - kappa * u[k] * v[k] * v[k]));
    r = std::max(r, std::abs(lv - kappa * v[k] * u[k] * u[k]));
  }
  return r;
}

inline double linear_residual_row(const Grid2D& g, const Mask& mask, const double* w, double shift, int j,
                                  bool relative) {
  const std::size_t nx = static_cast<std::size_t>(g.nx);
  const double inv_h2 = 1.0 / (g.h * g.h);
  double r = 0.0;
  for (int i = 1; i < g.nx - 1; ++i) {
    const std::size_t k = g.index(i, j);
    if (!mask[k]) continue;
    const double res = std::abs((w[k - 1] + w[k + 1] + w[k - nx] + w[k + nx] - 4.0 * w[k]) * inv_h2 - shift * w[k]);
    r = std::max(r, relative ? res / ((4.0 * inv_h2 + shift) * std::abs(w[k]) + 1e-300) : res);
  }
  return r;
}

inline double energy_row(const Grid2D& g, const double* u, const double* v, double kappa_h2, int j) {
  const std::size_t nx = static_cast<std::size_t>(g.nx);
  double e = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    const std::size_t k = g.index(i, j);
    if (i + 1 < g.nx) {
      const double du = u[k + 1] - u[k];
      const double dv = v[k + 1] - v[k];
      e += du * du + dv * dv;
    }
    if (j + 1 < g.ny) {
      const double du = u[k + nx] - u[k];
      const double dv = v[k + nx] - v[k];
      e += du * du + dv * dv;
    }
    e += kappa_h2 * u[k] * u[k] * v[k] * v[k];
  }
  return e;
}

}  // namespace

namespace serial {

void sweep_pair(const Grid2D& g, const Mask& mask, std::span<double> u, std::span<double> v, PairSweep p) {
  for (int color = 0; color < 2; ++color)
    for (int j = 1; j < g.ny - 1; ++j) pair_row(g, mask, u.data(), v.data(), p, j, color);
}

void sweep_linear(const Grid2D& g, const Mask& mask, std::span<double> w, LinearSweep p) {
  for (int color = 0; color < 2; ++color)
    for (int j = 1; j < g.ny - 1; ++j) linear_row(g, mask, w.data(), p, j, color);
}

double residual_pair(const Grid2D& g, const Mask& mask, std::span<const double> u, std::span<const double> v,
                     double kappa) {
  double r = 0.0;
  for (int j = 1; j < g.ny - 1; ++j) r = std::max(r, pair_residual_row(g, mask, u.data(), v.data(), kappa, j));
  return r;
}

double residual_linear(const Grid2D& g, const Mask& mask, std::span<const double> w, double shift) {
  double r = 0.0;
  for (int j = 1; j < g.ny - 1; ++j) r = std::max(r, linear_residual_row(g, mask, w.data(), shift, j, false));
  return r;
}

double relative_residual_linear(const Grid2D& g, const Mask& mask, std::span<const double> w, double shift) {
  double r = 0.0;
  for (int j = 1; j < g.ny - 1; ++j) r = std::max(r, linear_residual_row(g, mask, w.data(), shift, j, true));
  return r;
}

double pair_energy(const Grid2D& g, std::span<const double> u, std::span<const double> v, double kappa) {
  double e = 0.0;
  const double kh2 = kappa * g.h * g.h;
  for (int j = 0; j < g.ny; ++j) e += energy_row(g, u.data(), v.data(), kh2, j);
  return e;
}

}  // namespace serial

namespace parallel {

void sweep_pair(const Grid2D& g, const Mask& mask, std::span<double> u, std::span<double> v, PairSweep p) {
  double* up = u.data();
  double* vp = v.data();
  for (int color = 0; color < 2; ++color) {
#pragma omp parallel for schedule(static)
    for (int j = 1; j < g.ny - 1; ++j) pair_row(g, mask, up, vp, p, j, color);
  }
}

void sweep_linear(const Grid2D& g, const Mask& mask, std::span<double> w, LinearSweep p) {
  double* wp = w.data();
  for (int color = 0; color < 2; ++color) {
#pragma omp parallel for schedule(static)
    for (int j = 1; j < g.ny - 1; ++j) linear_row(g, mask, wp, p, j, color);
  }
}

double residual_pair(const Grid2D& g, const Mask& mask, std::span<const double> u, std::span<const double> v,
                     double kappa) {
  double r = 0.0;
#pragma omp parallel for schedule(static) reduction(max : r)
  for (int j = 1; j < g.ny - 1; ++j) r = std::max(r, pair_residual_row(g, mask, u.data(), v.data(), kappa, j));
  return r;
}

double residual_linear(const Grid2D& g, const Mask& mask, std::span<const double> w, double shift) {
  double r = 0.0;
#pragma omp parallel for schedule(static) reduction(max : r)
  for (int j = 1; j < g.ny - 1; ++j) r = std::max(r, linear_residual_row(g, mask, w.data(), shift, j, false));
  return r;
}

double relative_residual_linear(const Grid2D& g, const Mask& mask, std::span<const double> w, double shift) {
  double r = 0.0;
#pragma omp parallel for schedule(static) reduction(max : r)
  for (int j = 1; j < g.ny - 1; ++j) r = std::max(r, linear_residual_row(g, mask, w.data(), shift, j, true));
  return r;
}

double pair_energy(const Grid2D& g, std::span<const double> u, std::span<const double> v, double kappa,
                   bool ordered) {
  const double kh2 = kappa * g.h * g.h;
  if (!ordered) {
    double e = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : e)
    for (int j = 0; j < g.ny; ++j) e += energy_row(g, u.data(), v.data(), kh2, j);
    return e;
  }
  std::vector<double> rows(static_cast<std::size_t>(g.ny));
#pragma omp parallel for schedule(static)
  for (int j = 0; j < g.ny; ++j) rows[static_cast<std::size_t>(j)] = energy_row(g, u.data(), v.data(), kh2, j);
  double e = 0.0;
  for (double r : rows) e += r;
  return e;
}

}  // namespace parallel

}  // namespace segsym::kernels
