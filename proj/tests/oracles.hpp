#pragma once

// Reference values computed without the library's quadrature or solvers.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

// 8-point Gauss-Legendre on [-1, 1].
inline const double gl_x[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
                               0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
inline const double gl_w[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
                               0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

/// int_{B_r(c)} f by composite Gauss-Legendre in rho and the midpoint rule in theta.
inline double disk_integral(const std::function<double(double, double)>& f, double cx, double cy, double r,
                            int panels = 64, int angles = 512) {
  double total = 0.0;
  for (int k = 0; k < angles; ++k) {
    const double t = 2.0 * pi * (k + 0.5) / angles;
    const double c = std::cos(t), s = std::sin(t);
    for (int p = 0; p < panels; ++p) {
      const double a = r * p / panels, b = r * (p + 1) / panels;
      for (int q = 0; q < 8; ++q) {
        const double rho = 0.5 * (a + b) + 0.5 * (b - a) * gl_x[q];
        total += 0.5 * (b - a) * gl_w[q] * rho * f(cx + rho * c, cy + rho * s);
      }
    }
  }
  return total * 2.0 * pi / angles;
}

/// int_{dB_r(c)} f with many midpoint samples.
inline double circle_integral(const std::function<double(double, double)>& f, double cx, double cy, double r,
                              int m = 20000) {
  double s = 0.0;
  for (int k = 0; k < m; ++k) {
    const double t = 2.0 * pi * (k + 0.5) / m;
    s += f(cx + r * std::cos(t), cy + r * std::sin(t));
  }
  return s * 2.0 * pi * r / m;
}

/// Smallest C >= 0 with log J_j - C r_j^-1/2 >= log J_i - C r_i^-1/2 for all i < j.
inline double acf_constant(const std::vector<double>& r, const std::vector<double>& J) {
  double c = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = i + 1; j < r.size(); ++j) {
      const double need = (std::log(J[i]) - std::log(J[j])) / (1.0 / std::sqrt(r[i]) - 1.0 / std::sqrt(r[j]));
      c = std::max(c, need);
    }
  return c;
}

/// Weighted measure of {f > t}, summed in sorted order.
inline double level_measure(const std::vector<double>& f, const std::vector<double>& w, double t) {
  std::vector<double> ws;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] > t) ws.push_back(w[i]);
  std::sort(ws.begin(), ws.end());
  double s = 0.0;
  for (double x : ws) s += x;
  return s;
}

/// Layer-cake value of sum w f g: int_0^inf int_0^inf |{f > s} cap {g > t}| ds dt,
/// evaluated exactly on piecewise-constant level sets.
inline double layer_cake_product(const std::vector<double>& f, const std::vector<double>& g,
                                 const std::vector<double>& w) {
  std::vector<double> fs = f, gs = g;
  fs.push_back(0.0);
  gs.push_back(0.0);
  std::sort(fs.begin(), fs.end());
  std::sort(gs.begin(), gs.end());
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
  gs.erase(std::unique(gs.begin(), gs.end()), gs.end());
  double total = 0.0;
  for (std::size_t a = 0; a + 1 < fs.size(); ++a)
    for (std::size_t b = 0; b + 1 < gs.size(); ++b) {
      double meas = 0.0;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] > fs[a] && g[i] > gs[b]) meas += w[i];
      total += meas * (fs[a + 1] - fs[a]) * (gs[b + 1] - gs[b]);
    }
  return total;
}

/// sup over interior nodes of the 3-point residual of u'' = u v^2, v'' = v u^2.
inline double profile_residual(const std::vector<double>& u, const std::vector<double>& v, double h) {
  double r = 0.0;
  for (std::size_t i = 1; i + 1 < u.size(); ++i) {
    const double ru = (u[i - 1] - 2 * u[i] + u[i + 1]) / (h * h) - u[i] * v[i] * v[i];
    const double rv = (v[i - 1] - 2 * v[i] + v[i + 1]) / (h * h) - v[i] * u[i] * u[i];
    r = std::max({r, std::abs(ru), std::abs(rv)});
  }
  return r;
}

/// Radial solution of w'' + w'/r = M w on B_R with w(R) = A: A I0(sqrt(M) r) / I0(sqrt(M) R).
inline double radial_decay(double M, double A, double R, double r) {
  return A * std::cyl_bessel_i(0.0, std::sqrt(M) * r) / std::cyl_bessel_i(0.0, std::sqrt(M) * R);
}

inline double gamma(double x, int n) {
  const double a = 0.5 * (n - 2);
  return std::sqrt(a * a + x) - a;
}

}  // namespace oracle
