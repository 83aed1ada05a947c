#include "segsym/profile1d.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "segsym/error.hpp"
#include "segsym/stats.hpp"

namespace segsym {

namespace {

using Mat2 = std::array<double, 4>;  // row-major
using Vec2 = std::array<double, 2>;

Mat2 inverse(const Mat2& a) {
  const double det = a[0] * a[3] - a[1] * a[2];
  return {a[3] / det, -a[1] / det, -a[2] / det, a[0] / det};
}

Vec2 mul(const Mat2& a, const Vec2& x) { return {a[0] * x[0] + a[1] * x[1], a[2] * x[0] + a[3] * x[1]}; }

// Residual at interior node i (1 <= i <= n-2).
Vec2 residual_at(const std::vector<double>& u, const std::vector<double>& v, std::size_t i, double inv_h2) {
  return {(u[i - 1] - 2.0 * u[i] + u[i + 1]) * inv_h2 - u[i] * v[i] * v[i],
          (v[i - 1] - 2.0 * v[i] + v[i + 1]) * inv_h2 - v[i] * u[i] * u[i]};
}

double sup_residual(const std::vector<double>& u, const std::vector<double>& v, double inv_h2) {
  double r = 0.0;
  for (std::size_t i = 1; i + 1 < u.size(); ++i) {
    const Vec2 f = residual_at(u, v, i, inv_h2);
    r = std::max({r, std::abs(f[0]), std::abs(f[1])});
  }
  return r;
}

// Newton direction for the 2x2 block-tridiagonal Jacobian (off-diagonal
// blocks are I / h^2) by block Thomas elimination.
void newton_direction(const std::vector<double>& u, const std::vector<double>& v, double inv_h2,
                      std::vector<double>& du, std::vector<double>& dv) {
  const std::size_t n = u.size();
  std::vector<Mat2> cprime(n);
  std::vector<Vec2> dprime(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    Mat2 d = {-2.0 * inv_h2 - v[i] * v[i], -2.0 * u[i] * v[i], -2.0 * u[i] * v[i], -2.0 * inv_h2 - u[i] * u[i]};
    const Vec2 f = residual_at(u, v, i, inv_h2);
    Vec2 rhs = {-f[0], -f[1]};
    if (i > 1) {
      // d -= A * C'_{i-1}, rhs -= A * d'_{i-1}, with A = I / h^2
      for (int k = 0; k < 4; ++k) d[k] -= inv_h2 * cprime[i - 1][k];
      rhs[0] -= inv_h2 * dprime[i - 1][0];
      rhs[1] -= inv_h2 * dprime[i - 1][1];
    }
    const Mat2 dinv = inverse(d);
    cprime[i] = {dinv[0] * inv_h2, dinv[1] * inv_h2, dinv[2] * inv_h2, dinv[3] * inv_h2};
    dprime[i] = mul(dinv, rhs);
  }
  du.assign(n, 0.0);
  dv.assign(n, 0.0);
  Vec2 next = {0.0, 0.0};
  for (std::size_t i = n - 2; i >= 1; --i) {
    const Vec2 cx = mul(cprime[i], next);
    next = {dprime[i][0] - cx[0], dprime[i][1] - cx[1]};
    du[i] = next[0];
    dv[i] = next[1];
  }
}

void gauss_seidel(std::vector<double>& u, std::vector<double>& v, double h, int sweeps) {
  const double h2 = h * h;
  for (int s = 0; s < sweeps; ++s) {
    for (std::size_t i = 1; i + 1 < u.size(); ++i) {
      u[i] = (u[i - 1] + u[i + 1]) / (2.0 + h2 * v[i] * v[i]);
      v[i] = (v[i - 1] + v[i + 1]) / (2.0 + h2 * u[i] * u[i]);
    }
  }
}

}  // namespace

double profile_residual(const Profile1D& p) { return sup_residual(p.u, p.v, 1.0 / (p.h * p.h)); }

Profile1D solve_profile(double L, double h, const SolveConfig& cfg) {
  cfg.validate();
  require(L >= 10.0, "profile half-length must be at least 10");
  require(h > 0.0 && h <= 0.1, "profile spacing must lie in (0, 0.1]");
  const auto n = static_cast<std::size_t>(std::lround(2.0 * L / h)) + 1;
  require(std::abs((n - 1) * h - 2.0 * L) < 1e-9 * L, "2L/h must be an integer");

  Profile1D p;
  p.half_length = L;
  p.h = h;
  p.u.resize(n);
  p.v.resize(n);
  const double floor = cfg.boundary_floor;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = p.x(i);
    p.u[i] = std::max(x, floor);
    p.v[i] = std::max(-x, floor);
  }
  p.u.front() = floor;
  p.u.back() = L;
  p.v.front() = L;
  p.v.back() = floor;

  const double inv_h2 = 1.0 / (h * h);
  double res = sup_residual(p.u, p.v, inv_h2);
  std::vector<double> du, dv, tu(n), tv(n);
  long it = 0;
  int fallbacks = 0;
  while (res > cfg.tol) {
    if (++it > cfg.max_iter) throw NoConvergence("solve_profile", it - 1, res);
    newton_direction(p.u, p.v, inv_h2, du, dv);
    double t = cfg.damping;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving, t *= 0.5) {
      bool positive = true;
      for (std::size_t i = 1; i + 1 < n; ++i) {
        tu[i] = p.u[i] + t * du[i];
        tv[i] = p.v[i] + t * dv[i];
        if (!(tu[i] > 0.0) || !(tv[i] > 0.0)) positive = false;
      }
      if (!positive) continue;
      tu.front() = p.u.front();
      tu.back() = p.u.back();
      tv.front() = p.v.front();
      tv.back() = p.v.back();
      const double trial = sup_residual(tu, tv, inv_h2);
      if (trial < res) {
        p.u.swap(tu);
        p.v.swap(tv);
        res = trial;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (++fallbacks > 3) throw NoConvergence("solve_profile", it, res);
      gauss_seidel(p.u, p.v, h, 500);
      res = sup_residual(p.u, p.v, inv_h2);
    }
  }
  p.residual = res;
  p.iterations = it;
  return p;
}

double crossing_point(const Profile1D& p) {
  const std::size_t n = p.size();
  int last_sign = 0;
  int changes = 0;
  std::size_t at = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = p.u[i] - p.v[i];
    const int s = (d > 0) - (d < 0);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) {
      ++changes;
      at = i;
    }
    last_sign = s;
  }
  if (changes == 0) fail(ErrorKind::NoSignChange, "u - v keeps one sign on the profile");
  if (changes > 1) fail(ErrorKind::MultipleSignChanges, "u - v changes sign " + std::to_string(changes) + " times");
  // walk back from the first node of the new sign to the last node of the old one
  std::size_t lo = at - 1;
  while (lo > 0 && p.u[lo] == p.v[lo]) --lo;
  const double d0 = p.u[lo] - p.v[lo];
  const double d1 = p.u[at] - p.v[at];
  if (at - lo > 1) return 0.5 * (p.x(lo + 1) + p.x(at - 1));
  return p.x(lo) + (p.x(at) - p.x(lo)) * d0 / (d0 - d1);
}

AsymptoticSlopes asymptotic_slope(const Profile1D& p) {
  const double L = p.half_length;
  std::vector<double> xs, us, xm, vm;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double x = p.x(i);
    if (x >= 0.5 * L - 1e-12 && x <= 0.9 * L + 1e-12) {
      xs.push_back(x);
      us.push_back(p.u[i]);
    }
    if (x >= -0.9 * L - 1e-12 && x <= -0.5 * L + 1e-12) {
      xm.push_back(x);
      vm.push_back(p.v[i]);
    }
  }
  return {fit_line(xs, us).slope, fit_line(xm, vm).slope};
}

double profile_at(const Profile1D& p, const std::vector<double>& comp, double s) {
  const double t = (s + p.half_length) / p.h;
  const auto last = static_cast<double>(p.size() - 1);
  if (t < -1e-9 || t > last + 1e-9) {
    std::ostringstream os;
    os << "coordinate " << s << " outside profile interval [-" << p.half_length << ", " << p.half_length << "]";
    fail(ErrorKind::DomainTooLarge, os.str());
  }
  const double tc = std::clamp(t, 0.0, last);
  const auto i = std::min(static_cast<std::size_t>(tc), p.size() - 2);
  const double w = tc - static_cast<double>(i);
  return (1.0 - w) * comp[i] + w * comp[i + 1];
}

std::pair<Field, Field> extend_to_2d(const Profile1D& p, const Grid2D& g, Point direction) {
  const double len = norm(direction);
  require(len > 0.0, "extension direction must be nonzero");
  const Point e = (1.0 / len) * direction;
  Field u(g), v(g);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double s = dot(g.node(i, j), e);
      u.at(i, j) = profile_at(p, p.u, s);
      v.at(i, j) = profile_at(p, p.v, s);
    }
  }
  return {std::move(u), std::move(v)};
}

}  // namespace segsym
