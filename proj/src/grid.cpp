#include "segsym/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "segsym/error.hpp"

namespace segsym {

double norm(Point p) { return std::hypot(p.x, p.y); }

Grid2D::Grid2D(int nx_, int ny_, double h_, Point origin_) : nx(nx_), ny(ny_), h(h_), origin(origin_) {
  require(nx >= 3 && ny >= 3, "grid needs nx >= 3 and ny >= 3");
  require(h > 0.0 && std::isfinite(h), "grid spacing must be positive");
}

Grid2D Grid2D::centered_square(double half_width, double h) {
  require(half_width > 0.0 && h > 0.0, "centered_square needs positive sizes");
  const int n = static_cast<int>(std::lround(2.0 * half_width / h)) + 1;
  return Grid2D(n, n, h, {-half_width, -half_width});
}

bool Grid2D::contains(Point p, double slack) const {
  const double s = slack * std::max(1.0, h);
  return p.x >= origin.x - s && p.x <= x_max() + s && p.y >= origin.y - s && p.y <= y_max() + s;
}

bool Grid2D::contains_ball(Point c, double r) const {
  return contains({c.x - r, c.y - r}, 1e-9) && contains({c.x + r, c.y + r}, 1e-9);
}

bool Grid2D::same_as(const Grid2D& o) const {
  return nx == o.nx && ny == o.ny && h == o.h && origin.x == o.origin.x && origin.y == o.origin.y;
}

Field::Field(const Grid2D& g, double fill) : grid(g), values(g.size(), fill) {}

Field::Field(const Grid2D& g, std::vector<double> v) : grid(g), values(std::move(v)) {
  require(values.size() == grid.size(), "field value count does not match its grid");
}

Field Field::sample(const Grid2D& g, const std::function<double(Point)>& fn) {
  Field f(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) f.at(i, j) = fn(g.node(i, j));
  return f;
}

Field combine(const Field& a, const Field& b, const std::function<double(double, double)>& op) {
  require(a.grid.same_as(b.grid), "fields must share one grid");
  Field out(a.grid);
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] = op(a.values[k], b.values[k]);
  return out;
}

Field transform(const Field& a, const std::function<double(double)>& op) {
  Field out(a.grid);
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] = op(a.values[k]);
  return out;
}

VectorField gradient(const Field& f) {
  const Grid2D& g = f.grid;
  VectorField out{g, std::vector<double>(g.size()), std::vector<double>(g.size())};
  const double inv2h = 1.0 / (2.0 * g.h);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      double dx;
      if (i == 0)
        dx = (-3.0 * f.at(0, j) + 4.0 * f.at(1, j) - f.at(2, j)) * inv2h;
      else if (i == g.nx - 1)
        dx = (3.0 * f.at(i, j) - 4.0 * f.at(i - 1, j) + f.at(i - 2, j)) * inv2h;
      else
        dx = (f.at(i + 1, j) - f.at(i - 1, j)) * inv2h;
      double dy;
      if (j == 0)
        dy = (-3.0 * f.at(i, 0) + 4.0 * f.at(i, 1) - f.at(i, 2)) * inv2h;
      else if (j == g.ny - 1)
        dy = (3.0 * f.at(i, j) - 4.0 * f.at(i, j - 1) + f.at(i, j - 2)) * inv2h;
      else
        dy = (f.at(i, j + 1) - f.at(i, j - 1)) * inv2h;
      out.x[g.index(i, j)] = dx;
      out.y[g.index(i, j)] = dy;
    }
  }
  return out;
}

double interpolate(const Field& f, Point p) {
  const Grid2D& g = f.grid;
  if (!g.contains(p)) {
    std::ostringstream os;
    os << "point (" << p.x << ", " << p.y << ") outside grid";
    fail(ErrorKind::PointOutsideDomain, os.str());
  }
  // points within rounding of a grid line snap onto it, so nodes return their stored values
  auto snap = [](double s) { return std::abs(s - std::round(s)) < 1e-9 ? std::round(s) : s; };
  const double sx = std::clamp(snap((p.x - g.origin.x) / g.h), 0.0, double(g.nx - 1));
  const double sy = std::clamp(snap((p.y - g.origin.y) / g.h), 0.0, double(g.ny - 1));
  const int i = std::min(static_cast<int>(sx), g.nx - 2);
  const int j = std::min(static_cast<int>(sy), g.ny - 2);
  const double tx = sx - i;
  const double ty = sy - j;
  return (1 - tx) * (1 - ty) * f.at(i, j) + tx * (1 - ty) * f.at(i + 1, j) +
         (1 - tx) * ty * f.at(i, j + 1) + tx * ty * f.at(i + 1, j + 1);
}

double rim_fraction(double dist, double r, double h, double cx, double cy) {
  const double width = h * (std::abs(cx) + std::abs(cy));
  return std::clamp(0.5 + (r - dist) / width, 0.0, 1.0);
}

double ball_integral(const Grid2D& g, Point c, double r,
                     const std::function<double(std::size_t)>& integrand) {
  if (!(r > 0.0) || !g.contains_ball(c, r)) {
    std::ostringstream os;
    os << "ball of radius " << r << " at (" << c.x << ", " << c.y << ") exceeds the grid";
    fail(ErrorKind::BallOutsideDomain, os.str());
  }
  const double reach = r + g.h;
  const int i0 = std::max(0, static_cast<int>(std::floor((c.x - reach - g.origin.x) / g.h)));
  const int i1 = std::min(g.nx - 1, static_cast<int>(std::ceil((c.x + reach - g.origin.x) / g.h)));
  const int j0 = std::max(0, static_cast<int>(std::floor((c.y - reach - g.origin.y) / g.h)));
  const int j1 = std::min(g.ny - 1, static_cast<int>(std::ceil((c.y + reach - g.origin.y) / g.h)));
  double total = 0.0;
  for (int j = j0; j <= j1; ++j) {
    double row = 0.0;
    const double dy = g.y(j) - c.y;
    for (int i = i0; i <= i1; ++i) {
      const double dx = g.x(i) - c.x;
      const double d = std::hypot(dx, dy);
      double frac;
      if (d <= r - g.h * std::numbers::sqrt2 / 2)
        frac = 1.0;
      else if (d >= r + g.h * std::numbers::sqrt2 / 2)
        frac = 0.0;
      else
        frac = d > 0.0 ? rim_fraction(d, r, g.h, dx / d, dy / d) : 1.0;
      if (frac > 0.0) row += frac * integrand(g.index(i, j));
    }
    total += row;
  }
  return total * g.h * g.h;
}

double ball_integral(const Field& f, Point c, double r) {
  return ball_integral(f.grid, c, r, [&](std::size_t k) { return f.values[k]; });
}

int default_shell_samples(double r, double h) {
  return std::max(128, static_cast<int>(std::ceil(16.0 * std::numbers::pi * r / h)));
}

double shell_integral(const Field& f, Point c, double r, int m) {
  if (m < 16) fail(ErrorKind::MSampleTooSmall, "shell quadrature needs at least 16 samples");
  if (!(r > 0.0) || !f.grid.contains_ball(c, r)) {
    std::ostringstream os;
    os << "circle of radius " << r << " at (" << c.x << ", " << c.y << ") exceeds the grid";
    fail(ErrorKind::BallOutsideDomain, os.str());
  }
  const double dtheta = 2.0 * std::numbers::pi / m;
  double sum = 0.0;
  for (int k = 0; k < m; ++k) {
    const double t = k * dtheta;
    sum += interpolate(f, {c.x + r * std::cos(t), c.y + r * std::sin(t)});
  }
  return r * sum * dtheta;
}

double shell_integral(const Field& f, Point c, double r) {
  return shell_integral(f, c, r, default_shell_samples(r, f.grid.h));
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace segsym
