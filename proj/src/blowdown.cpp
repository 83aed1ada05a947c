#include "segsym/blowdown.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "segsym/diagnostics.hpp"
#include "segsym/error.hpp"

namespace segsym {

double compute_L(const Field& u, const Field& v, double R) {
  require(u.grid.same_as(v.grid), "u and v live on different grids");
  require(R > 0.0, "radius must be positive");
  if (!u.grid.contains_ball({}, R)) fail(ErrorKind::BallOutsideDomain, "shell leaves the grid");
  const Field mass = combine(u, v, [](double a, double b) { return a * a + b * b; });
  const double s = shell_integral(mass, {}, R) / R;
  if (s <= 1e-14) fail(ErrorKind::ZeroDenominator, "shell integral of u^2 + v^2 vanishes");
  return std::sqrt(s);
}

Grid2D unit_target(double h) {
  require(h > 0.0 && h <= 0.25, "target spacing must lie in (0, 1/4]");
  const int half = static_cast<int>(std::ceil(1.0 / h)) + 4;
  return {2 * half + 1, 2 * half + 1, h, {-half * h, -half * h}};
}

Rescaled rescale(const Field& u, const Field& v, double R, const Grid2D& target, double L) {
  require(u.grid.same_as(v.grid), "u and v live on different grids");
  require(R > 0.0, "radius must be positive");
  const Grid2D& s = u.grid;
  const bool fits = R * target.origin.x >= s.origin.x - 1e-12 && R * target.origin.y >= s.origin.y - 1e-12 &&
                    R * target.x_max() <= s.x_max() + 1e-12 && R * target.y_max() <= s.y_max() + 1e-12;
  if (!fits) fail(ErrorKind::DomainTooLarge, "R times the target extent leaves the source grid");
  Rescaled out;
  out.L = L > 0.0 ? L : compute_L(u, v, R);
  out.u = Field(target);
  out.v = Field(target);
  for (int j = 0; j < target.ny; ++j)
    for (int i = 0; i < target.nx; ++i) {
      const Point p = R * target.node(i, j);
      out.u.at(i, j) = interpolate(u, p) / out.L;
      out.v.at(i, j) = interpolate(v, p) / out.L;
    }
  return out;
}

DirectionConvergence direction_convergence(const Field& u, const Field& v, std::span<const double> radii,
                                           double target_h) {
  require(radii.size() >= 3, "need at least three radii");
  for (std::size_t i = 1; i < radii.size(); ++i) require(radii[i] > radii[i - 1], "radii must increase");
  const Grid2D target = unit_target(target_h);
  DirectionConvergence out;
  out.records.resize(radii.size());
  std::exception_ptr err;
  const long count = static_cast<long>(radii.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < count; ++k) {
    try {
      const double R = radii[static_cast<std::size_t>(k)];
      const Rescaled r = rescale(u, v, R, target);
      const Flatness f = flatness_direction(r.u, r.v, {}, 1.0);
      auto& rec = out.records[static_cast<std::size_t>(k)];
      rec.R = R;
      rec.L = r.L;
      rec.e = f.e;
      rec.magnitude = f.magnitude;
      rec.flatness = f.h_flat;
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);

  for (std::size_t k = 1; k < out.records.size(); ++k) {
    const Point a = out.records[k - 1].e, b = out.records[k].e;
    out.cauchy_gap = std::max(out.cauchy_gap, std::abs(std::atan2(a.x * b.y - a.y * b.x, dot(a, b))));
  }

  const Point e = out.records.back().e;
  const Field w = combine(u, v, [](double a, double b) { return a - b; });
  const VectorField gw = gradient(w);
  for (auto& rec : out.records) {
    const double s = ball_integral(u.grid, {}, rec.R, [&](std::size_t k) {
      const double dx = gw.x[k] - e.x, dy = gw.y[k] - e.y;
      return dx * dx + dy * dy;
    });
    rec.deficit = s / (rec.R * rec.R);
  }
  return out;
}

}  // namespace segsym
