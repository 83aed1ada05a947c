#pragma once

#include <utility>
#include <vector>

#include "segsym/config.hpp"
#include "segsym/grid.hpp"

namespace segsym {

/// Samples of the 1D pair on [-L, L] at x_i = -L + i h.
struct Profile1D {
  double half_length = 0.0;
  double h = 0.0;
  std::vector<double> u;
  std::vector<double> v;
  double residual = 0.0;
  long iterations = 0;

  std::size_t size() const { return u.size(); }
  double x(std::size_t i) const { return -half_length + static_cast<double>(i) * h; }
};

/// Sup-norm of the centred 3-point residual of u'' = u v^2, v'' = v u^2 over
/// the interior nodes.
double profile_residual(const Profile1D& p);

/// Damped Newton on the centred-difference system with Dirichlet data
/// u(-L) = v(L) = cfg.boundary_floor, u(L) = v(-L) = L.
Profile1D solve_profile(double half_length, double h, const SolveConfig& cfg = {});

/// Root of u - v, linearly interpolated; u - v must change sign exactly once.
double crossing_point(const Profile1D& p);

struct AsymptoticSlopes {
  double slope_plus;   ///< slope of u on [L/2, 9L/10]
  double slope_minus;  ///< slope of v on [-9L/10, -L/2]
};

AsymptoticSlopes asymptotic_slope(const Profile1D& p);

/// u2(x) = u(x . direction), v2(x) = v(x . direction) by linear interpolation.
std::pair<Field, Field> extend_to_2d(const Profile1D& p, const Grid2D& g, Point direction);

/// Linear interpolation of a profile component at coordinate s.
double profile_at(const Profile1D& p, const std::vector<double>& comp, double s);

}  // namespace segsym
