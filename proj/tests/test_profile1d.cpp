#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "segsym/error.hpp"
#include "segsym/profile1d.hpp"

using namespace segsym;

namespace {

const Profile1D& standard() {
  static const Profile1D p = solve_profile(20.0, 0.05);
  return p;
}

Profile1D synthetic(double (*fu)(double), double (*fv)(double)) {
  Profile1D p;
  p.half_length = 20.0;
  p.h = 0.05;
  for (int i = 0; i <= 800; ++i) {
    p.u.push_back(fu(p.x(i)));
    p.v.push_back(fv(p.x(i)));
  }
  return p;
}

}  // namespace

TEST_CASE("profile converges and matches an independent residual") {
  const Profile1D& p = standard();
  CHECK(p.size() == 801);
  CHECK(p.residual <= 1e-10);
  CHECK(oracle::profile_residual(p.u, p.v, p.h) <= 1e-10);
  CHECK(p.u.front() == 1e-12);
  CHECK(p.u.back() == 20.0);
}

TEST_CASE("profile structure: growth, decay, monotonicity, positivity") {
  const Profile1D& p = standard();
  double offset_lo = 1e9, offset_hi = -1e9;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double x = p.x(i);
    if (x >= 5.0 && x <= 15.0) {
      offset_lo = std::min(offset_lo, p.u[i] - x);
      offset_hi = std::max(offset_hi, p.u[i] - x);
      CHECK(p.v[i] < 1e-4);
    }
    if (i > 0 && i + 1 < p.size()) {
      CHECK(p.u[i] > 0.0);
      CHECK(p.v[i] > 0.0);
    }
    if (i + 1 < p.size()) {
      CHECK(p.u[i + 1] - p.u[i] >= -1e-10);
      CHECK(p.v[i + 1] - p.v[i] <= 1e-10);
    }
    CHECK(p.u[i] + p.v[i] >= 0.3 * (1 + std::abs(x)) - 1e-9);
  }
  // u - x stays bounded; the finite interval tilts it slightly
  CHECK(std::max(std::abs(offset_lo), std::abs(offset_hi)) <= 1.0);
  CHECK(offset_hi - offset_lo <= 0.5);
}

TEST_CASE("profile reflection symmetry about the crossing point") {
  const Profile1D& p = standard();
  const double x0 = crossing_point(p);
  CHECK(std::abs(x0) <= 2 * p.h);
  double sym = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double r = 2 * x0 - p.x(i);
    if (std::abs(r) <= p.half_length) sym = std::max(sym, std::abs(profile_at(p, p.u, r) - p.v[i]));
  }
  CHECK(sym <= 1e-3);
}

TEST_CASE("asymptotic slope") {
  const AsymptoticSlopes s = asymptotic_slope(standard());
  CHECK(s.slope_plus >= 0.95);
  CHECK(s.slope_plus <= 1.05);
  const Profile1D big = solve_profile(40.0, 0.05);
  CHECK(std::abs(asymptotic_slope(big).slope_plus - 1.0) <= std::abs(s.slope_plus - 1.0) + 1e-9);
  CHECK(asymptotic_slope(synthetic([](double x) { return 2 * x; }, [](double) { return 1.0; })).slope_plus ==
        doctest::Approx(2.0).epsilon(1e-10));
  CHECK(std::abs(asymptotic_slope(synthetic([](double) { return 3.0; }, [](double) { return 1.0; })).slope_plus) <=
        1e-12);
}

TEST_CASE("crossing point errors") {
  try {
    crossing_point(synthetic([](double) { return 2.0; }, [](double) { return 1.0; }));
    FAIL("expected NoSignChange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoSignChange);
  }
  try {
    crossing_point(synthetic([](double x) { return std::sin(x); }, [](double) { return 0.0; }));
    FAIL("expected MultipleSignChanges");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MultipleSignChanges);
  }
}

TEST_CASE("profile preconditions") {
  CHECK_THROWS_AS(solve_profile(20.0, 0.2), Error);
  CHECK_THROWS_AS(solve_profile(5.0, 0.05), Error);
}

TEST_CASE("extension to the plane") {
  const Profile1D& p = standard();
  const Grid2D g = Grid2D::centered_square(4.0, 0.125);
  auto [u, v] = extend_to_2d(p, g, {1.0, 0.0});
  for (int j = 1; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) CHECK(u.at(i, j) == u.at(i, 0));

  const double th = 0.4;
  auto [ur, vr] = extend_to_2d(p, g, {std::cos(th), std::sin(th)});
  const Point along{-std::sin(th), std::cos(th)};
  for (double s : {-1.0, 0.0, 2.0}) {
    const Point base{s * std::cos(th), s * std::sin(th)};
    CHECK(interpolate(ur, base + 1.5 * along) - interpolate(vr, base + 1.5 * along) ==
          doctest::Approx(interpolate(ur, base) - interpolate(vr, base)).epsilon(2e-3));
  }
  CHECK_THROWS_AS(extend_to_2d(p, Grid2D::centered_square(30.0, 0.5), {1.0, 0.0}), Error);

  // residual of the 5-point stencil on the e1 extension: only the 1D stencil
  // survives, with linear interpolation between profile nodes
  const Grid2D fine(101, 5, 0.05, {-2.5, -0.1});
  auto [uf, vf] = extend_to_2d(p, fine, {1.0, 0.0});
  double res = 0.0;
  for (int i = 1; i + 1 < fine.nx; ++i) {
    const double lap = (uf.at(i - 1, 2) + uf.at(i + 1, 2) + uf.at(i, 1) + uf.at(i, 3) - 4 * uf.at(i, 2)) /
                       (fine.h * fine.h);
    res = std::max(res, std::abs(lap - uf.at(i, 2) * vf.at(i, 2) * vf.at(i, 2)));
  }
  CHECK(res <= p.residual + 1e-6);
}
