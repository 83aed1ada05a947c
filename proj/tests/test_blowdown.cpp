#include <doctest.h>

#include <cmath>
#include <numbers>

#include "segsym/blowdown.hpp"
#include "segsym/error.hpp"

using namespace segsym;
using std::numbers::pi;

namespace {

struct Pair {
  Field u, v;
};

Pair linear(const Grid2D& g, Point e = {1.0, 0.0}) {
  return {Field::sample(g, [=](Point p) { return std::max(p.x * e.x + p.y * e.y, 0.0); }),
          Field::sample(g, [=](Point p) { return std::max(-(p.x * e.x + p.y * e.y), 0.0); })};
}

}  // namespace

TEST_CASE("L of the linear pair is sqrt(pi) R") {
  const Grid2D g = Grid2D::centered_square(4.0, 1.0 / 32);
  const Pair p = linear(g);
  for (double R : {0.5, 1.0, 2.0, 3.5}) CHECK(compute_L(p.u, p.v, R) == doctest::Approx(std::sqrt(pi) * R).epsilon(1e-3));
  const Field z(g, 0.0);
  try {
    compute_L(z, z, 1.0);
    FAIL("expected ZeroDenominator");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroDenominator);
  }
}

TEST_CASE("rescaling the linear pair gives x^+ / sqrt(pi)") {
  const Grid2D g = Grid2D::centered_square(4.0, 1.0 / 32);
  const Pair p = linear(g);
  const Grid2D t = unit_target(1.0 / 32);
  CHECK(t.x_max() == doctest::Approx(1.0 + 4.0 / 32));
  const Rescaled r = rescale(p.u, p.v, 2.0, t);
  double err = 0.0;
  for (int j = 0; j < t.ny; ++j)
    for (int i = 0; i < t.nx; ++i) {
      const double x = t.x(i);
      err = std::max(err, std::abs(r.u.at(i, j) - std::max(x, 0.0) / std::sqrt(pi)));
      err = std::max(err, std::abs(r.v.at(i, j) - std::max(-x, 0.0) / std::sqrt(pi)));
    }
  CHECK(err <= 2e-3);
  // the rescaled pair has unit shell mass on the unit circle
  CHECK(compute_L(r.u, r.v, 1.0) == doctest::Approx(1.0).epsilon(5 * t.h));
  try {
    rescale(p.u, p.v, 3.9, t);
    FAIL("expected DomainTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainTooLarge);
  }
}

TEST_CASE("direction convergence of a rotated linear pair") {
  const Grid2D g = Grid2D::centered_square(4.0, 1.0 / 32);
  const double th = 0.6;
  const Pair p = linear(g, {std::cos(th), std::sin(th)});
  const std::vector<double> radii{0.75, 1.5, 3.0};
  const DirectionConvergence d = direction_convergence(p.u, p.v, radii, 1.0 / 64);
  REQUIRE(d.records.size() == 3);
  CHECK(d.cauchy_gap <= pi / 180);
  for (const auto& r : d.records) {
    CHECK(std::atan2(r.e.y, r.e.x) == doctest::Approx(th).epsilon(0.01));
    CHECK(r.magnitude == doctest::Approx(1.0 / std::sqrt(pi)).epsilon(0.01));
    CHECK(r.flatness <= 0.01);
    CHECK(r.deficit <= 0.01);
  }
  CHECK_THROWS_AS(direction_convergence(p.u, p.v, std::vector<double>{1.0, 2.0}, 1.0 / 64), Error);
}
