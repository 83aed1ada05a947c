#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "segsym/error.hpp"
#include "segsym/grid.hpp"

using namespace segsym;

namespace {

Field sampled(double half, double h, double (*fn)(double, double)) {
  return Field::sample(Grid2D::centered_square(half, h), [fn](Point p) { return fn(p.x, p.y); });
}

double max_grad_error(double h) {
  const Field f = sampled(1.0, h, [](double x, double y) { return x * x + y * y; });
  const VectorField g = gradient(f);
  double err = 0.0;
  for (int j = 0; j < f.grid.ny; ++j)
    for (int i = 0; i < f.grid.nx; ++i) {
      const std::size_t k = f.grid.index(i, j);
      err = std::max({err, std::abs(g.x[k] - 2 * f.grid.x(i)), std::abs(g.y[k] - 2 * f.grid.y(j))});
    }
  return err;
}

}  // namespace

TEST_CASE("grid construction rejects degenerate shapes") {
  CHECK_THROWS_AS(Grid2D(2, 5, 0.1, {}), Error);
  CHECK_THROWS_AS(Grid2D(5, 5, 0.0, {}), Error);
  const Grid2D g = Grid2D::centered_square(1.0, 0.25);
  CHECK(g.nx == 9);
  CHECK(g.x_max() == doctest::Approx(1.0));
}

TEST_CASE("gradient of constants and linear fields") {
  const Field c = sampled(1.0, 0.1, [](double, double) { return 3.0; });
  const VectorField gc = gradient(c);
  for (double v : gc.x) CHECK(v == 0.0);
  for (double v : gc.y) CHECK(v == 0.0);

  const Field f = Field::sample(Grid2D(11, 11, 0.1, {}), [](Point p) { return p.x; });
  const VectorField g = gradient(f);
  for (std::size_t k = 0; k < g.x.size(); ++k) {
    CHECK(std::abs(g.x[k] - 1.0) <= 1e-12);
    CHECK(std::abs(g.y[k]) <= 1e-12);
  }
}

TEST_CASE("gradient of a quadratic converges at second order") {
  const double e1 = max_grad_error(0.1), e2 = max_grad_error(0.05);
  // centred and one-sided second-order stencils are exact on quadratics
  if (e1 > 1e-12) CHECK(std::log2(e1 / e2) >= 1.9);
  CHECK(e2 <= 1e-10);
}

TEST_CASE("gradient of sin has second-order error under refinement") {
  auto err = [](double h) {
    const Field f = Field::sample(Grid2D::centered_square(1.0, h), [](Point p) { return std::sin(p.x) * std::cos(p.y); });
    const VectorField g = gradient(f);
    double e = 0.0;
    for (int j = 0; j < f.grid.ny; ++j)
      for (int i = 0; i < f.grid.nx; ++i) {
        const Point p = f.grid.node(i, j);
        e = std::max(e, std::abs(g.x[f.grid.index(i, j)] - std::cos(p.x) * std::cos(p.y)));
      }
    return e;
  };
  CHECK(std::log2(err(0.05) / err(0.025)) >= 1.9);
}

TEST_CASE("gradient is linear (property)") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const Grid2D g(13, 9, 0.1, {-0.3, 0.2});
  for (int trial = 0; trial < 50; ++trial) {
    Field a(g), b(g);
    for (auto& x : a.values) x = U(rng);
    for (auto& x : b.values) x = U(rng);
    const double s = U(rng), t = U(rng);
    const Field c = combine(a, b, [&](double x, double y) { return s * x + t * y; });
    const VectorField ga = gradient(a), gb = gradient(b), gc = gradient(c);
    for (std::size_t k = 0; k < g.size(); ++k) {
      CHECK(std::abs(gc.x[k] - (s * ga.x[k] + t * gb.x[k])) <= 1e-12);
      CHECK(std::abs(gc.y[k] - (s * ga.y[k] + t * gb.y[k])) <= 1e-12);
    }
  }
}

TEST_CASE("ball integral closed forms") {
  const double h = 1.0 / 128;
  const Field one = sampled(1.5, h, [](double, double) { return 1.0; });
  CHECK(std::abs(ball_integral(one, {}, 1.0) - oracle::pi) <= 2 * h);
  const Field zero = sampled(1.5, h, [](double, double) { return 0.0; });
  CHECK(ball_integral(zero, {}, 1.0) == 0.0);
  const Field x2 = sampled(1.5, h, [](double x, double) { return x * x; });
  const double ref = oracle::disk_integral([](double x, double) { return x * x; }, 0, 0, 1.0);
  CHECK(ref == doctest::Approx(oracle::pi / 4).epsilon(1e-10));
  CHECK(std::abs(ball_integral(x2, {}, 1.0) - ref) <= 2 * h);
  CHECK_THROWS_AS(ball_integral(one, {1.0, 0.0}, 1.0), Error);
  try {
    ball_integral(one, {1.0, 0.0}, 1.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BallOutsideDomain);
  }
}

TEST_CASE("ball quadrature error shrinks under refinement") {
  auto err = [](double h) {
    const Field f = Field::sample(Grid2D::centered_square(1.0, h), [](Point p) { return std::exp(p.x) * (1 + p.y * p.y); });
    const double ref =
        oracle::disk_integral([](double x, double y) { return std::exp(x) * (1 + y * y); }, 0.1, -0.05, 0.7);
    return std::abs(ball_integral(f, {0.1, -0.05}, 0.7) - ref);
  };
  // averaged over a few spacings: the rim estimate is first order but erratic
  const double coarse = err(1.0 / 32) + err(1.0 / 36) + err(1.0 / 40);
  const double fine = err(1.0 / 64) + err(1.0 / 72) + err(1.0 / 80);
  CHECK(coarse / fine >= 1.8);
}

TEST_CASE("shell integral closed forms") {
  const Field one = sampled(3.0, 0.05, [](double, double) { return 1.0; });
  CHECK(std::abs(shell_integral(one, {}, 2.0, 64) - 4 * oracle::pi) <= 1e-6);
  const Field x2 = sampled(1.5, 1.0 / 256, [](double x, double) { return x * x; });
  CHECK(std::abs(shell_integral(x2, {}, 1.0, 128) - oracle::pi) <= 1e-4);
  CHECK_THROWS_AS(shell_integral(one, {}, 1.0, 8), Error);
  try {
    shell_integral(one, {}, 1.0, 8);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MSampleTooSmall);
  }
  CHECK_THROWS_AS(shell_integral(one, {2.5, 0.0}, 1.0), Error);
  CHECK(default_shell_samples(0.1, 0.1) == 128);
  CHECK(default_shell_samples(1.0, 0.01) == static_cast<int>(std::ceil(16 * oracle::pi / 0.01)));
}

TEST_CASE("shell integral converges to the circle oracle") {
  auto err = [](double h) {
    const Field f = Field::sample(Grid2D::centered_square(1.0, h), [](Point p) { return std::cos(2 * p.x) + p.y * p.y; });
    const double ref = oracle::circle_integral([](double x, double y) { return std::cos(2 * x) + y * y; }, 0.2, 0.1, 0.6);
    return std::abs(shell_integral(f, {0.2, 0.1}, 0.6) - ref);
  };
  CHECK(err(1.0 / 32) / err(1.0 / 64) >= 1.8);
}

TEST_CASE("quadrature is monotone in the integrand (property)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const Grid2D g = Grid2D::centered_square(1.0, 1.0 / 32);
  for (int trial = 0; trial < 40; ++trial) {
    Field f(g), d(g);
    for (auto& x : f.values) x = U(rng) - 0.5;
    for (auto& x : d.values) x = U(rng);
    const Field big = combine(f, d, [](double a, double b) { return a + b; });
    const Point c{0.3 * (U(rng) - 0.5), 0.3 * (U(rng) - 0.5)};
    const double r = 0.2 + 0.5 * U(rng);
    CHECK(ball_integral(f, c, r) <= ball_integral(big, c, r));
    CHECK(shell_integral(f, c, r) <= shell_integral(big, c, r));
  }
}

TEST_CASE("bilinear interpolation") {
  const Grid2D g(7, 6, 0.2, {-0.5, 0.1});
  const Field xy = Field::sample(g, [](Point p) { return p.x * p.y; });
  const Field sum = Field::sample(g, [](Point p) { return p.x + p.y; });
  CHECK(interpolate(xy, g.node(3, 2)) == xy.at(3, 2));
  const Point mid = g.node(2, 3) + Point{0.1, 0.1};
  CHECK(interpolate(sum, mid) ==
        doctest::Approx(0.25 * (sum.at(2, 3) + sum.at(3, 3) + sum.at(2, 4) + sum.at(3, 4))).epsilon(1e-14));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const Point p{g.origin.x + U(rng) * (g.x_max() - g.origin.x), g.origin.y + U(rng) * (g.y_max() - g.origin.y)};
    CHECK(std::abs(interpolate(xy, p) - p.x * p.y) <= 1e-12);
  }
  CHECK_THROWS_AS(interpolate(xy, {10.0, 0.0}), Error);
}
