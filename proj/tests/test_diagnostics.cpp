#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "segsym/diagnostics.hpp"
#include "segsym/elliptic2d.hpp"
#include "segsym/error.hpp"

using namespace segsym;
using std::numbers::pi;

namespace {

struct Pair {
  Field u, v;
};

Pair linear(const Grid2D& g, Point e = {1.0, 0.0}, double a = 1.0) {
  return {Field::sample(g, [=](Point p) { return std::max(a * (p.x * e.x + p.y * e.y), 0.0); }),
          Field::sample(g, [=](Point p) { return std::max(-a * (p.x * e.x + p.y * e.y), 0.0); })};
}

const SolutionPair& solved() {
  static const SolutionPair s =
      solve_system(Grid2D::centered_square(1.0, 1.0 / 128), linear_pair_u(), linear_pair_v(), 100.0);
  return s;
}

Field transpose(const Field& f) {
  Field out(f.grid);
  for (int j = 0; j < f.grid.ny; ++j)
    for (int i = 0; i < f.grid.nx; ++i) out.at(i, j) = f.at(j, i);
  return out;
}

MonotonicityTrace synthetic(std::vector<double> r, double (*f)(double)) {
  MonotonicityTrace t;
  t.functional = "J";
  t.radii = r;
  for (double x : r) t.values.push_back(f(x));
  return t;
}

}  // namespace

TEST_CASE("Almgren quantities of the linear pair") {
  const Grid2D g = Grid2D::centered_square(2.0, 1.0 / 64);
  const Pair p = linear(g);
  const PairFields pf(p.u, p.v, 10.0);
  for (double r : {0.5, 1.0, 1.5}) {
    CHECK(std::abs(almgren_D(pf, {}, r) - pi * r * r) <= 4 * g.h * r);
    CHECK(std::abs(almgren_H(pf, {}, r) - pi * r * r) <= 4 * g.h * r);
    CHECK(std::abs(almgren_N(pf, {}, r) - 1.0) <= 2 * g.h / r);
    CHECK(std::abs(acf_J(pf, {}, r) - pi * pi / 4) <= 4 * g.h / r);
    // independent polar quadrature of the same integrals
    const double d = oracle::disk_integral([](double x, double) { return x == 0.0 ? 0.5 : 1.0; }, 0, 0, r);
    CHECK(std::abs(almgren_D(pf, {}, r) - d) <= 4 * g.h * r);
    const double sh = oracle::circle_integral([](double x, double) { return x * x; }, 0, 0, r);
    CHECK(std::abs(almgren_H(pf, {}, r) - sh / r) <= 4 * g.h * r);
  }
  CHECK(almgren_D(p.u, p.v, 0.0, {}, 1.0) == almgren_D(pf, {}, 1.0));
  const Field z(g, 0.0);
  try {
    almgren_N(z, z, 1.0, {}, 1.0);
    FAIL("expected ZeroDenominator");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroDenominator);
  }
  CHECK_THROWS_AS(almgren_D(pf, {}, 2.5), Error);
}

TEST_CASE("traces reject unsorted radii and keep input order") {
  const Grid2D g = Grid2D::centered_square(2.0, 1.0 / 32);
  const Pair p = linear(g);
  const PairFields pf(p.u, p.v, 0.0);
  const std::vector<double> bad{0.5, 0.4, 1.0};
  CHECK_THROWS_AS(trace(pf, Functional::D, {}, bad), Error);
  const std::vector<double> rs{0.25, 0.5, 1.0};
  const MonotonicityTrace t = trace(pf, Functional::D, {}, rs);
  for (std::size_t i = 0; i < rs.size(); ++i) CHECK(t.values[i] == almgren_D(pf, {}, rs[i]));
  CHECK(min_pairwise_increment(t) > 0.0);
  CHECK(min_pairwise_slope(t) > 0.0);
  CHECK(frequency_trace(pf, {}, rs).functional == "N");
}

TEST_CASE("J scales like r^-4 times area squared and matches the 3D closed form") {
  const Grid2D g = Grid2D::centered_square(2.0, 1.0 / 64);
  const Pair p = linear(g), p3 = linear(g, {1.0, 0.0}, 3.0);
  // J is quadratic in each energy, so (3u, 3v) scales it by 81
  CHECK(acf_J(p3.u, p3.v, 0.0, {}, 1.0) == doctest::Approx(81.0 * acf_J(p.u, p.v, 0.0, {}, 1.0)).epsilon(1e-12));

  std::vector<double> rho(401);
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = 0.005 * static_cast<double>(i);
  for (double r : {0.5, 1.0, 1.7, 2.0}) CHECK(acf_J_radial3(rho, rho, 0.005, 0.0, r) == doctest::Approx(4 * pi * pi).epsilon(1e-9));
  // with kappa: int_0^r (1 + kappa rho^4) 4 pi rho = 2 pi r^2 + (2/3) pi kappa r^6
  const double r = 1.0, k = 3.0;
  const double side = 2 * pi * r * r + 2.0 / 3.0 * pi * k * std::pow(r, 6);
  CHECK(acf_J_radial3(rho, rho, 0.005, k, r) == doctest::Approx(side * side).epsilon(1e-4));
  CHECK_THROWS_AS(acf_J_radial3(rho, rho, 0.005, 0.0, 3.0), Error);
}

TEST_CASE("correction constant against an independent pairwise fit") {
  const std::vector<double> r{0.1, 0.2, 0.4, 0.8, 1.6};
  for (auto f : {+[](double x) { return std::exp(2.0 / std::sqrt(x)); }, +[](double x) { return 1.0 + x; },
                 +[](double x) { return 5.0 - std::sin(4 * x); }}) {
    const MonotonicityTrace t = synthetic(r, f);
    const AcfFit fit = acf_correction_constant(t);
    CHECK(fit.finite);
    CHECK(fit.c_fit == doctest::Approx(oracle::acf_constant(t.radii, t.values)).epsilon(1e-9));
  }
  CHECK(acf_correction_constant(synthetic(r, [](double x) { return 1.0 + x; })).c_fit == 0.0);
  const AcfFit bad = acf_correction_constant(synthetic({1e6, 1e7}, [](double x) { return x < 5e6 ? 1.0 : 1e-10; }));
  CHECK(!bad.finite);
  CHECK(std::isinf(bad.c_fit));
}

TEST_CASE("doubling check") {
  const std::vector<double> r{0.25, 0.5, 1.0};
  auto h6 = synthetic(r, [](double x) { return std::pow(x, 6); });
  h6.functional = "H";
  const DoublingCheck fail6 = check_doubling(h6, 1.0, 0.25, 0.5);
  CHECK(!fail6.pass);
  CHECK(fail6.ratio == doctest::Approx(64.0));
  CHECK(fail6.bound == doctest::Approx(std::exp(1.0) * 4.0));
  CHECK(check_doubling(h6, 3.0, 0.25, 0.5).pass);
  CHECK(check_doubling(h6, 1.0, 0.5, 0.5).pass);
  // log-log interpolation is exact on powers
  CHECK(check_doubling(h6, 3.0, 0.3, 0.6).ratio == doctest::Approx(64.0));
}

TEST_CASE("nondegeneracy, product and gradient bounds on the linear pair") {
  const Grid2D g = Grid2D::centered_square(2.0, 1.0 / 64);
  const Pair p = linear(g);
  const std::vector<double> rs{0.25, 0.5, 1.0};
  // int over the circle of |x1| is 4 r^2
  CHECK(nondegeneracy_exponent(p.u, p.v, rs) == doctest::Approx(2.0).epsilon(1e-3));
  const PairFields pf(p.u, p.v, 1.0);
  const ProductBounds b = product_bounds(pf, {}, rs);
  CHECK(b.sup_uv == 0.0);
  CHECK(!b.mass_exponent.has_value());
  CHECK(gradient_bounds(pf, 2 * g.h) == doctest::Approx(1.0));
  CHECK_THROWS_AS(gradient_bounds(pf, g.h), Error);
}

TEST_CASE("Hoelder seminorm") {
  const Grid2D g = Grid2D::centered_square(1.0, 1.0 / 32);
  CHECK(holder_seminorm(Field(g, 3.0), 0.5) == 0.0);
  const Field x = Field::sample(g, [](Point p) { return p.x; });
  // sup |dx|^(1/2) over the square is reached by a full row
  CHECK(holder_seminorm(x, 0.5) <= std::sqrt(2.0) + 1e-12);
  CHECK(holder_seminorm(x, 0.5) >= 0.99 * std::sqrt(2.0));
  CHECK_THROWS_AS(holder_seminorm(x, 1.0), Error);
  CHECK(holder_seminorm(x, 0.5, Ball{{}, 0.5}) <= 1.0);
}

TEST_CASE("cone monotonicity") {
  const Grid2D g = Grid2D::centered_square(1.0, 1.0 / 32);
  const Field u = Field::sample(g, [](Point p) { return std::max(2 * p.x + 0.1 * p.y, 0.0); });
  const Field v = Field::sample(g, [](Point p) { return std::max(-(2 * p.x + 0.1 * p.y), 0.0); });
  const PairFields pf(u, v, 0.0);
  const ConeCheck c = cone_monotonicity(pf, {1.0, 0.0}, 0.75);
  CHECK(c.violation == 0.0);
  CHECK(c.directions > 0);
  CHECK(c.transverse_sup == doctest::Approx(0.1));
  // a decreasing field violates
  const PairFields flipped(v, u, 0.0);
  CHECK(cone_monotonicity(flipped, {1.0, 0.0}, 0.75).violation > 1.0);
}

TEST_CASE("harmonic deficit: Dirichlet principle") {
  const Grid2D g = Grid2D::centered_square(1.25, 1.0 / 64);
  const Pair p = linear(g);
  const HarmonicDeficit lin = harmonic_deficit(p.u, p.v, {}, 1.0);
  CHECK(lin.deficit <= g.h);
  CHECK(lin.sup_grad_phi == doctest::Approx(1.0).epsilon(0.02));
  // u - v = x^2: phi minimises the energy with the same trace, and
  // int |grad(w - phi)|^2 = int |grad w|^2 - int |grad phi|^2
  const Field u = Field::sample(g, [](Point q) { return q.x * q.x + 1.0; });
  const Field one(g, 1.0);
  const HarmonicDeficit d = harmonic_deficit(u, one, {}, 1.0);
  CHECK(d.deficit > 0.1);
  CHECK(d.energy_phi <= d.energy_w);
  CHECK(d.deficit == doctest::Approx(d.energy_w - d.energy_phi).epsilon(0.05));
}

TEST_CASE("flatness recovers a rotated one-dimensional pair") {
  const Grid2D g = Grid2D::centered_square(1.25, 1.0 / 64);
  for (double th : {0.0, 0.3, 2.0, -1.1}) {
    const Point e{std::cos(th), std::sin(th)};
    const Pair p = linear(g, e, 0.7);
    const Flatness f = flatness_direction(p.u, p.v, {}, 1.0);
    CHECK(std::acos(std::clamp(f.e.x * e.x + f.e.y * e.y, -1.0, 1.0)) <= pi / 180);
    CHECK(f.magnitude == doctest::Approx(0.7).epsilon(0.01));
    CHECK(f.h_flat <= 0.01);
  }
}

TEST_CASE("solved pair: radial derivative of H and rotation invariance") {
  const SolutionPair& s = solved();
  const PairFields pf(s.u, s.v, s.kappa);
  const Point x{0.05, 0.1};
  // H'(r) = (2 / r) (D(r) + int_B kappa u^2 v^2)
  for (double r : {0.3, 0.6}) {
    const double dr = 0.02;
    const double dH = (almgren_H(pf, x, r + dr) - almgren_H(pf, x, r - dr)) / (2 * dr);
    const double extra = ball_integral(pf.grid(), x, r, [&](std::size_t k) { return pf.interaction(k); });
    CHECK(dH == doctest::Approx(2.0 / r * (almgren_D(pf, x, r) + extra)).epsilon(0.03));
  }
  const Field ut = transpose(s.u), vt = transpose(s.v);
  const PairFields pt(ut, vt, s.kappa);
  for (double r : {0.25, 0.5, 0.75}) {
    CHECK(almgren_N(pt, {}, r) == doctest::Approx(almgren_N(pf, {}, r)).epsilon(1e-3));
    CHECK(acf_J(pt, {}, r) == doctest::Approx(acf_J(pf, {}, r)).epsilon(1e-9));
  }
}
