#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace segsym {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
double norm(Point p);

/// Uniform grid of nx*ny sample nodes. Node (i, j) sits at origin + (i h, j h)
/// and stands for the h x h cell centred on it.
struct Grid2D {
  int nx = 3;
  int ny = 3;
  double h = 1.0;
  Point origin;

  Grid2D() = default;
  Grid2D(int nx, int ny, double h, Point origin);

  /// Square grid covering [-half_width, half_width]^2 with spacing h.
  static Grid2D centered_square(double half_width, double h);

  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
  }
  double x(int i) const { return origin.x + i * h; }
  double y(int j) const { return origin.y + j * h; }
  Point node(int i, int j) const { return {x(i), y(j)}; }
  double x_max() const { return origin.x + (nx - 1) * h; }
  double y_max() const { return origin.y + (ny - 1) * h; }

  bool contains(Point p, double slack = 1e-12) const;
  bool contains_ball(Point center, double r) const;
  bool same_as(const Grid2D& other) const;
};

struct Field {
  Grid2D grid;
  std::vector<double> values;

  Field() = default;
  explicit Field(const Grid2D& g, double fill = 0.0);
  Field(const Grid2D& g, std::vector<double> v);

  static Field sample(const Grid2D& g, const std::function<double(Point)>& fn);

  double& at(int i, int j) { return values[grid.index(i, j)]; }
  double at(int i, int j) const { return values[grid.index(i, j)]; }
  std::span<const double> view() const { return values; }
};

struct VectorField {
  Grid2D grid;
  std::vector<double> x;
  std::vector<double> y;
};

/// Pointwise combination of fields on a shared grid.
Field combine(const Field& a, const Field& b, const std::function<double(double, double)>& op);
Field transform(const Field& a, const std::function<double(double)>& op);

/// Centred second-order differences inside, one-sided second order on the edges.
VectorField gradient(const Field& f);

/// Bilinear interpolation; throws PointOutsideDomain off the node extent.
double interpolate(const Field& f, Point p);

/// Fraction of the node cell at distance `dist` along unit direction (cx, cy)
/// from a ball centre that lies inside a ball of radius r (linear estimate).
double rim_fraction(double dist, double r, double h, double cx, double cy);

/// Sum of f over cells inside B_r(center) times h^2, rim cells weighted by
/// their inside fraction.
double ball_integral(const Field& f, Point center, double r);

/// Ball quadrature of a per-node integrand computed on the fly.
double ball_integral(const Grid2D& g, Point center, double r,
                     const std::function<double(std::size_t)>& integrand);

int default_shell_samples(double r, double h);

/// Trapezoid rule on m equispaced circle points with bilinear sampling.
double shell_integral(const Field& f, Point center, double r, int m);
double shell_integral(const Field& f, Point center, double r);

double max_abs(std::span<const double> v);

}  // namespace segsym
