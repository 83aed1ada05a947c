#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "segsym/config.hpp"
#include "segsym/elliptic2d.hpp"
#include "segsym/grid.hpp"

namespace segsym {

/// A pair plus its gradients, computed once and reused by every functional.
/// Holds references: u and v must outlive it.
class PairFields {
 public:
  PairFields(const Field& u, const Field& v, double kappa);

  const Field& u() const { return *u_; }
  const Field& v() const { return *v_; }
  const Grid2D& grid() const { return u_->grid; }
  double kappa() const { return kappa_; }
  const VectorField& grad_u() const { return gu_; }
  const VectorField& grad_v() const { return gv_; }
  /// u^2 + v^2 sampled on the grid, for shell quadrature.
  const Field& mass() const { return mass_; }

  double interaction(std::size_t k) const;                  ///< kappa u^2 v^2
  double energy_density(std::size_t k) const;               ///< |grad u|^2 + |grad v|^2 + kappa u^2 v^2
  double energy_density_u(std::size_t k) const;             ///< |grad u|^2 + kappa u^2 v^2
  double energy_density_v(std::size_t k) const;             ///< |grad v|^2 + kappa u^2 v^2

 private:
  const Field* u_;
  const Field* v_;
  double kappa_;
  VectorField gu_;
  VectorField gv_;
  Field mass_;
};

enum class Functional { D, H, N, J };
const char* to_string(Functional f);

struct MonotonicityTrace {
  std::string functional;
  Point base;
  std::vector<double> radii;
  std::vector<double> values;
  double kappa = 0.0;
};

/// Planar (n = 2) Almgren quantities.
double almgren_D(const PairFields& pf, Point x, double r);
double almgren_H(const PairFields& pf, Point x, double r);
double almgren_N(const PairFields& pf, Point x, double r);
double almgren_D(const Field& u, const Field& v, double kappa, Point x, double r);
double almgren_H(const Field& u, const Field& v, Point x, double r);
double almgren_N(const Field& u, const Field& v, double kappa, Point x, double r);

/// r^-4 (int_B |grad u|^2 + kappa u^2 v^2)(int_B |grad v|^2 + kappa u^2 v^2).
double acf_J(const PairFields& pf, Point x, double r);
double acf_J(const Field& u, const Field& v, double kappa, Point x, double r);

/// Three-dimensional J at the origin for radial profiles u(rho), v(rho)
/// sampled at rho_i = i * drho; the |y|^-1 kernel combines with the polar
/// weight 4 pi rho^2 into 4 pi rho.
double acf_J_radial3(std::span<const double> u, std::span<const double> v, double drho, double kappa, double r);

/// Evaluates one functional at strictly increasing radii (radii may run in
/// parallel; assembly order is the input order).
MonotonicityTrace trace(const PairFields& pf, Functional f, Point x, std::span<const double> radii);
MonotonicityTrace frequency_trace(const PairFields& pf, Point x, std::span<const double> radii);

/// min over i < j of values[j] - values[i]; nonnegative iff the trace is monotone.
double min_pairwise_increment(const MonotonicityTrace& t);
/// min over i < j of (values[j] - values[i]) / (radii[j] - radii[i]).
double min_pairwise_slope(const MonotonicityTrace& t);

struct DoublingCheck {
  bool pass = false;
  double ratio = 0.0;  ///< H(r2) / H(r1)
  double bound = 0.0;  ///< e^d (r2 / r1)^{2d}
};

/// H is interpolated linearly in log-log between trace samples.
DoublingCheck check_doubling(const MonotonicityTrace& trace_H, double d, double r1, double r2);

struct AcfFit {
  MonotonicityTrace trace;
  double c_fit = 0.0;
  bool finite = true;  ///< false when no C in [0, 1000] makes the trace monotone
};

/// Smallest C in [0, 1000] with exp(-C r^-1/2) J(r) pairwise nondecreasing,
/// by 48 bisection steps; +infinity (finite = false) if 1000 is not enough.
AcfFit acf_correction_constant(MonotonicityTrace trace);
AcfFit acf_trace_and_fit(const PairFields& pf, Point x, std::span<const double> radii);

/// Log-log slope of r -> int_{dB_r(center)} (u + v).
double nondegeneracy_exponent(const Field& u, const Field& v, std::span<const double> radii, Point center = {});

struct ProductBounds {
  double sup_uv = 0.0;
  double sup_mixed = 0.0;                ///< sup u |grad v| + v |grad u|
  std::vector<double> windows;
  std::vector<double> masses;            ///< int_{B_R} u^2 v^2 per window
  std::optional<double> mass_exponent;   ///< empty when some mass vanishes
};

ProductBounds product_bounds(const PairFields& pf, Point center, std::span<const double> windows);

/// sup of |grad u| + |grad v| over nodes at least `margin` from the grid edge.
double gradient_bounds(const PairFields& pf, double margin);

/// Max of |f(a) - f(b)| / |a - b|^alpha over pairs of a lattice coarsened to
/// at most 64 x 64 points, counting only pairs at least `pair_floor` apart.
double holder_seminorm(const Field& f, double alpha, std::optional<Ball> region = std::nullopt,
                       double pair_floor = 0.1);

struct ConeCheck {
  double violation = 0.0;       ///< max(0, sup -tau.grad u, sup tau.grad v) over the fan
  double transverse_sup = 0.0;  ///< sup |e_perp . grad u|, |e_perp . grad v|
  int directions = 0;           ///< fan members with tau . e >= aperture
};

/// Fan of 64 directions around e; interior nodes only (two-node margin).
ConeCheck cone_monotonicity(const PairFields& pf, Point e, double aperture);

struct HarmonicDeficit {
  double deficit = 0.0;        ///< int_B |grad(u - v - phi)|^2
  double energy_w = 0.0;       ///< int_B |grad(u - v)|^2
  double energy_phi = 0.0;     ///< int_B |grad phi|^2
  double sup_grad_phi = 0.0;
};

HarmonicDeficit harmonic_deficit(const Field& u, const Field& v, Point x, double R, const SolveConfig& cfg = {});

struct Flatness {
  Point e;                 ///< unit direction
  double magnitude = 1.0;  ///< best slope a in a (e.y)^+
  double h_flat = 0.0;     ///< min sup-distance / R
};

/// Best one-dimensional model ((a e.(y-x))^+, (a e.(y-x))^-) on B_R(x):
/// 256 directions x 16 magnitudes, then golden-section refinement.
Flatness flatness_direction(const Field& u, const Field& v, Point x, double R);

}  // namespace segsym
