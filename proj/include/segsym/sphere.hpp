#pragma once

#include <vector>

#include "segsym/config.hpp"

namespace segsym {

/// Functions of the polar angle alpha on S^{n-1}, n = 2 or 3, sampled on m
/// cells. w[i] is the measure of cell i on the whole sphere (for n = 2 the two
/// arcs at +-alpha, for n = 3 the azimuthal band).
struct SphericalPair {
  int n = 2;
  int m = 0;
  std::vector<double> alpha;   ///< cell centres
  std::vector<double> edges;   ///< m + 1 cell boundaries, 0 ... pi
  std::vector<double> w;
  std::vector<double> ubar;
  std::vector<double> vbar;

  /// Equal-measure cells: uniform in alpha for n = 2, uniform in cos(alpha)
  /// for n = 3. Values start at zero.
  static SphericalPair make(int n, int m);

  double total_measure() const;
  void validate() const;
};

/// sqrt(((n-2)/2)^2 + x) - (n-2)/2.
double gamma(double x, int n);
double gamma_prime(double x, int n);

/// Decreasing rearrangement of ubar from alpha = 0 and increasing
/// rearrangement of vbar towards alpha = pi, splitting value atoms across
/// cells by weight. With equal cell weights this is an exact permutation.
SphericalPair rearrange_pair(const SphericalPair& p);

enum class Which { U, V };

/// sum over interior cell boundaries of fiber sin^{n-2}(beta) (f_{i+1} - f_i)^2 / (alpha_{i+1} - alpha_i).
double dirichlet_energy(const SphericalPair& p, Which which);
double spherical_mass(const SphericalPair& p, Which which);
/// sum w u^2 v^2
double spherical_overlap(const SphericalPair& p);

struct MinimizerReport {
  int n = 2;
  double kappa = 0.0;
  double lambda_kappa = 1.0;
  double value = 0.0;    ///< gamma(x) + gamma(y)
  double x_kappa = 0.0;
  double y_kappa = 0.0;
  double mult1 = 0.0;    ///< x + (gamma'(y) / gamma'(x)) kappa I
  double mult2 = 0.0;    ///< y + (lambda^2 gamma'(x) / gamma'(y)) kappa I
  double seg = 0.0;      ///< sup ubar vbar
  double xi_kappa = 0.0;
  long iterations = 0;
  double max_increase = 0.0;  ///< largest step-to-step rise of the value, 0 for a monotone run
  SphericalPair pair;
};

/// Minimises gamma(E(u) + kappa lambda^2 I) + gamma(E(v) + kappa I) subject
/// to unit masses, I = int u^2 v^2. Block majorize-minimize: gamma is concave,
/// so each half step solves the tangent quadratic exactly as the lowest
/// eigenpair of a tridiagonal pencil. Best of the cos(alpha)^+- start and
/// three seeded random starts.
MinimizerReport minimize_spherical(double kappa, double lambda_kappa, int m, const SolveConfig& cfg = {}, int n = 2);

/// Value of the segregated test pair (cos^+, cos^-) with unit masses.
double test_function_value(double kappa, double lambda_kappa, int m, int n = 2);

struct SweepFit {
  std::vector<MinimizerReport> reports;
  double C = 0.0;
  double exponent = 0.0;
  bool deficit_nonpositive = false;  ///< some value reached 2; its deficit was clipped to 1e-15
};

/// Log-log fit of 2 - value against kappa; needs >= 3 kappas spanning >= 2 decades.
SweepFit fit_deficit(std::vector<double> kappas, std::vector<double> values);
SweepFit kappa_sweep(const std::vector<double>& kappas, double lambda_kappa, int m, const SolveConfig& cfg = {},
                     int n = 2);

}  // namespace segsym
