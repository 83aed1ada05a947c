#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "segsym/config.hpp"
#include "segsym/grid.hpp"
#include "segsym/kernels.hpp"

namespace segsym {

using BoundaryData = std::function<double(Point)>;

struct Ball {
  Point center;
  double radius = 1.0;
};

struct SolutionPair {
  Field u;
  Field v;
  double kappa = 0.0;
  double residual = 0.0;
  /// max(cfg.tol, 256 eps max|data| / h^2): below that the stencil cannot
  /// resolve the residual in double precision.
  double tol_applied = 0.0;
  long sweeps = 0;
  /// Discrete energy logged every few sweeps of the final continuation stage.
  std::vector<double> energy_trace;
};

/// ((x . e)^+, (x . e)^-) as boundary data.
BoundaryData linear_pair_u(Point e = {1.0, 0.0});
BoundaryData linear_pair_v(Point e = {1.0, 0.0});
BoundaryData from_field(const Field& f);

/// Red-black nonlinear SOR on Delta u = kappa u v^2, Delta v = kappa v u^2
/// with Dirichlet data on the grid edge. Starts from the kappa = 0 harmonic
/// extension and continues in kappa by factors of 10.
SolutionPair solve_system(const Grid2D& g, const BoundaryData& bdata_u, const BoundaryData& bdata_v, double kappa,
                          const SolveConfig& cfg = {});

/// Relaxes an explicit initial pair at fixed kappa; edge values stay as given.
/// `parallel` selects the OpenMP kernels, otherwise the serial reference.
SolutionPair relax_system(Field u0, Field v0, double kappa, const SolveConfig& cfg, bool parallel = true,
                          int log_every = 20);

/// Discrete energy whose pointwise minimisation the sweeps perform.
double discrete_energy(const Field& u, const Field& v, double kappa);

/// Quadrature of |grad u|^2 + |grad v|^2 + kappa u^2 v^2 over a ball or, when
/// no region is given, over every cell of the grid.
double energy(const Field& u, const Field& v, double kappa, std::optional<Ball> region = std::nullopt);

/// 5-point Laplace solve on nodes inside B_R(center). Every other node keeps
/// bdata evaluated at that node, so rim nodes carry the Dirichlet data.
Field solve_harmonic(const Grid2D& g, Point center, double R, const BoundaryData& bdata, const SolveConfig& cfg = {});

/// Solves Delta w = M w in B_{R_outer}(0) with w = A outside the disk.
/// Converges on both the absolute residual and the residual relative to the
/// stencil magnitude, since w falls to ~exp(-sqrt(M)) in the middle.
Field solve_linear_decay(double M, double A, double R_outer, const Grid2D& g, const SolveConfig& cfg = {});

}  // namespace segsym
