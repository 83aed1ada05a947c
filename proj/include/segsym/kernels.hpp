#pragma once

// Red-black relaxation kernels. Every routine exists twice: a serial
// reference and an OpenMP version. Points of one colour never touch each
// other through the 5-point stencil, so both produce identical bits.

#include <cstdint>
#include <span>
#include <vector>

#include "segsym/grid.hpp"

namespace segsym::kernels {

/// Nodes with mask != 0 are unknowns; the rest hold Dirichlet values.
using Mask = std::vector<std::uint8_t>;

Mask interior_mask(const Grid2D& g);
Mask disk_mask(const Grid2D& g, Point center, double radius);

struct PairSweep {
  double kappa_h2;  ///< kappa * h^2
  double omega;     ///< relaxation factor
};

struct LinearSweep {
  double shift_h2;  ///< M * h^2 for (Delta - M) w = 0
  double omega;
};

namespace serial {
/// One red sweep then one black sweep of the exact pointwise update
/// u_p = sum_nb / (4 + kappa h^2 v_p^2), then the same for v_p.
void sweep_pair(const Grid2D& g, const Mask& mask, std::span<double> u, std::span<double> v, PairSweep p);
void sweep_linear(const Grid2D& g, const Mask& mask, std::span<double> w, LinearSweep p);
double residual_pair(const Grid2D& g, const Mask& mask, std::span<const double> u, std::span<const double> v,
                     double kappa);
double residual_linear(const Grid2D& g, const Mask& mask, std::span<const double> w, double shift);
/// max |r_p| / ((4 / h^2 + shift) |w_p|) over unknowns: the residual measured
/// against the size of the stencil terms, meaningful for exponentially small w.
double relative_residual_linear(const Grid2D& g, const Mask& mask, std::span<const double> w, double shift);
/// Discrete energy sum_edges (du^2 + dv^2) + kappa h^2 sum_p u_p^2 v_p^2, row sums added in order.
double pair_energy(const Grid2D& g, std::span<const double> u, std::span<const double> v, double kappa);
}  // namespace serial

namespace parallel {
void sweep_pair(const Grid2D& g, const Mask& mask, std::span<double> u, std::span<double> v, PairSweep p);
void sweep_linear(const Grid2D& g, const Mask& mask, std::span<double> w, LinearSweep p);
double residual_pair(const Grid2D& g, const Mask& mask, std::span<const double> u, std::span<const double> v,
                     double kappa);
double residual_linear(const Grid2D& g, const Mask& mask, std::span<const double> w, double shift);
double relative_residual_linear(const Grid2D& g, const Mask& mask, std::span<const double> w, double shift);
/// `ordered` = true adds per-row partial sums in row order (bit-stable for any
/// thread count); false uses an OpenMP reduction.
double pair_energy(const Grid2D& g, std::span<const double> u, std::span<const double> v, double kappa,
                   bool ordered = true);
}  // namespace parallel

/// Optimal SOR factor for the 5-point Laplacian on this grid.
double optimal_omega(const Grid2D& g, double shift_h2 = 0.0);

/// Number of worker threads honoured by the parallel kernels
/// (SEGSYM_THREADS caps it).
int configure_threads();

}  // namespace segsym::kernels
