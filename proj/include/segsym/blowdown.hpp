#pragma once

#include <span>
#include <vector>

#include "segsym/grid.hpp"

namespace segsym {

struct BlowdownRecord {
  double R = 0.0;
  double L = 0.0;
  Point e;                  ///< unit direction of the best flat model on the rescaled ball
  double magnitude = 0.0;   ///< slope of that model, c(2) = 1/sqrt(pi) for a linear pair
  double flatness = 0.0;    ///< sup-distance on B_1 between (u^R, v^R) and the model
  double deficit = 0.0;     ///< R^-2 int_{B_R} |grad(u - v) - e(R_max)|^2
};

struct DirectionConvergence {
  std::vector<BlowdownRecord> records;
  double cauchy_gap = 0.0;  ///< largest angle (radians) between consecutive e(R)
};

struct Rescaled {
  Field u;
  Field v;
  double L = 0.0;
};

/// sqrt(R^-1 int_{dB_R(0)} u^2 + v^2).
double compute_L(const Field& u, const Field& v, double R);

/// u(R x) / L(R) and v(R x) / L(R) sampled bilinearly on `target`.
/// L <= 0 means compute it from the data.
Rescaled rescale(const Field& u, const Field& v, double R, const Grid2D& target, double L = 0.0);

/// Unit-scale grid used for blow-downs: [-1 - 4h, 1 + 4h]^2 at spacing h.
Grid2D unit_target(double h = 1.0 / 128);

DirectionConvergence direction_convergence(const Field& u, const Field& v, std::span<const double> radii,
                                           double target_h = 1.0 / 128);

}  // namespace segsym
