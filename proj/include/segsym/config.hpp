#pragma once

#include <cstdint>

namespace segsym {

struct SolveConfig {
  double tol = 1e-10;           ///< sup-norm residual target
  long max_iter = 400000;       ///< sweeps / Newton steps / descent steps
  double damping = 1.0;         ///< multiplies every relaxation step, in (0, 1]
  double relaxation = 0.0;      ///< SOR factor in (0, 2); 0 picks the grid optimum
  bool deterministic = true;    ///< fixed-order reductions
  std::uint64_t seed = 12345;
  double boundary_floor = 1e-12;

  void validate() const;
};

}  // namespace segsym
