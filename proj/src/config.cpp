#include "segsym/config.hpp"

#include <cmath>

#include "segsym/error.hpp"

namespace segsym {

void SolveConfig::validate() const {
  require(tol > 0.0 && std::isfinite(tol), "tol must be positive");
  require(max_iter >= 1, "max_iter must be at least 1");
  require(damping > 0.0 && damping <= 1.0, "damping must lie in (0, 1]");
  require(relaxation == 0.0 || (relaxation > 0.0 && relaxation < 2.0), "relaxation must lie in (0, 2)");
  require(boundary_floor >= 0.0, "boundary_floor must be nonnegative");
}

}  // namespace segsym
