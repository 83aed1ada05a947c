#pragma once

#include <span>

namespace segsym {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double correlation = 0.0;  ///< Pearson r; 0 when either side is constant
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Least squares of log y against log x; every input must be positive.
LineFit fit_loglog(std::span<const double> x, std::span<const double> y);

}  // namespace segsym
