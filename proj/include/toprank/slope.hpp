#pragma once

#include <cstddef>

#include "toprank/trace.hpp"

namespace toprank {

/// Least-squares line through (log t, log norm_regret(t)).
struct SlopeFit {
  long t_start = 0;
  long t_end = 0;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of the log-space residuals
  std::size_t points = 0;
  std::size_t excluded = 0;  // rounds dropped for non-positive regret
};

/// Fits rounds t_start..t_end (inclusive, clipped to the trace). Rounds with
/// non-positive normalized regret are skipped; throws InvalidArgument when
/// fewer than two points remain.
SlopeFit fit_slope(const RegretTrace& trace, long t_start, long t_end);

}  // namespace toprank
