#include "toprank/slope.hpp"

#include <cmath>
#include <vector>

#include "toprank/errors.hpp"

namespace toprank {

SlopeFit fit_slope(const RegretTrace& trace, long t_start, long t_end) {
  if (t_start < 1) throw InvalidArgument("fit_slope: t_start must be >= 1");
  SlopeFit fit;
  fit.t_start = t_start;
  fit.t_end = t_end;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& rec : trace.records) {
    if (rec.t < t_start || rec.t > t_end) continue;
    if (!(rec.norm_regret > 0.0)) {
      ++fit.excluded;
      continue;
    }
    xs.push_back(std::log(static_cast<double>(rec.t)));
    ys.push_back(std::log(rec.norm_regret));
  }
  fit.points = xs.size();
  if (fit.points < 2) {
    throw InvalidArgument("fit_slope: fewer than two rounds with positive regret in [" +
                          std::to_string(t_start) + ", " + std::to_string(t_end) + "]");
  }
  const double n = static_cast<double>(fit.points);
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  if (sxx == 0.0) throw InvalidArgument("fit_slope: window spans a single round");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double e = ys[k] - (fit.intercept + fit.slope * xs[k]);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace toprank
