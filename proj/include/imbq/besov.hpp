#pragma once

#include <string>

#include "imbq/symbols.hpp"

namespace imbq {

struct BesovOptions {
  double h_min = 1e-3;
  double h_max = 1e3;
  /// Geometric panels per decade, in both h and xi.
  int resolution = 6;
  /// Inner L^2 integral truncation |xi| <= xi_extent.
  double xi_extent = 1e4;
  /// Relative change tolerated under doubling of the resolution.
  double stability_tol = 0.05;
};

struct BesovEstimate {
  std::string symbol;
  double t = 0.0;
  double value = 0.0;        // at 2 * resolution
  double coarse_value = 0.0; // at resolution
  int resolution = 0;
  double xi_extent = 0.0;
  /// Bound on the contribution of |xi| > xi_extent to the inner norms,
  /// integrated against the h-weight.
  double tail_bound = 0.0;
  bool converged = false;
};

/// L^2 norm over xi of m(xi + h) - m(xi), truncated to |xi| <= extent.
double translation_difference(const Symbol& sym, double h, int resolution, double extent);

/// Quadrature for  int_{h_min <= |h| <= h_max} ||m(.+h) - m(.)||_{L^2} / |h|^{3/2} dh,
/// evaluated at `resolution` and `2 * resolution`. `converged` reports
/// whether the two agree within stability_tol; callers decide what to do
/// with a non-converged estimate.
BesovEstimate besov_seminorm(const Symbol& sym, const BesovOptions& opt = {});

}  // namespace imbq
