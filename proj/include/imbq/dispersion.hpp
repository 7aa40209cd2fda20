#pragma once

#include <vector>

#include "imbq/grid.hpp"

namespace imbq {

struct DispersionFit {
  double k = 0.0;
  double omega = 0.0;
  double expected = 0.0;  // k / sqrt(1 + k^2)
  double relative_error = 0.0;
  std::vector<double> times;
  std::vector<double> amplitudes;  // normalised mode amplitude
};

/// Evolves u0 = cos(kx), u1 = 0 with the linear solver over [0, T] and fits
/// A cos(omega t) to the amplitude of the k-mode.
DispersionFit dispersion_check(const FrequencyGrid& grid, double k, double horizon);
/// Same with a grid chosen so that k is a node.
DispersionFit dispersion_check(double k, double horizon);

}  // namespace imbq
