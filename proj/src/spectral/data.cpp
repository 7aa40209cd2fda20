#include "imbq/data.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace imbq {

SpectralField gaussian_bump(const FrequencyGrid& grid, double amp, double width, double shift, bool mean_zero) {
  if (!(width > 0.0)) throw std::invalid_argument("bump width must be positive");
  std::vector<cplx> a(grid.size());
  const double c = amp * std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double xi = grid.node(k);
    a[k] = c * std::exp(-xi * xi / (2.0 * width * width)) * std::polar(1.0, -xi * shift);
    if (mean_zero) a[k] *= xi * xi / (1.0 + xi * xi);
  }
  symmetrize(a);
  a[0] = 0.0;
  return SpectralField(grid, std::move(a), true);
}

SpectralField random_real_field(const FrequencyGrid& grid, std::uint64_t seed, long band, double scale) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, scale);
  std::vector<cplx> a(grid.size());
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (band >= 0 && std::abs(grid.offset(k)) > band) continue;
    const double re = n(rng), im = n(rng);
    a[k] = {re, im};
  }
  symmetrize(a);
  a[0] = 0.0;
  return SpectralField(grid, std::move(a), true);
}

}  // namespace imbq
