#include "imbq/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "imbq/errors.hpp"

namespace imbq {

SpectralField::SpectralField(FrequencyGrid grid, std::vector<cplx> amplitudes, bool real_valued)
    : grid_(grid), amp_(std::move(amplitudes)), real_(real_valued) {
  if (amp_.size() != grid_.size()) throw GridMismatch("amplitude count does not match grid size");
  for (const auto& a : amp_)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw std::domain_error("spectral amplitudes must be finite");
}

SpectralField SpectralField::zeros(const FrequencyGrid& grid, bool real_valued) {
  return SpectralField(grid, std::vector<cplx>(grid.size()), real_valued);
}

double SpectralField::hermitian_defect() const noexcept {
  double scale = 0.0;
  for (const auto& a : amp_) scale = std::max(scale, std::abs(a));
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t k = 1; k < amp_.size(); ++k)
    worst = std::max(worst, std::abs(amp_[amp_.size() - k] - std::conj(amp_[k])));
  return worst / scale;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw GridMismatch("cannot add fields on different grids");
  for (std::size_t k = 0; k < amp_.size(); ++k) amp_[k] += other.amp_[k];
  real_ = real_ && other.real_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw GridMismatch("cannot subtract fields on different grids");
  for (std::size_t k = 0; k < amp_.size(); ++k) amp_[k] -= other.amp_[k];
  real_ = real_ && other.real_;
  return *this;
}

SpectralField& SpectralField::operator*=(double c) {
  for (auto& a : amp_) a *= c;
  return *this;
}

void symmetrize(std::span<cplx> a) {
  const std::size_t m = a.size();
  if (m == 0) return;
  a[0] = {a[0].real(), 0.0};
  a[m / 2] = {a[m / 2].real(), 0.0};
  for (std::size_t k = 1; k < m / 2; ++k) {
    const cplx avg = 0.5 * (a[k] + std::conj(a[m - k]));
    a[k] = avg;
    a[m - k] = std::conj(avg);
  }
}

SpectralField cosine_mode(const FrequencyGrid& grid, double k, double amplitude) {
  const double pos = k / grid.spacing();
  const long off = std::lround(pos);
  if (std::abs(pos - static_cast<double>(off)) > 1e-9 || off == 0 ||
      static_cast<std::size_t>(std::abs(off)) >= grid.size() / 2)
    throw std::invalid_argument("cosine mode frequency must be a nonzero interior grid node");
  std::vector<cplx> a(grid.size());
  // cos(kx) = (e^{ikx} + e^{-ikx})/2 and a point mass c at xi gives (dxi/2pi) c e^{i xi x}.
  const double c = amplitude * std::numbers::pi / grid.spacing();
  a[grid.zero_index() + off] = c;
  a[grid.zero_index() - off] = c;
  return SpectralField(grid, std::move(a), true);
}

}  // namespace imbq
