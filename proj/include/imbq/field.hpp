#pragma once

#include <complex>
#include <span>
#include <vector>

#include "imbq/grid.hpp"

namespace imbq {

using cplx = std::complex<double>;

/// Fourier-side amplitudes of a field on a FrequencyGrid.
///
/// A real-valued field satisfies u(-xi) = conj(u(xi)) at every mirrored node
/// pair; the flag records that the field is the transform of a real function.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(FrequencyGrid grid, std::vector<cplx> amplitudes, bool real_valued);

  static SpectralField zeros(const FrequencyGrid& grid, bool real_valued = true);

  const FrequencyGrid& grid() const noexcept { return grid_; }
  std::span<const cplx> amplitudes() const noexcept { return amp_; }
  const cplx& operator[](std::size_t k) const noexcept { return amp_[k]; }
  std::size_t size() const noexcept { return amp_.size(); }
  bool real_valued() const noexcept { return real_; }

  /// Copy of the amplitudes, for building derived fields.
  std::vector<cplx> values() const { return amp_; }
  std::vector<cplx> release() && { return std::move(amp_); }

  /// Largest relative violation of u(-xi) = conj(u(xi)) over mirrored pairs.
  double hermitian_defect() const noexcept;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double c);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double c, SpectralField a) { return a *= c; }

 private:
  FrequencyGrid grid_;
  std::vector<cplx> amp_;
  bool real_ = true;
};

/// Samples u(x_j) on the position grid dual to a FrequencyGrid.
struct PositionField {
  FrequencyGrid grid;
  std::vector<cplx> samples;
  bool real_valued = true;

  double period() const noexcept { return grid.period(); }
};

/// Replace every mirrored pair by its Hermitian average and zero the
/// unpaired leftmost node's imaginary part.
void symmetrize(std::span<cplx> amplitudes);

/// Single-mode field cos(k x) with k a grid node.
SpectralField cosine_mode(const FrequencyGrid& grid, double k, double amplitude = 1.0);

}  // namespace imbq
