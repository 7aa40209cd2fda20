#pragma once
#include <cstdint>

#include "imbq/field.hpp"

namespace imbq {

/// amp * sqrt(2 pi) * exp(-xi^2 / (2 width^2)) * exp(-i xi shift): a bump of
/// height about amp * width centred at x = shift. With mean_zero the amplitudes
/// are multiplied by lambda^2, which removes the xi = 0 mode.
SpectralField gaussian_bump(const FrequencyGrid& grid, double amp, double width, double shift, bool mean_zero);

/// Real field with independent normal amplitudes (standard deviation `scale`)
/// on |offset| <= band, or on every node when band < 0. Deterministic in seed.
SpectralField random_real_field(const FrequencyGrid& grid, std::uint64_t seed, long band = -1, double scale = 1.0);

}  // namespace imbq
