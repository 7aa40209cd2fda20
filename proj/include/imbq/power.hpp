#pragma once

#include "imbq/field.hpp"

namespace imbq {

/// Smallest even node count >= factor * size.
std::size_t padded_size(std::size_t size, double factor);

/// Spectral representation of sign * u^p.
///
/// The field is zero-padded by `dealias_factor`, taken to position space,
/// raised to the p-th power, transformed back and truncated to the original
/// grid. With dealias_factor >= (p+1)/2 the result is alias-free on the
/// represented band.
SpectralField pointwise_power(const SpectralField& f, int p, double sign, double dealias_factor);

/// Default factor (p+1)/2.
inline double default_dealias(int p) { return 0.5 * (p + 1); }

}  // namespace imbq
