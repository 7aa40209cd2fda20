#pragma once

#include <span>

#include "imbq/field.hpp"

namespace imbq {

// Conventions (trapezoid discretization of the line transform):
//   forward   u^(xi_k) = dx * sum_j u(x_j) exp(-i xi_k x_j)
//   inverse   u(x_j)   = (dxi / 2pi) * sum_k u^(xi_k) exp(i xi_k x_j)
// so that sum |u|^2 dx = (1/2pi) sum |u^|^2 dxi.

PositionField to_position(const SpectralField& f);
SpectralField to_frequency(const PositionField& g);

namespace detail {

/// In-place centred transforms on raw buffers of even length. Both are
/// thread-safe; plans are cached per size behind a mutex.
void forward_in_place(std::span<cplx> data, const FrequencyGrid& grid);
void inverse_in_place(std::span<cplx> data, const FrequencyGrid& grid);

/// Copy `src` (on `grid`) into the middle of a zeroed buffer of padded size.
void embed(std::span<const cplx> src, std::span<cplx> dst);
/// Inverse of embed: take the middle `dst.size()` nodes of `src`.
void truncate(std::span<const cplx> src, std::span<cplx> dst);

}  // namespace detail

}  // namespace imbq
