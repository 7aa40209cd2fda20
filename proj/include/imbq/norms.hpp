#pragma once

#include "imbq/field.hpp"

namespace imbq {

/// ( sum_k <xi_k>^{2s} |u^(xi_k)|^2 dxi / 2pi )^{1/2}
double sobolev_norm(const SpectralField& f, double s);

struct SupNormOptions {
  /// Position-space oversampling factor for the coarse search.
  std::size_t oversample = 4;
  /// Refine the largest local maxima on the trigonometric interpolant.
  bool refine = true;
  std::size_t candidates = 3;
};

/// max_x |u(x)| of the trigonometric interpolant of f.
double sup_norm(const SpectralField& f, const SupNormOptions& opt = {});

struct RestrictedNorm {
  double value = 0.0;
  /// True when no grid node falls inside the window.
  bool empty = false;
};

/// sobolev_norm restricted to the nodes with xi_k in the window.
RestrictedNorm restricted_norm(const SpectralField& f, const BandWindow& w, double s);

/// Plain L^2 distance ||f - g|| (s = 0) without building the difference.
double l2_distance(const SpectralField& f, const SpectralField& g);

}  // namespace imbq
