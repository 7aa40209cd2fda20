#pragma once
// Deterministic random fields for the test suites.
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "imbq/field.hpp"

namespace imbq::testing {

/// Real field with random amplitudes on |offset| <= band (all nodes when band < 0).
/// The unpaired leftmost node is left at zero.
inline SpectralField random_field(const FrequencyGrid& g, std::mt19937_64& rng, long band = -1,
                                  double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  std::vector<cplx> a(g.size());
  for (std::size_t k = 1; k < g.size(); ++k) {
    if (band >= 0 && std::abs(g.offset(k)) > band) continue;
    a[k] = {n(rng), n(rng)};
  }
  symmetrize(a);
  a[0] = 0.0;
  return SpectralField(g, std::move(a), true);
}

/// Smooth bump amp * exp(-xi^2 / (2 w^2)) shifted by `shift` in x, scaled by
/// sqrt(2 pi). With zero_mean the xi = 0 amplitude vanishes.
inline SpectralField gaussian(const FrequencyGrid& g, double amp, double width, double shift, bool zero_mean) {
  std::vector<cplx> a(g.size());
  for (std::size_t k = 1; k < g.size(); ++k) {
    const double xi = g.node(k);
    a[k] = amp * std::exp(-xi * xi / (2 * width * width)) * std::polar(1.0, -xi * shift) *
           std::sqrt(2 * std::numbers::pi);
    if (zero_mean) a[k] *= xi * xi / (1 + xi * xi);
  }
  symmetrize(a);
  a[0] = 0.0;
  return SpectralField(g, std::move(a), true);
}

/// Direct evaluation of u(x) = (dxi / 2pi) sum_k u^(xi_k) exp(i xi_k x).
inline cplx evaluate_at(const SpectralField& f, double x) {
  const auto& g = f.grid();
  cplx s = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) s += f[k] * std::polar(1.0, g.node(k) * x);
  return s * g.spacing() / (2 * std::numbers::pi);
}

inline double relative_l2(const SpectralField& a, const SpectralField& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    num += std::norm(a[k] - b[k]);
    den += std::norm(b[k]);
  }
  return std::sqrt(num / den);
}

}  // namespace imbq::testing
