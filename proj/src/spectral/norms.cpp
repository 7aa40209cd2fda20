#include "imbq/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "imbq/errors.hpp"
#include "imbq/power.hpp"
#include "imbq/transform.hpp"

namespace imbq {
namespace {

double weight(double xi, double s) {
  if (s == 0.0) return 1.0;
  return std::pow(1.0 + xi * xi, s);
}

// Trigonometric interpolant (dxi/2pi) sum_k a_k exp(i xi_k x), by recurrence.
cplx interpolant(const SpectralField& f, double x) {
  const auto& g = f.grid();
  const cplx step = std::polar(1.0, g.spacing() * x);
  cplx phase = std::polar(1.0, g.node(0) * x);
  cplx sum{};
  for (std::size_t k = 0; k < f.size(); ++k) {
    sum += f[k] * phase;
    phase *= step;
  }
  return sum * (g.spacing() / (2.0 * std::numbers::pi));
}

double golden_max(const SpectralField& f, double lo, double hi) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = std::abs(interpolant(f, c)), fd = std::abs(interpolant(f, d));
  for (int it = 0; it < 60 && (b - a) > 1e-13 * (1.0 + std::abs(a)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = std::abs(interpolant(f, c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = std::abs(interpolant(f, d));
    }
  }
  return std::max(fc, fd);
}

}  // namespace

double sobolev_norm(const SpectralField& f, double s) {
  const auto& g = f.grid();
  double acc = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) acc += weight(g.node(k), s) * std::norm(f[k]);
  return std::sqrt(acc * g.spacing() / (2.0 * std::numbers::pi));
}

RestrictedNorm restricted_norm(const SpectralField& f, const BandWindow& w, double s) {
  const auto& g = f.grid();
  double acc = 0.0;
  bool any = false;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double xi = g.node(k);
    if (!w.contains(xi)) continue;
    any = true;
    acc += weight(xi, s) * std::norm(f[k]);
  }
  return {std::sqrt(acc * g.spacing() / (2.0 * std::numbers::pi)), !any};
}

double l2_distance(const SpectralField& f, const SpectralField& g) {
  if (!(f.grid() == g.grid())) throw GridMismatch("l2_distance: grids differ");
  double acc = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) acc += std::norm(f[k] - g[k]);
  return std::sqrt(acc * f.grid().spacing() / (2.0 * std::numbers::pi));
}

double sup_norm(const SpectralField& f, const SupNormOptions& opt) {
  const auto& g = f.grid();
  const std::size_t over = std::max<std::size_t>(1, opt.oversample);
  const auto fine = g.padded(g.size() * over);
  std::vector<cplx> buf(fine.size());
  detail::embed(f.amplitudes(), buf);
  detail::inverse_in_place(buf, fine);

  const std::size_t n = buf.size();
  std::vector<double> mag(n);
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    mag[j] = f.real_valued() ? std::abs(buf[j].real()) : std::abs(buf[j]);
    best = std::max(best, mag[j]);
  }
  if (!opt.refine || best == 0.0) return best;

  // Local maxima of the periodic sample sequence, largest first.
  std::vector<std::size_t> peaks;
  for (std::size_t j = 0; j < n; ++j) {
    const double l = mag[(j + n - 1) % n], r = mag[(j + 1) % n];
    if (mag[j] >= l && mag[j] >= r && mag[j] > 0.0) peaks.push_back(j);
  }
  std::sort(peaks.begin(), peaks.end(), [&](auto a, auto b) { return mag[a] > mag[b] || (mag[a] == mag[b] && a < b); });
  const double h = fine.dx();
  for (std::size_t c = 0; c < std::min(opt.candidates, peaks.size()); ++c) {
    const double x = fine.position(peaks[c]);
    best = std::max(best, golden_max(f, x - h, x + h));
  }
  return best;
}

}  // namespace imbq
