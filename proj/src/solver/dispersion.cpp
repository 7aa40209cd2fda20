#include "imbq/dispersion.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "imbq/errors.hpp"
#include "imbq/solver.hpp"

namespace imbq {
namespace {

// Least squares for a ~ A cos(omega t), Gauss-Newton in (A, omega).
void fit_cosine(const std::vector<double>& t, const std::vector<double>& a, double& amp, double& omega) {
  // Starting frequency from interpolated zero crossings.
  std::vector<double> crossings;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    if (a[i] == 0.0) {
      crossings.push_back(t[i]);
    } else if (a[i] * a[i + 1] < 0.0) {
      crossings.push_back(t[i] + (t[i + 1] - t[i]) * a[i] / (a[i] - a[i + 1]));
    }
  }
  if (crossings.size() < 2) throw ConvergenceError("dispersion fit needs at least two zero crossings");
  omega = std::numbers::pi * static_cast<double>(crossings.size() - 1) / (crossings.back() - crossings.front());
  amp = 1.0;

  for (int it = 0; it < 100; ++it) {
    double jaa = 0, jao = 0, joo = 0, ra = 0, ro = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double c = std::cos(omega * t[i]), s = std::sin(omega * t[i]);
      const double r = a[i] - amp * c;
      const double da = c, dom = -amp * t[i] * s;
      jaa += da * da;
      jao += da * dom;
      joo += dom * dom;
      ra += da * r;
      ro += dom * r;
    }
    const double det = jaa * joo - jao * jao;
    if (!(std::abs(det) > 0.0)) throw ConvergenceError("dispersion fit: singular normal equations");
    const double dA = (joo * ra - jao * ro) / det;
    const double dW = (jaa * ro - jao * ra) / det;
    amp += dA;
    omega += dW;
    if (std::abs(dW) <= 1e-13 * std::abs(omega) && std::abs(dA) <= 1e-12) return;
  }
  throw ConvergenceError("dispersion fit did not converge");
}

}  // namespace

DispersionFit dispersion_check(const FrequencyGrid& grid, double k, double horizon) {
  if (!(horizon > 0.0)) throw std::invalid_argument("dispersion horizon must be positive");
  const auto u0 = cosine_mode(grid, k);
  const CauchyData d(u0, SpectralField::zeros(grid));

  SolverConfig cfg;
  cfg.nonlinear = false;
  cfg.horizon = horizon;
  cfg.window = horizon / 16.0;
  const auto tr = solve(d, cfg);

  const std::size_t idx = grid.zero_index() + static_cast<std::size_t>(std::lround(k / grid.spacing()));
  DispersionFit fit;
  fit.k = k;
  fit.expected = std::abs(k) / std::sqrt(1.0 + k * k);
  fit.times = tr.times;
  for (const auto& u : tr.u) fit.amplitudes.push_back(u[idx].real() / u0[idx].real());
  double amp = 1.0;
  fit_cosine(fit.times, fit.amplitudes, amp, fit.omega);
  fit.omega = std::abs(fit.omega);
  fit.relative_error = std::abs(fit.omega - fit.expected) / fit.expected;
  return fit;
}

DispersionFit dispersion_check(double k, double horizon) {
  const double ak = std::abs(k);
  if (!(ak > 0.0)) throw std::invalid_argument("dispersion check needs k != 0");
  // Spacing k/L with L = ceil(k) keeps k on the grid and the spacing <= 1.
  const double nodes = std::max(1.0, std::ceil(ak));
  const double spacing = ak / nodes;
  auto half = static_cast<std::size_t>(2.0 * nodes);
  if (half < 4) half = 4;
  return dispersion_check(FrequencyGrid(spacing, 2 * half), ak, horizon);
}

}  // namespace imbq
