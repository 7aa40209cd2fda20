#include "imbq/kernel_check.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <exception>
#include <limits>

#include "imbq/errors.hpp"
#include "imbq/grid.hpp"

namespace imbq {

KernelInequality check_kernel_inequality(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("kernel check needs finite a, b");
  auto f = [a, b](double z) {
    const double za = z - a, zb = z - b;
    const double q = 1.0 + zb * zb;
    return 1.0 / ((1.0 + za * za) * q * q);
  };

  // Split at both peaks, the midpoint and geometrically growing distances
  // from each peak, so wide separations do not leave one huge panel.
  std::vector<double> cuts{a, b, 0.5 * (a + b)};
  const double span = std::abs(a - b) + 1.0;
  for (double c : {a, b})
    for (double r = 1.0; r <= span; r *= 4.0) {
      cuts.push_back(c - r);
      cuts.push_back(c + r);
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double inf = std::numeric_limits<double>::infinity();
  double lhs = 0.0, err = 0.0, e = 0.0;
  lhs += GK::integrate(f, -inf, cuts.front(), 20, 1e-13, &e);
  err += e;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    lhs += GK::integrate(f, cuts[i], cuts[i + 1], 20, 1e-13, &e);
    err += e;
  }
  lhs += GK::integrate(f, cuts.back(), inf, 20, 1e-13, &e);
  err += e;

  if (!(lhs > 0.0) || err > 1e-8 * lhs)
    throw ConvergenceError("kernel quadrature did not converge", {lhs, err});

  const double br = bracket(a - b);
  return {a, b, lhs, 1.0 / (br * br), lhs * br * br, err};
}

KernelSweep kernel_sweep(int lo, int hi, int stride) {
  if (stride < 1 || hi < lo) throw std::invalid_argument("kernel sweep needs lo <= hi and stride >= 1");
  std::vector<double> grid;
  for (int v = lo; v <= hi; v += stride) grid.push_back(v);
  const std::size_t n = grid.size();
  KernelSweep sweep;
  sweep.rows.resize(n * n);
  const long total = static_cast<long>(n * n);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (long idx = 0; idx < total; ++idx) {
    const auto i = static_cast<std::size_t>(idx) / n, j = static_cast<std::size_t>(idx) % n;
    try {
      sweep.rows[static_cast<std::size_t>(idx)] = check_kernel_inequality(grid[i], grid[j]);
    } catch (...) {
#pragma omp critical(kernel_sweep_error)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  sweep.min_ratio = sweep.max_ratio = sweep.rows.front().ratio;
  for (const auto& r : sweep.rows) {
    sweep.min_ratio = std::min(sweep.min_ratio, r.ratio);
    sweep.max_ratio = std::max(sweep.max_ratio, r.ratio);
  }
  return sweep;
}

double symbol_difference_bound(double a, double b) noexcept {
  const double aa = std::abs(a), bb = std::abs(b);
  if (aa == bb) return 0.0;
  const double ba = bracket(a), bbr = bracket(b);
  return std::abs((aa - bb) * (aa + bb)) / (ba * bbr * (aa * bbr + bb * ba));
}

double symbol_difference_envelope(double a, double b) noexcept {
  const double ba = bracket(a), bb = bracket(b);
  return 2.0 * std::abs(a - b) * std::max(1.0 / (ba * bb * bb), 1.0 / (ba * ba * bb));
}

}  // namespace imbq
