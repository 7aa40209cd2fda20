#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "imbq/illposedness.hpp"
#include "imbq/norms.hpp"

namespace imbq {

BandWindow inflation_band(int p, int N) {
  if (p % 2 == 0) return {0.25, 0.5};
  return {static_cast<double>(N), static_cast<double>(N + 1)};
}

InflationRow inflation_ratio(const IPData& d, int p, double sign, double s, double t, const QuadratureConfig& q) {
  const auto band = inflation_band(p, d.N);
  InflationRow row;
  row.N = d.N;
  row.t = t;
  row.p = p;
  row.s = s;
  row.sign = sign;
  row.band_lo = band.lo;
  row.band_hi = band.hi;

  const auto ap = compute_Ap(d, p, sign, t, q);
  row.numerator = restricted_norm(ap, band, s).value;
  row.band_l2 = restricted_norm(ap, band, 0.0).value;
  row.denominator = std::pow(sobolev_norm(d.data.u0, s) + sobolev_norm(d.data.u1, s), p);
  row.ratio = row.numerator / row.denominator;
  return row;
}

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope fit needs matching samples");
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("log-log fit needs positive samples");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  SlopeFit f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  double r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = std::log(y[i]) - (f.intercept + f.slope * std::log(x[i]));
    r2 += r * r;
  }
  f.residual = std::sqrt(r2 / n);
  return f;
}

double expected_slope(int p, double s) { return p % 2 == 0 ? -s * p : -s * (p - 1); }

InflationReport ratio_sweep(const std::vector<int>& Ns, int p, double sign, double s, double t,
                            const SweepOptions& opt) {
  if (Ns.empty()) throw std::invalid_argument("ratio sweep needs at least one N");
  for (std::size_t i = 1; i < Ns.size(); ++i)
    if (Ns[i] <= Ns[i - 1]) throw std::invalid_argument("N list must be strictly increasing");

  const int n_max = Ns.back();
  const auto grid = grid_with_spacing(opt.spacing, static_cast<double>(p) * (n_max + 2) + 2.0);

  InflationReport rep;
  rep.p = p;
  rep.s = s;
  rep.t = t;
  rep.sign = sign;
  rep.spacing = opt.spacing;
  rep.expected_slope = expected_slope(p, s);
  rep.slope_tolerance = opt.slope_tolerance;
  const auto band = inflation_band(p, Ns.front());
  rep.band_lo = band.lo;
  rep.band_hi = band.hi;
  for (int N : Ns) rep.rows.push_back(inflation_ratio(make_ip_data(N, grid), p, sign, s, t, opt.quadrature));

  rep.monotone = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (!(rep.rows[i].ratio > rep.rows[i - 1].ratio)) rep.monotone = false;

  if (rep.rows.size() >= 3) {
    std::vector<double> x, y;
    for (const auto& r : rep.rows) {
      x.push_back(r.N);
      y.push_back(r.ratio);
    }
    rep.fit = fit_loglog(x, y);
    rep.pass = std::abs(rep.fit->slope - rep.expected_slope) <= opt.slope_tolerance;
  }
  return rep;
}

}  // namespace imbq
