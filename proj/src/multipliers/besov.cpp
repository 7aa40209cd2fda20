#include "imbq/besov.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace imbq {
namespace {

using Rule = boost::math::quadrature::gauss<double, 10>;

// Breakpoints graded geometrically away from the kinks at xi = 0 and xi = -h.
std::vector<double> graded_breakpoints(double h, int resolution, double extent) {
  std::vector<double> pts{-extent, extent};
  const double r_min = 1e-7;
  const double ratio = std::pow(10.0, 1.0 / resolution);
  for (double c : {0.0, -h}) {
    pts.push_back(c);
    for (double r = r_min; r < 2.0 * extent; r *= ratio) {
      pts.push_back(c + r);
      pts.push_back(c - r);
    }
  }
  std::vector<double> kept;
  for (double x : pts)
    if (x >= -extent && x <= extent) kept.push_back(x);
  std::sort(kept.begin(), kept.end());
  std::vector<double> out;
  for (double x : kept)
    if (out.empty() || x - out.back() > 1e-12 * (1.0 + std::abs(x))) out.push_back(x);
  return out;
}

// Constant C with |m'(xi)| <= C/|xi|^3 for |xi| >= 1.
double derivative_decay(const Symbol& s) {
  switch (s.kind) {
    case SymbolKind::m1:
    case SymbolKind::P: return 2.0;
    case SymbolKind::m2_plus:
    case SymbolKind::m2_minus:
    case SymbolKind::Q: return std::abs(s.t);
    case SymbolKind::m3:
    case SymbolKind::R: return 4.0 * std::max(std::abs(s.t), s.t * s.t);
    case SymbolKind::lambda: return 1.0;
  }
  return 0.0;
}

double seminorm_at(const Symbol& sym, const BesovOptions& opt, int resolution) {
  // Outer variable u = log h; the integrand becomes ||D_h m|| h^{-1/2}.
  const double u0 = std::log(opt.h_min), u1 = std::log(opt.h_max);
  const int panels = std::max(1, static_cast<int>(std::ceil((u1 - u0) / std::log(10.0) * resolution)));
  const double du = (u1 - u0) / panels;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();

  // Symmetric 10-point rule: node list (+/- abscissa), weights.
  std::vector<double> nodes, weights;
  for (int p = 0; p < panels; ++p) {
    const double mid = u0 + (p + 0.5) * du, half = 0.5 * du;
    for (std::size_t i = 0; i < x.size(); ++i) {
      nodes.push_back(mid + half * x[i]);
      weights.push_back(half * w[i]);
      if (x[i] != 0.0) {
        nodes.push_back(mid - half * x[i]);
        weights.push_back(half * w[i]);
      }
    }
  }
  std::vector<double> values(nodes.size());
  const long n = static_cast<long>(nodes.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    const double h = std::exp(nodes[i]);
    values[i] = translation_difference(sym, h, resolution, opt.xi_extent) / std::sqrt(h);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) acc += weights[i] * values[i];
  return 2.0 * acc;  // h and -h contribute equally
}

}  // namespace

double translation_difference(const Symbol& sym, double h, int resolution, double extent) {
  const auto pts = graded_breakpoints(h, resolution, extent);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    acc += Rule::integrate(
        [&](double xi) { return std::norm(eval_symbol(sym, xi + h) - eval_symbol(sym, xi)); }, pts[i],
        pts[i + 1]);
  }
  return std::sqrt(acc);
}

BesovEstimate besov_seminorm(const Symbol& sym, const BesovOptions& opt) {
  if (!(opt.h_min > 0.0) || !(opt.h_min < opt.h_max)) throw std::invalid_argument("need 0 < h_min < h_max");
  if (opt.resolution < 1) throw std::invalid_argument("resolution must be positive");
  if (!(opt.xi_extent > 2.0 * opt.h_max)) throw std::invalid_argument("xi extent must exceed 2 h_max");

  BesovEstimate est;
  est.symbol = sym.name();
  est.t = sym.t;
  est.resolution = 2 * opt.resolution;
  est.xi_extent = opt.xi_extent;
  est.coarse_value = seminorm_at(sym, opt, opt.resolution);
  est.value = seminorm_at(sym, opt, 2 * opt.resolution);

  // ||D_h m||_{L^2(|xi| > X)} <= sqrt(2/5) C |h| (X - |h|)^{-5/2}; integrate against 2 |h|^{-3/2}.
  const double c = derivative_decay(sym);
  est.tail_bound = 4.0 * std::sqrt(0.4) * c * std::sqrt(opt.h_max) * std::pow(opt.xi_extent - opt.h_max, -2.5);

  const double scale = std::max(std::abs(est.value), 1e-300);
  est.converged = std::abs(est.value - est.coarse_value) <= opt.stability_tol * scale ||
                  (est.value == 0.0 && est.coarse_value == 0.0);
  return est;
}

}  // namespace imbq
