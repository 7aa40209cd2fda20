#include <cmath>
#include <stdexcept>

#include "imbq/illposedness.hpp"
#include "imbq/norms.hpp"

namespace imbq {
namespace {

FrequencyGrid flowmap_grid(int N, int p, double spacing) {
  return grid_with_spacing(spacing, static_cast<double>(p) * (N + 2) + 2.0);
}

SolverConfig flowmap_config(int p, double sign, double t) {
  SolverConfig cfg;
  cfg.p = p;
  cfg.sign = sign;
  cfg.horizon = t;
  cfg.s = 0.0;
  cfg.picard_tol = 1e-16;
  return cfg;
}

// u_eps(t) - eps L(t) for the eps-scaled box data.
SpectralField remainder(const IPData& d, const SolverConfig& cfg, double eps) {
  const CauchyData scaled(eps * d.data.u0, eps * d.data.u1);
  const auto tr = solve(scaled, cfg);
  if (tr.windows.size() != 1) throw std::runtime_error("flow-map check expects a single Picard window");
  return tr.final_u() - eps * free_propagator(d.data, cfg.horizon);
}

double factorial(int p) {
  double f = 1.0;
  for (int q = 2; q <= p; ++q) f *= q;
  return f;
}

}  // namespace

FlowmapCheck flowmap_derivative_check(int N, int p, double sign, double t, double eps, double spacing) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  const auto d = make_ip_data(N, flowmap_grid(N, p, spacing));
  const auto cfg = flowmap_config(p, sign, t);
  const auto ap = compute_Ap(d, p, sign, t);
  const double ref = sobolev_norm(ap, 0.0);

  auto error_at = [&](double e) {
    auto r = remainder(d, cfg, e);
    r *= factorial(p) / std::pow(e, p);
    return l2_distance(r, ap) / ref;
  };
  FlowmapCheck out;
  out.relative_error = error_at(eps);
  out.relative_error_half = error_at(0.5 * eps);
  out.halving_ratio = out.relative_error / out.relative_error_half;
  return out;
}

LowerOrderCheck lower_order_check(int N, double sign, double t, double eps, double spacing) {
  constexpr int p = 3;
  const auto d = make_ip_data(N, flowmap_grid(N, p, spacing));
  const auto cfg = flowmap_config(p, sign, t);

  // r(e) = (u_e - e L)/e^2 = c2 + e c3 + ...;  2 r(e/2) - r(e) = c2 + O(e^2).
  auto r_full = remainder(d, cfg, eps);
  r_full *= 1.0 / (eps * eps);
  auto r_half = remainder(d, cfg, 0.5 * eps);
  r_half *= 4.0 / (eps * eps);
  const auto c2 = 2.0 * r_half - r_full;

  LowerOrderCheck out;
  out.quadratic_norm = sobolev_norm(c2, 0.0);
  out.cubic_norm = sobolev_norm(compute_Ap(d, p, sign, t), 0.0) / factorial(p);
  out.ratio = out.quadratic_norm / out.cubic_norm;
  return out;
}

}  // namespace imbq
