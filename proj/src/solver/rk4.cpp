#include <cmath>
#include <numbers>
#include <sstream>

#include "imbq/norms.hpp"
#include "imbq/power.hpp"
#include "imbq/solver.hpp"

namespace imbq {
namespace {

struct State {
  std::vector<cplx> u, v;
};

class Rhs {
 public:
  Rhs(const FrequencyGrid& g, const SolverConfig& cfg) : g_(g), cfg_(cfg), lam2_(g.size()) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double xi = g.node(k);
      lam2_[k] = xi * xi / (1.0 + xi * xi);
    }
  }

  // (u, v)' = (v, -lambda^2 (u + sign (u^p)^))
  State operator()(const State& s) const {
    State d{s.v, std::vector<cplx>(s.u.size())};
    std::vector<cplx> nl(s.u.size());
    if (cfg_.nonlinear) {
      auto pw = pointwise_power(SpectralField(g_, s.u, true), cfg_.p, cfg_.sign, cfg_.dealias());
      nl = std::move(pw).release();
    }
    for (std::size_t k = 0; k < s.u.size(); ++k) d.v[k] = -lam2_[k] * (s.u[k] + nl[k]);
    return d;
  }

 private:
  const FrequencyGrid& g_;
  const SolverConfig& cfg_;
  std::vector<double> lam2_;
};

State axpy(const State& s, double a, const State& d) {
  State r = s;
  for (std::size_t k = 0; k < r.u.size(); ++k) {
    r.u[k] += a * d.u[k];
    r.v[k] += a * d.v[k];
  }
  return r;
}

double size_of(const State& s) {
  double acc = 0.0;
  for (std::size_t k = 0; k < s.u.size(); ++k) acc += std::norm(s.u[k]) + std::norm(s.v[k]);
  return std::sqrt(acc);
}

}  // namespace

Trajectory rk4_solve(const CauchyData& d, const SolverConfig& cfg, double dt, std::size_t stride) {
  cfg.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (stride == 0) stride = 1;
  const auto& g = d.grid();
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::round(cfg.horizon / dt)));
  const double h = cfg.horizon / static_cast<double>(steps);

  Rhs rhs(g, cfg);
  State s{d.u0.values(), d.u1.values()};
  const double initial = std::max(size_of(s), 1e-300);

  Trajectory tr;
  auto record = [&](double t) {
    tr.times.push_back(t);
    auto u = s.u, v = s.v;
    symmetrize(u);
    symmetrize(v);
    tr.u.emplace_back(g, std::move(u), true);
    tr.ut.emplace_back(g, std::move(v), true);
  };
  record(0.0);
  for (std::size_t n = 1; n <= steps; ++n) {
    const State k1 = rhs(s);
    const State k2 = rhs(axpy(s, 0.5 * h, k1));
    const State k3 = rhs(axpy(s, 0.5 * h, k2));
    const State k4 = rhs(axpy(s, h, k3));
    for (std::size_t k = 0; k < s.u.size(); ++k) {
      s.u[k] += h / 6.0 * (k1.u[k] + 2.0 * k2.u[k] + 2.0 * k3.u[k] + k4.u[k]);
      s.v[k] += h / 6.0 * (k1.v[k] + 2.0 * k2.v[k] + 2.0 * k3.v[k] + k4.v[k]);
    }
    const double sz = size_of(s);
    if (!std::isfinite(sz) || sz > 1e6 * initial) {
      std::ostringstream msg;
      msg << "RK4 instability at step " << n << " (t=" << n * h << "): norm grew by " << sz / initial;
      throw ConvergenceError(msg.str(), {sz / initial});
    }
    if (n % stride == 0 || n == steps) record(n == steps ? cfg.horizon : n * h);
  }
  return tr;
}

double energy(const SpectralField& u, const SpectralField& ut, int p, double sign) {
  if (!(u.grid() == ut.grid())) throw GridMismatch("energy: grids differ");
  const auto& g = u.grid();
  const std::size_t z = g.zero_index();
  double vmax = 0.0;
  for (std::size_t k = 0; k < ut.size(); ++k) vmax = std::max(vmax, std::abs(ut[k]));
  if (std::abs(ut[z]) > 1e-12 * std::max(vmax, 1e-300) && std::abs(ut[z]) > 1e-300)
    throw std::invalid_argument("energy requires a mean-zero velocity (u_t^(0) = 0)");

  double quad = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (k == z) continue;
    const double xi = g.node(k);
    const double lam2 = xi * xi / (1.0 + xi * xi);
    quad += std::norm(ut[k]) / lam2 + std::norm(u[k]);
  }
  quad *= 0.5 * g.spacing();

  // sum_j u^{p+1} dx is the zero mode of the (alias-free) transform of u^{p+1}.
  const auto pw = pointwise_power(u, p + 1, 1.0, 0.5 * (p + 2));
  const double potential = 2.0 * std::numbers::pi * sign / (p + 1) * pw[z].real();
  return quad + potential;
}

double energy_drift(const Trajectory& tr, int p, double sign) {
  if (tr.size() == 0) return 0.0;
  const double e0 = energy(tr.u.front(), tr.ut.front(), p, sign);
  double worst = 0.0;
  for (std::size_t i = 1; i < tr.size(); ++i)
    worst = std::max(worst, std::abs(energy(tr.u[i], tr.ut[i], p, sign) - e0));
  return worst / std::max(std::abs(e0), 1e-300);
}

}  // namespace imbq
