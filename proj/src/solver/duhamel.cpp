#include <algorithm>
#include <cmath>
#include <sstream>

#include "imbq/norms.hpp"
#include "imbq/power.hpp"
#include "imbq/solver.hpp"

namespace imbq {

void SolverConfig::validate() const {
  if (p < 2) throw std::invalid_argument("nonlinearity power p must be an integer > 1");
  if (sign != 1.0 && sign != -1.0) throw std::invalid_argument("sign must be +1 or -1");
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (quadrature_nodes < 5 || quadrature_nodes % 2 == 0)
    throw std::invalid_argument("quadrature nodes per window must be odd and >= 5");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be positive");
  if (!(picard_tol > 0.0)) throw std::invalid_argument("picard_tol must be positive");
  if (!(window_safety > 0.0) || !(ball_constant > 0.0))
    throw std::invalid_argument("window sizing constants must be positive");
  if (window && !(*window > 0.0)) throw std::invalid_argument("window override must be positive");
  if (dealias_factor != 0.0 && dealias_factor + 1e-12 < 0.5 * (p + 1))
    throw std::invalid_argument("dealias factor must be at least (p+1)/2");
}

WindowQuadrature window_quadrature(double length, int nodes) {
  if (nodes < 5 || nodes % 2 == 0) throw std::invalid_argument("window quadrature needs an odd node count >= 5");
  if (!(length > 0.0)) throw std::invalid_argument("window length must be positive");
  const auto n = static_cast<std::size_t>(nodes);
  const double h = length / static_cast<double>(n - 1);
  WindowQuadrature q;
  q.times.resize(n);
  for (std::size_t i = 0; i < n; ++i) q.times[i] = h * static_cast<double>(i);
  q.times.back() = length;
  q.weights.assign(n * n, 0.0);

  auto simpson = [&](std::size_t row, std::size_t end) {  // nodes 0..end, end even
    for (std::size_t j = 0; j + 2 <= end; j += 2) {
      q.weights[row * n + j] += h / 3.0;
      q.weights[row * n + j + 1] += 4.0 * h / 3.0;
      q.weights[row * n + j + 2] += h / 3.0;
    }
  };
  for (std::size_t i = 1; i < n; ++i) {
    if (i == 1) {
      q.weights[n + 0] = 5.0 * h / 12.0;
      q.weights[n + 1] = 8.0 * h / 12.0;
      q.weights[n + 2] = -h / 12.0;
    } else if (i % 2 == 0) {
      simpson(i, i);
    } else {
      simpson(i, i - 3);
      const double c = 3.0 * h / 8.0;
      q.weights[i * n + i - 3] += c;
      q.weights[i * n + i - 2] += 3.0 * c;
      q.weights[i * n + i - 1] += 3.0 * c;
      q.weights[i * n + i] += c;
    }
  }
  return q;
}

namespace {

std::vector<double> lambda_table(const FrequencyGrid& g) {
  std::vector<double> lam(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) lam[k] = lambda_symbol(g.node(k));
  return lam;
}

double space_time_norm(const SpectralField& f, double s) { return sobolev_norm(f, s) + sup_norm(f); }

}  // namespace

Trajectory duhamel_functional(const CauchyData& d, const Trajectory& u, const SolverConfig& cfg) {
  const std::size_t n = u.times.size();
  if (n == 0 || u.u.size() != n) throw std::invalid_argument("trajectory has no samples");
  const double length = u.times.back();
  const auto q = window_quadrature(length, static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(q.times[i] - u.times[i]) > 1e-12 * std::max(1.0, length))
      throw std::invalid_argument("trajectory is not sampled on the window quadrature nodes");

  const auto& g = d.grid();
  const std::size_t m = g.size();
  Trajectory z;
  z.times = u.times;
  z.u.reserve(n);
  z.ut.reserve(n);

  if (!cfg.nonlinear) {
    for (std::size_t i = 0; i < n; ++i) {
      z.u.push_back(free_propagator(d, u.times[i]));
      z.ut.push_back(free_velocity(d, u.times[i]));
    }
    return z;
  }

  const auto lam = lambda_table(g);
  std::vector<cplx> forcing(n * m);
  for (std::size_t j = 0; j < n; ++j) {
    if (!(u.u[j].grid() == g)) throw GridMismatch("trajectory grid differs from data grid");
    const auto pw = pointwise_power(u.u[j], cfg.p, 1.0, cfg.dealias());
    std::copy(pw.amplitudes().begin(), pw.amplitudes().end(), forcing.begin() + static_cast<std::ptrdiff_t>(j * m));
  }
  std::vector<cplx> sin_sum(n * m), cos_sum(n * m);
  kernels::duhamel_sums({q.times, q.weights, lam, forcing}, sin_sum, cos_sum, cfg.exec);

  for (std::size_t i = 0; i < n; ++i) {
    auto zu = free_propagator(d, q.times[i]).values();
    auto zt = free_velocity(d, q.times[i]).values();
    for (std::size_t k = 0; k < m; ++k) {
      zu[k] -= cfg.sign * lam[k] * sin_sum[i * m + k];
      zt[k] -= cfg.sign * lam[k] * lam[k] * cos_sum[i * m + k];
    }
    symmetrize(zu);
    symmetrize(zt);
    z.u.emplace_back(g, std::move(zu), true);
    z.ut.emplace_back(g, std::move(zt), true);
  }
  return z;
}

double ball_radius(const CauchyData& d, const SolverConfig& cfg) {
  return cfg.ball_constant * (space_time_norm(d.u0, cfg.s) + space_time_norm(d.u1, cfg.s));
}

double window_length(const CauchyData& d, const SolverConfig& cfg) {
  if (cfg.window) return *cfg.window;
  const double r = ball_radius(d, cfg);
  if (r == 0.0) return cfg.horizon;
  return cfg.window_safety * std::pow(r, -0.5 * (cfg.p - 1));
}

PicardResult picard_window(const CauchyData& d, double window, const SolverConfig& cfg) {
  cfg.validate();
  const auto q = window_quadrature(window, cfg.quadrature_nodes);
  // Absolute tolerance, scaled up for large data so rounding cannot stall it.
  const double tol = cfg.picard_tol * std::max(1.0, ball_radius(d, cfg));

  Trajectory cur;
  cur.times = q.times;
  for (double t : q.times) {
    cur.u.push_back(free_propagator(d, t));
    cur.ut.push_back(free_velocity(d, t));
  }

  WindowReport rep;
  rep.length = window;
  for (int k = 1; k <= cfg.max_iterations; ++k) {
    auto next = duhamel_functional(d, cur, cfg);
    double diff = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i)
      diff = std::max(diff, space_time_norm(next.u[i] - cur.u[i], cfg.s));
    if (!rep.differences.empty() && rep.differences.back() > 0.0)
      rep.ratios.push_back(diff / rep.differences.back());
    rep.differences.push_back(diff);
    cur = std::move(next);
    if (!std::isfinite(diff) || diff > 1e100) break;
    if (diff < tol) {
      rep.iterations = k;
      cur.windows.push_back(rep);
      return {std::move(cur), rep};
    }
  }
  std::ostringstream msg;
  msg << "Picard iteration did not converge on a window of length " << window << " after "
      << rep.differences.size() << " iterations (last difference " << rep.differences.back() << ")";
  throw ConvergenceError(msg.str(), rep.ratios);
}

Trajectory solve(const CauchyData& data, const SolverConfig& cfg) {
  cfg.validate();
  Trajectory out;
  CauchyData d = data;
  double t0 = 0.0;
  const double horizon = cfg.horizon;
  for (std::size_t w = 0; t0 < horizon * (1.0 - 1e-14); ++w) {
    double len = std::min(window_length(d, cfg), horizon - t0);
    if (horizon - t0 - len < 1e-12 * horizon) len = horizon - t0;

    std::optional<PicardResult> res;
    std::vector<double> history;
    int halvings = 0;
    for (; halvings <= cfg.max_window_halvings; ++halvings) {
      try {
        res = picard_window(d, len, cfg);
        break;
      } catch (const ConvergenceError& e) {
        history = e.history();
        if (halvings == cfg.max_window_halvings) break;
        len *= 0.5;
      }
    }
    if (!res) {
      std::ostringstream msg;
      msg << "window " << w << " starting at t=" << t0 << " failed to converge after " << halvings
          << " halvings (last length " << len << ")";
      throw SolveError(msg.str(), w, history);
    }

    auto& tr = res->trajectory;
    res->report.start = t0;
    res->report.halvings = halvings;
    for (std::size_t i = (w == 0 ? 0 : 1); i < tr.size(); ++i) {
      out.times.push_back(t0 + tr.times[i]);
      out.u.push_back(tr.u[i]);
      out.ut.push_back(tr.ut[i]);
    }
    out.windows.push_back(res->report);
    d = CauchyData(tr.u.back(), tr.ut.back());
    t0 += len;
  }
  if (!out.times.empty()) out.times.back() = horizon;
  return out;
}

}  // namespace imbq
