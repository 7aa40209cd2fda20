#include <omp.h>

#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "imbq/illposedness.hpp"
#include "imbq/norms.hpp"
#include "imbq/power.hpp"
#include "imbq/transform.hpp"

namespace imbq {
namespace {

double factorial(int p) {
  double f = 1.0;
  for (int q = 2; q <= p; ++q) f *= q;
  return f;
}

void check_extent(const IPData& d, int p) {
  if (p < 2) throw std::invalid_argument("p must be an integer > 1");
  const double need = static_cast<double>(p) * (d.N + 2);
  if (d.grid().extent() + 1e-12 < need) {
    std::ostringstream msg;
    msg << "grid extent " << d.grid().extent() << " is below p(N+2) = " << need;
    throw std::invalid_argument(msg.str());
  }
}

// Transform of g_tau^p on the data grid, with g_tau^ the free evolution of the box data.
class PowerOfFreeEvolution {
 public:
  PowerOfFreeEvolution(const IPData& d, int p, double padding) : d_(d), p_(p) {
    const auto& g = d.grid();
    const double half_width = std::max(g.extent(), padding * (d.N + 1) + 2.0);
    const auto half = static_cast<std::size_t>(std::ceil(half_width / g.spacing() - 1e-9));
    big_ = g.padded(std::max(g.size(), 2 * half));
    offset_ = (big_.size() - g.size()) / 2;
    for (std::size_t k = d.box_begin; k < d.box_end; ++k) box_lambda_.push_back(lambda_symbol(g.node(k)));
  }

  std::size_t padded_size() const noexcept { return big_.size(); }

  /// Writes the truncated transform into `out` (data-grid size); `work` has padded size.
  void evaluate(double tau, std::span<cplx> work, std::span<cplx> out) const {
    const auto& g = d_.grid();
    std::fill(work.begin(), work.end(), cplx{});
    for (std::size_t i = 0; i < box_lambda_.size(); ++i) {
      const std::size_t k = d_.box_begin + i;
      const cplx ph(std::cos(tau * box_lambda_[i]), -std::sin(tau * box_lambda_[i]));
      work[offset_ + k] = ph;
      work[offset_ + g.size() - k] = std::conj(ph);
    }
    detail::inverse_in_place(work, big_);
    kernels::serial::power(work, p_, 1.0, true);
    detail::forward_in_place(work, big_);

    double peak = 0.0;
    for (const auto& v : work) peak = std::max(peak, std::abs(v));
    const std::size_t n = work.size();
    const double edge = std::max({std::abs(work[0]), std::abs(work[1]), std::abs(work[n - 1]), std::abs(work[n - 2])});
    if (edge > 1e-9 * peak) throw std::runtime_error("convolution wrapped around the padded buffer");
    detail::truncate(work, out);
  }

 private:
  const IPData& d_;
  int p_;
  FrequencyGrid big_;
  std::size_t offset_ = 0;
  std::vector<double> box_lambda_;
};

}  // namespace

SpectralField compute_Ap(const IPData& d, int p, double sign, double t, const QuadratureConfig& q) {
  check_extent(d, p);
  if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
  if (q.tau_nodes < 3 || q.tau_nodes % 2 == 0) throw std::invalid_argument("tau nodes must be odd and >= 3");
  const auto& g = d.grid();
  const std::size_t m = g.size();
  if (t == 0.0) return SpectralField::zeros(g);

  const PowerOfFreeEvolution power(d, p, q.padding > 0.0 ? q.padding : p + 1.0);
  const std::size_t coarse = static_cast<std::size_t>(q.tau_nodes);
  const std::size_t fine = q.check_convergence ? 2 * coarse - 1 : coarse;
  const double h = t / static_cast<double>(fine - 1);
  auto simpson = [](std::size_t j, std::size_t n, double step) {
    if (j == 0 || j == n - 1) return step / 3.0;
    return (j % 2 == 1 ? 4.0 : 2.0) * step / 3.0;
  };

  std::vector<double> lam(m);
  for (std::size_t k = 0; k < m; ++k) lam[k] = lambda_symbol(g.node(k));

  const bool parallel = q.exec == kernels::Exec::parallel;
  const std::size_t batch = parallel ? static_cast<std::size_t>(std::max(1, omp_get_max_threads())) : 1;
  std::vector<cplx> rows(batch * m), work(batch * power.padded_size());
  std::vector<cplx> acc_fine(m), acc_coarse(m);

  for (std::size_t j0 = 0; j0 < fine; j0 += batch) {
    const std::size_t count = std::min(batch, fine - j0);
    std::exception_ptr failure;
#pragma omp parallel for schedule(static) if (parallel)
    for (long b = 0; b < static_cast<long>(count); ++b) {
      const auto bb = static_cast<std::size_t>(b);
      try {
        power.evaluate(h * static_cast<double>(j0 + bb),
                       std::span(work).subspan(bb * power.padded_size(), power.padded_size()),
                       std::span(rows).subspan(bb * m, m));
      } catch (...) {
#pragma omp critical(compute_ap_error)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);

    // Accumulate in tau order so the result does not depend on the thread count.
    for (std::size_t b = 0; b < count; ++b) {
      const std::size_t j = j0 + b;
      const double tau = h * static_cast<double>(j);
      const auto row = std::span<const cplx>(rows).subspan(b * m, m);
      kernels::accumulate_sine(acc_fine, row, lam, t - tau, simpson(j, fine, h), q.exec);
      if (q.check_convergence && j % 2 == 0)
        kernels::accumulate_sine(acc_coarse, row, lam, t - tau, simpson(j / 2, coarse, 2.0 * h), q.exec);
    }
  }

  const double scale = -sign * factorial(p);
  for (std::size_t k = 0; k < m; ++k) {
    acc_fine[k] *= scale * lam[k];
    acc_coarse[k] *= scale * lam[k];
  }
  symmetrize(acc_fine);
  SpectralField out(g, std::move(acc_fine), true);

  if (q.check_convergence) {
    symmetrize(acc_coarse);
    const SpectralField crude(g, std::move(acc_coarse), true);
    const double ref = sobolev_norm(out, 0.0);
    const double change = l2_distance(out, crude);
    if (ref > 0.0 && change > q.convergence_tol * ref) {
      std::ostringstream msg;
      msg << "tau quadrature not converged: relative change " << change / ref << " under node doubling";
      throw ConvergenceError(msg.str(), {change / ref});
    }
  }
  return out;
}

SpectralField brute_force_Ap(const IPData& d, int p, double sign, double t) {
  check_extent(d, p);
  if (p > 3) throw std::invalid_argument("brute_force_Ap supports p <= 3");
  const auto& g = d.grid();
  const std::size_t m = g.size();
  if (t == 0.0) return SpectralField::zeros(g);

  // Signed box nodes: offset from the zero node, sign epsilon, lambda(|eta|).
  struct Node {
    long offset;
    double eps;
    double lam;
  };
  std::vector<Node> nodes;
  for (std::size_t k = d.box_begin; k < d.box_end; ++k) {
    const double lam = lambda_symbol(g.node(k));
    nodes.push_back({g.offset(k), 1.0, lam});
    nodes.push_back({-g.offset(k), -1.0, lam});
  }

  std::vector<cplx> acc(m);
  const long zero = static_cast<long>(g.zero_index());
  auto add = [&](long offset, double beta) {
    const long idx = zero + offset;
    if (idx < 0 || idx >= static_cast<long>(m)) throw std::runtime_error("brute force: sum left the grid");
    const double alpha = lambda_symbol(g.node(static_cast<std::size_t>(idx)));
    acc[static_cast<std::size_t>(idx)] += generic_term(alpha, beta, t);
  };
  for (const auto& a : nodes)
    for (const auto& b : nodes) {
      if (p == 2) {
        add(a.offset + b.offset, -(a.eps * a.lam + b.eps * b.lam));
        continue;
      }
      for (const auto& c : nodes)
        add(a.offset + b.offset + c.offset, -(a.eps * a.lam + b.eps * b.lam + c.eps * c.lam));
    }

  // Line convolution weight dxi^{p-1}, transform-of-product factor (2 pi)^{1-p}.
  const double conv = std::pow(g.spacing() / (2.0 * std::numbers::pi), p - 1);
  const double scale = -sign * (p == 2 ? 2.0 : 6.0) * conv;
  for (std::size_t k = 0; k < m; ++k) acc[k] *= scale * lambda_symbol(g.node(k));
  symmetrize(acc);
  return SpectralField(g, std::move(acc), true);
}

}  // namespace imbq
