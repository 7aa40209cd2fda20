#pragma once

#include <optional>
#include <vector>

#include "imbq/kernels.hpp"
#include "imbq/solver.hpp"

namespace imbq {

/// Frequency-box data for the box B_N = [N, N+1):
///   u0^ = phi_{B_N} + phi_{-B_N},   u1^ = -i lambda (phi_{B_N} - phi_{-B_N}).
/// B_N is realised as the left-closed bin of nodes N, N + dxi, ..., N + 1 - dxi
/// and -B_N as its exact mirror, so both fields are Hermitian.
struct IPData {
  int N = 1;
  CauchyData data;
  /// Grid indices of B_N, [box_begin, box_end).
  std::size_t box_begin = 0;
  std::size_t box_end = 0;

  const FrequencyGrid& grid() const noexcept { return data.grid(); }
};

/// Throws if the spacing does not divide 1 or the boxes leave the grid.
IPData make_ip_data(int N, const FrequencyGrid& grid);

/// exp(-i t lambda) on B_N and exp(+i t lambda) on -B_N.
SpectralField free_evolution_hat(const IPData& d, double t);

/// Re int_0^t sin(alpha (t - tau)) exp(i beta tau) dtau.
///
/// Equal to alpha (cos(beta t) - cos(alpha t)) / (alpha^2 - beta^2), with the
/// limit t sin(alpha t)/2 on |alpha| = |beta|. Evaluated through the
/// product form (alpha t^2 / 2) sinc((alpha+beta)t/2) sinc((alpha-beta)t/2),
/// which is exact on both branches and free of cancellation near them.
double generic_term_real(double alpha, double beta, double t) noexcept;

/// The full complex integral int_0^t sin(alpha (t - tau)) exp(i beta tau) dtau.
cplx generic_term(double alpha, double beta, double t) noexcept;

struct QuadratureConfig {
  /// Simpson nodes on [0, t]; odd.
  int tau_nodes = 65;
  /// Padded half-width of the convolution buffer, in units of the box
  /// support N+1; 0 selects p+1.
  double padding = 0.0;
  /// Re-evaluate with doubled nodes and fail above convergence_tol.
  bool check_convergence = true;
  double convergence_tol = 1e-6;
  kernels::Exec exec = kernels::Exec::parallel;
};

/// p-th Frechet derivative of the flow map at zero, in direction (u0^N, u1^N)
/// repeated p times:
///   A^(xi) = -sign p! lambda(xi) int_0^t sin((t-tau) lambda(xi)) [L(tau)^p]^(xi) dtau,
/// with [L(tau)^p]^ the transform of the p-th power of the free evolution,
/// evaluated as a zero-padded p-fold convolution.
SpectralField compute_Ap(const IPData& d, int p, double sign, double t, const QuadratureConfig& q = {});

/// Independent oracle: direct summation over p-tuples of box nodes with the
/// time integral done in closed form per tuple. Practical for p <= 3 on coarse
/// grids only.
SpectralField brute_force_Ap(const IPData& d, int p, double sign, double t);

/// [1/4, 1/2] for even p, [N, N+1] for odd p.
BandWindow inflation_band(int p, int N);

struct InflationRow {
  int N = 0;
  double t = 0.0;
  int p = 0;
  double s = 0.0;
  double sign = 1.0;
  double band_lo = 0.0;
  double band_hi = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  double ratio = 0.0;
  /// ||A_p||_{L^2(band)}, the N-independent part of the numerator.
  double band_l2 = 0.0;
};

InflationRow inflation_ratio(const IPData& d, int p, double sign, double s, double t, const QuadratureConfig& q = {});

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // rms of log residuals
};

/// Least-squares line through (log x, log y).
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

/// -s p for even p, -s (p-1) for odd p.
double expected_slope(int p, double s);

struct InflationReport {
  int p = 0;
  double s = 0.0;
  double t = 0.0;
  double sign = 1.0;
  double band_lo = 0.0;
  double band_hi = 0.0;
  double spacing = 0.0;
  std::vector<InflationRow> rows;
  std::optional<SlopeFit> fit;
  double expected_slope = 0.0;
  double slope_tolerance = 0.2;
  bool monotone = false;
  bool pass = false;
};

struct SweepOptions {
  double spacing = 1.0 / 64.0;
  double slope_tolerance = 0.2;
  QuadratureConfig quadrature{};
};

/// Inflation ratios for increasing N on the grid of spacing `spacing` and
/// extent p (N_max + 2) + 2, with a log-log slope fit when >= 3 rows exist.
InflationReport ratio_sweep(const std::vector<int>& Ns, int p, double sign, double s, double t,
                            const SweepOptions& opt = {});

struct FlowmapCheck {
  double relative_error = 0.0;       // at eps
  double relative_error_half = 0.0;  // at eps/2
  double halving_ratio = 0.0;
};

/// Compares (u_eps(t) - eps L(t)) p!/eps^p from the Picard solver with
/// compute_Ap, at eps and eps/2.
FlowmapCheck flowmap_derivative_check(int N, int p, double sign, double t, double eps, double spacing = 1.0 / 32.0);

struct LowerOrderCheck {
  /// Richardson estimate of the eps^2 coefficient of u_eps(t) - eps L(t).
  double quadratic_norm = 0.0;
  /// Norm of the eps^3 coefficient, A_3/3!.
  double cubic_norm = 0.0;
  double ratio = 0.0;
};

/// For p = 3, checks that the second-order term of the data expansion vanishes.
LowerOrderCheck lower_order_check(int N, double sign, double t, double eps, double spacing = 1.0 / 32.0);

}  // namespace imbq
