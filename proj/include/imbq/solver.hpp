#pragma once

#include <optional>
#include <vector>

#include "imbq/errors.hpp"
#include "imbq/field.hpp"
#include "imbq/kernels.hpp"

namespace imbq {

/// Initial position u0 and velocity u1 on a common grid.
struct CauchyData {
  SpectralField u0;
  SpectralField u1;

  CauchyData(SpectralField position, SpectralField velocity);
  const FrequencyGrid& grid() const noexcept { return u0.grid(); }
};

struct SolverConfig {
  int p = 2;
  double sign = 1.0;  // f(u) = sign * u^p
  double horizon = 1.0;
  double s = 0.0;
  double picard_tol = 1e-12;
  int max_iterations = 50;
  int quadrature_nodes = 33;
  double window_safety = 0.1;
  /// Hidden constant in R ~ ||u0|| + ||u1||.
  double ball_constant = 1.0;
  /// 0 selects (p+1)/2.
  double dealias_factor = 0.0;
  /// Fixed window length instead of the sizing rule.
  std::optional<double> window;
  int max_window_halvings = 5;
  /// When false the forcing term is dropped and Z is constant in u.
  bool nonlinear = true;
  kernels::Exec exec = kernels::Exec::parallel;

  void validate() const;
  double dealias() const noexcept { return dealias_factor > 0.0 ? dealias_factor : 0.5 * (p + 1); }
};

struct WindowReport {
  double start = 0.0;
  double length = 0.0;
  int iterations = 0;
  int halvings = 0;
  /// Discrete C([0,T_w]; H^s cap L^inf) norms of successive differences.
  std::vector<double> differences;
  std::vector<double> ratios;

  /// First successive-difference ratio, the cleanest contraction estimate.
  double contraction() const noexcept { return ratios.empty() ? 0.0 : ratios.front(); }
};

/// Node-sampled solution: u(t_i) and u_t(t_i) for increasing t_i.
struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralField> u;
  std::vector<SpectralField> ut;
  std::vector<WindowReport> windows;

  std::size_t size() const noexcept { return times.size(); }
  const SpectralField& final_u() const { return u.back(); }
};

/// Thrown by solve when a window cannot be made to converge.
class SolveError : public ConvergenceError {
 public:
  SolveError(const std::string& what, std::size_t window, std::vector<double> history)
      : ConvergenceError(what, std::move(history)), window_(window) {}
  std::size_t window() const noexcept { return window_; }

 private:
  std::size_t window_;
};

/// cos(t lambda) u0^ + sin(t lambda)/lambda u1^
SpectralField free_propagator(const CauchyData& d, double t);
/// -lambda sin(t lambda) u0^ + cos(t lambda) u1^
SpectralField free_velocity(const CauchyData& d, double t);

/// Equally spaced nodes on [0, length] and the row-wise weights W[i, j] of
/// a fourth-order rule for the integral over [0, t_i] (Simpson, closed by a
/// 3/8 panel on odd rows; row 1 integrates the quadratic through nodes 0..2).
struct WindowQuadrature {
  std::vector<double> times;
  std::vector<double> weights;  // n*n row-major
};
WindowQuadrature window_quadrature(double length, int nodes);

/// Z(u)(t_i) = free(t_i) - sign * int_0^{t_i} lambda sin((t_i - tau) lambda) (u^p)^(tau) dtau
/// at every node of the trajectory, together with its time derivative.
/// `u.times` must be the nodes of window_quadrature(T_w, cfg.quadrature_nodes).
Trajectory duhamel_functional(const CauchyData& d, const Trajectory& u, const SolverConfig& cfg);

struct PicardResult {
  Trajectory trajectory;
  WindowReport report;
};

/// Fixed-point iteration of the Duhamel functional on [0, T_w], starting at
/// the free evolution. Throws ConvergenceError (ratio history attached) if
/// max_iterations pass without reaching the tolerance.
PicardResult picard_window(const CauchyData& d, double window, const SolverConfig& cfg);

/// R = ball_constant * (||u0||_{H^s} + ||u0||_inf + ||u1||_{H^s} + ||u1||_inf)
double ball_radius(const CauchyData& d, const SolverConfig& cfg);
/// window_safety * R^{-(p-1)/2}
double window_length(const CauchyData& d, const SolverConfig& cfg);

/// Covers [0, horizon] with Picard windows, restarting each window from the
/// solution and its Duhamel-differentiated velocity at the previous end.
Trajectory solve(const CauchyData& d, const SolverConfig& cfg);

/// Classical RK4 on (u^, u_t^) with u_tt^ = -lambda^2 (u^ + sign (u^p)^).
/// Samples every `stride` steps plus the final step.
Trajectory rk4_solve(const CauchyData& d, const SolverConfig& cfg, double dt, std::size_t stride = 1);

/// E = 1/2 sum_{xi != 0} (|u_t^|^2/lambda^2 + |u^|^2) dxi + 2 pi sign/(p+1) sum_j u(x_j)^{p+1} dx.
/// Requires a mean-zero velocity.
double energy(const SpectralField& u, const SpectralField& ut, int p, double sign);

/// max_t |E(t) - E(0)| / |E(0)| along a trajectory.
double energy_drift(const Trajectory& tr, int p, double sign);

}  // namespace imbq
