#pragma once

// Data-parallel inner loops shared by the solver and the ill-posedness
// harness. Every kernel has a plain serial reference (kernels::serial) and
// an OpenMP version (kernels::omp); both visit the reduction index in the
// same order, so their outputs agree bit for bit.

#include <complex>
#include <span>

namespace imbq::kernels {

using cplx = std::complex<double>;

enum class Exec { serial, parallel };

/// Layout of the Duhamel sums: row i holds the values at time node i.
struct DuhamelArgs {
  std::span<const double> times;    // n time nodes
  std::span<const double> weights;  // n*n quadrature weights, row i = integral over [0, t_i]
  std::span<const double> lambda;   // M symbol values
  std::span<const cplx> forcing;    // n*M forcing amplitudes, row j = time node j
};

namespace serial {
void multiply(std::span<cplx> data, std::span<const cplx> factors);
void power(std::span<cplx> samples, int p, double sign, bool real);
/// sin_out[i,k] = sum_j W[i,j] sin((t_i - t_j) lambda_k) F[j,k]; cos_out likewise.
void duhamel_sums(const DuhamelArgs& a, std::span<cplx> sin_out, std::span<cplx> cos_out);
/// acc[k] += w * sin(dt * lambda_k) * term[k]
void accumulate_sine(std::span<cplx> acc, std::span<const cplx> term, std::span<const double> lambda,
                     double dt, double w);
}  // namespace serial

namespace omp {
void multiply(std::span<cplx> data, std::span<const cplx> factors);
void power(std::span<cplx> samples, int p, double sign, bool real);
void duhamel_sums(const DuhamelArgs& a, std::span<cplx> sin_out, std::span<cplx> cos_out);
void accumulate_sine(std::span<cplx> acc, std::span<const cplx> term, std::span<const double> lambda,
                     double dt, double w);
}  // namespace omp

inline void multiply(std::span<cplx> data, std::span<const cplx> factors, Exec e = Exec::parallel) {
  e == Exec::parallel ? omp::multiply(data, factors) : serial::multiply(data, factors);
}
inline void power(std::span<cplx> samples, int p, double sign, bool real, Exec e = Exec::parallel) {
  e == Exec::parallel ? omp::power(samples, p, sign, real) : serial::power(samples, p, sign, real);
}
inline void duhamel_sums(const DuhamelArgs& a, std::span<cplx> sin_out, std::span<cplx> cos_out,
                         Exec e = Exec::parallel) {
  e == Exec::parallel ? omp::duhamel_sums(a, sin_out, cos_out) : serial::duhamel_sums(a, sin_out, cos_out);
}
inline void accumulate_sine(std::span<cplx> acc, std::span<const cplx> term, std::span<const double> lambda,
                            double dt, double w, Exec e = Exec::parallel) {
  e == Exec::parallel ? omp::accumulate_sine(acc, term, lambda, dt, w)
                      : serial::accumulate_sine(acc, term, lambda, dt, w);
}

/// Number of OpenMP threads the parallel kernels will use.
int max_threads();
void set_threads(int n);

}  // namespace imbq::kernels
