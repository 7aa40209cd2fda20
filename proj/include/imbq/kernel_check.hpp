#pragma once

#include <vector>

namespace imbq {

struct KernelInequality {
  double a = 0.0;
  double b = 0.0;
  double lhs = 0.0;        // int dz / (<z-a>^2 <z-b>^4)
  double rhs_bound = 0.0;  // 1 / <a-b>^2
  double ratio = 0.0;      // lhs * <a-b>^2
  double error_estimate = 0.0;
};

/// Quadrature of the two-bracket kernel over the real line; throws
/// ConvergenceError if the adaptive rule misses its tolerance.
KernelInequality check_kernel_inequality(double a, double b);

struct KernelSweep {
  std::vector<KernelInequality> rows;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

/// All integer pairs a, b in [lo, hi] with the given stride.
KernelSweep kernel_sweep(int lo, int hi, int stride = 1);

/// |lambda(a) - lambda(b)| through the factored difference
///   (a-b)(a+b) / (<a><b>(|a|<b> + |b|<a>)),
/// free of cancellation when a and b are close.
double symbol_difference_bound(double a, double b) noexcept;

/// 2 |a-b| max{1/(<a><b>^2), 1/(<a>^2<b>)}, the large-separation envelope.
double symbol_difference_envelope(double a, double b) noexcept;

}  // namespace imbq
