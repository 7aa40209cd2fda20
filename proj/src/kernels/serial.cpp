#include <cmath>
#include <stdexcept>

#include "imbq/kernels.hpp"

namespace imbq::kernels::serial {

void multiply(std::span<cplx> data, std::span<const cplx> factors) {
  if (data.size() != factors.size()) throw std::invalid_argument("multiply: size mismatch");
  for (std::size_t k = 0; k < data.size(); ++k) data[k] *= factors[k];
}

void power(std::span<cplx> samples, int p, double sign, bool real) {
  for (auto& v : samples) {
    if (real) {
      const double x = v.real();
      double r = x;
      for (int q = 1; q < p; ++q) r *= x;
      v = {sign * r, 0.0};
    } else {
      cplx r = v;
      for (int q = 1; q < p; ++q) r *= v;
      v = sign * r;
    }
  }
}

void duhamel_sums(const DuhamelArgs& a, std::span<cplx> sin_out, std::span<cplx> cos_out) {
  const std::size_t n = a.times.size(), m = a.lambda.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      cplx s{}, c{};
      for (std::size_t j = 0; j < n; ++j) {
        const double w = a.weights[i * n + j];
        if (w == 0.0) continue;
        const double ph = (a.times[i] - a.times[j]) * a.lambda[k];
        const cplx f = a.forcing[j * m + k];
        s += w * std::sin(ph) * f;
        c += w * std::cos(ph) * f;
      }
      sin_out[i * m + k] = s;
      cos_out[i * m + k] = c;
    }
  }
}

void accumulate_sine(std::span<cplx> acc, std::span<const cplx> term, std::span<const double> lambda,
                     double dt, double w) {
  for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += w * std::sin(dt * lambda[k]) * term[k];
}

}  // namespace imbq::kernels::serial
