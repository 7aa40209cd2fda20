#include <cmath>
#include <stdexcept>
#include <string>

#include "imbq/illposedness.hpp"

namespace imbq {

IPData make_ip_data(int N, const FrequencyGrid& grid) {
  if (N < 1) throw std::invalid_argument("box index N must be >= 1");
  const auto per_unit = grid.nodes_per_unit();
  if (!per_unit) throw std::invalid_argument("frequency spacing must divide 1 for box data");
  const long L = *per_unit;
  const long half = static_cast<long>(grid.size() / 2);
  if ((N + 1) * L > half - 1)
    throw std::invalid_argument("box [" + std::to_string(N) + ", " + std::to_string(N + 1) +
                                ") does not fit inside the grid extent");

  const std::size_t zero = grid.zero_index();
  const std::size_t begin = zero + static_cast<std::size_t>(N * L);
  const std::size_t end = zero + static_cast<std::size_t>((N + 1) * L);
  std::vector<cplx> u0(grid.size()), u1(grid.size());
  for (std::size_t k = begin; k < end; ++k) {
    const std::size_t mk = grid.size() - k;  // mirror node
    const double lam = lambda_symbol(grid.node(k));
    u0[k] = 1.0;
    u0[mk] = 1.0;
    u1[k] = cplx(0.0, -lam);
    u1[mk] = cplx(0.0, lam);
  }
  return IPData{N, CauchyData(SpectralField(grid, std::move(u0), true), SpectralField(grid, std::move(u1), true)),
                begin, end};
}

SpectralField free_evolution_hat(const IPData& d, double t) {
  const auto& g = d.grid();
  std::vector<cplx> out(g.size());
  for (std::size_t k = d.box_begin; k < d.box_end; ++k) {
    const double lam = lambda_symbol(g.node(k));
    out[k] = std::polar(1.0, -t * lam);
    out[g.size() - k] = std::polar(1.0, t * lam);
  }
  return SpectralField(g, std::move(out), true);
}

namespace {
double sinc(double x) noexcept {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}
}  // namespace

double generic_term_real(double alpha, double beta, double t) noexcept {
  return 0.5 * alpha * t * t * sinc(0.5 * (alpha + beta) * t) * sinc(0.5 * (alpha - beta) * t);
}

cplx generic_term(double alpha, double beta, double t) noexcept {
  // sinc may be negative, so the phase factors are built explicitly.
  const double a = 0.5 * (alpha + beta) * t, b = 0.5 * (beta - alpha) * t;
  const cplx first = t * sinc(b) * cplx(std::cos(a), std::sin(a));
  const cplx second = t * sinc(a) * cplx(std::cos(b), std::sin(b));
  return (first - second) / cplx(0.0, 2.0);
}

}  // namespace imbq
