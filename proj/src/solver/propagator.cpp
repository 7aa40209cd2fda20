#include <cmath>

#include "imbq/solver.hpp"
#include "imbq/symbols.hpp"

namespace imbq {

CauchyData::CauchyData(SpectralField position, SpectralField velocity)
    : u0(std::move(position)), u1(std::move(velocity)) {
  if (!(u0.grid() == u1.grid())) throw GridMismatch("Cauchy data must share one grid");
  if (!u0.real_valued() || !u1.real_valued()) throw std::invalid_argument("Cauchy data must be real-valued");
}

SpectralField free_propagator(const CauchyData& d, double t) {
  const auto& g = d.grid();
  std::vector<cplx> out(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double lam = lambda_symbol(g.node(k));
    out[k] = std::cos(t * lam) * d.u0[k] + sin_over_lambda(t, lam) * d.u1[k];
  }
  return SpectralField(g, std::move(out), true);
}

SpectralField free_velocity(const CauchyData& d, double t) {
  const auto& g = d.grid();
  std::vector<cplx> out(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double lam = lambda_symbol(g.node(k));
    out[k] = -lam * std::sin(t * lam) * d.u0[k] + std::cos(t * lam) * d.u1[k];
  }
  return SpectralField(g, std::move(out), true);
}

}  // namespace imbq
