#include "imbq/power.hpp"

#include <cmath>
#include <stdexcept>

#include "imbq/kernels.hpp"
#include "imbq/transform.hpp"

namespace imbq {

std::size_t padded_size(std::size_t size, double factor) {
  if (!(factor >= 1.0)) throw std::invalid_argument("padding factor must be at least 1");
  auto n = static_cast<std::size_t>(std::ceil(factor * static_cast<double>(size) - 1e-9));
  if (n % 2 != 0) ++n;
  return std::max(n, size);
}

SpectralField pointwise_power(const SpectralField& f, int p, double sign, double dealias_factor) {
  if (p < 1) throw std::invalid_argument("power must be a positive integer");
  if (!f.real_valued()) throw std::invalid_argument("pointwise_power expects a real-valued field");
  if (dealias_factor + 1e-12 < 0.5 * (p + 1))
    throw std::invalid_argument("dealias factor must be at least (p+1)/2");

  const auto& g = f.grid();
  const auto big = g.padded(padded_size(g.size(), dealias_factor));
  std::vector<cplx> buf(big.size());
  detail::embed(f.amplitudes(), buf);
  detail::inverse_in_place(buf, big);
  kernels::power(buf, p, sign, true);
  for (const auto& v : buf)
    if (!std::isfinite(v.real())) throw std::overflow_error("position samples overflowed in pointwise_power");
  detail::forward_in_place(buf, big);

  std::vector<cplx> out(g.size());
  detail::truncate(buf, out);
  symmetrize(out);
  return SpectralField(g, std::move(out), true);
}

}  // namespace imbq
