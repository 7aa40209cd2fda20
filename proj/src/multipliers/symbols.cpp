#include "imbq/symbols.hpp"

#include <cmath>
#include <stdexcept>

namespace imbq {

std::string Symbol::name() const {
  switch (kind) {
    case SymbolKind::m1: return "m1";
    case SymbolKind::m2_plus: return "m2_plus";
    case SymbolKind::m2_minus: return "m2_minus";
    case SymbolKind::m3: return "m3";
    case SymbolKind::P: return "P";
    case SymbolKind::Q: return "Q_t";
    case SymbolKind::R: return "R_t";
    case SymbolKind::lambda: return "lambda";
  }
  return "?";
}

Symbol parse_symbol(std::string_view name, double t) {
  static constexpr std::pair<std::string_view, SymbolKind> table[] = {
      {"m1", SymbolKind::m1}, {"m2_plus", SymbolKind::m2_plus}, {"m2", SymbolKind::m2_plus},
      {"m2_minus", SymbolKind::m2_minus}, {"m3", SymbolKind::m3}, {"P", SymbolKind::P},
      {"Q_t", SymbolKind::Q}, {"Q", SymbolKind::Q}, {"R_t", SymbolKind::R}, {"R", SymbolKind::R},
      {"lambda", SymbolKind::lambda}};
  for (const auto& [key, kind] : table)
    if (key == name) return Symbol{kind, t};
  throw std::invalid_argument("unknown symbol '" + std::string(name) + "'");
}

double sin_over_lambda(double t, double lam) noexcept {
  const double x = t * lam;
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return t * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
  }
  return std::sin(x) / lam;
}

cplx eval_symbol(const Symbol& sym, double xi) noexcept {
  const double lam = lambda_symbol(xi);
  switch (sym.kind) {
    case SymbolKind::m1:
    case SymbolKind::P: {
      // lambda^2 = xi^2/(1+xi^2) without the rounding of squaring lambda.
      return xi * xi / (1.0 + xi * xi);
    }
    case SymbolKind::m2_plus: return std::polar(1.0, sym.t * lam);
    case SymbolKind::m2_minus: return std::polar(1.0, -sym.t * lam);
    case SymbolKind::Q: return std::cos(sym.t * lam);
    case SymbolKind::m3:
    case SymbolKind::R: return sin_over_lambda(sym.t, lam);
    case SymbolKind::lambda: return lam;
  }
  return 0.0;
}

SpectralField apply(const Symbol& sym, const SpectralField& f, kernels::Exec exec) {
  const auto& g = f.grid();
  std::vector<cplx> factors(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) factors[k] = eval_symbol(sym, g.node(k));
  auto out = f.values();
  kernels::multiply(out, factors, exec);
  return SpectralField(g, std::move(out), f.real_valued() && sym.preserves_reality());
}

}  // namespace imbq
