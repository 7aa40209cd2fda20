#pragma once

#include <string>
#include <string_view>

#include "imbq/field.hpp"
#include "imbq/kernels.hpp"

namespace imbq {

/// Fourier multipliers built from lambda(xi) = |xi|/<xi>.
///
///   m1 = P   : lambda^2
///   m2_plus  : exp(+i t lambda),  m2_minus : exp(-i t lambda)
///   Q_t      : cos(t lambda)
///   m3 = R_t : sin(t lambda)/lambda   (equal to t at xi = 0)
///   lambda   : lambda itself
enum class SymbolKind { m1, m2_plus, m2_minus, m3, P, Q, R, lambda };

struct Symbol {
  SymbolKind kind = SymbolKind::P;
  double t = 0.0;

  /// True for symbols that are real and even in xi; applying them keeps a
  /// real field real.
  bool preserves_reality() const noexcept {
    return kind != SymbolKind::m2_plus && kind != SymbolKind::m2_minus;
  }
  std::string name() const;
};

Symbol parse_symbol(std::string_view name, double t = 0.0);

/// sin(t*lam)/lam with the removable singularity at lam = 0.
double sin_over_lambda(double t, double lam) noexcept;

cplx eval_symbol(const Symbol& sym, double xi) noexcept;

/// Nodewise product of the symbol with the field amplitudes.
SpectralField apply(const Symbol& sym, const SpectralField& f, kernels::Exec exec = kernels::Exec::parallel);

}  // namespace imbq
