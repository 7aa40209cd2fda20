#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>

namespace imbq {

/// Uniform frequency grid xi_k = (k - M/2) * spacing, k = 0..M-1.
///
/// The grid contains xi = 0 at index M/2. Every node except the leftmost
/// (k = 0) has its mirror image on the grid. The dual position grid has
/// period 2*pi/spacing and M samples x_j = (j - M/2) * dx.
class FrequencyGrid {
 public:
  FrequencyGrid() = default;
  FrequencyGrid(double spacing, std::size_t size);

  double spacing() const noexcept { return spacing_; }
  std::size_t size() const noexcept { return size_; }
  double extent() const noexcept { return spacing_ * static_cast<double>(size_ / 2); }

  double node(std::size_t k) const noexcept {
    return (static_cast<double>(k) - static_cast<double>(size_ / 2)) * spacing_;
  }
  /// Offset of node k from the zero node, in units of the spacing.
  long offset(std::size_t k) const noexcept {
    return static_cast<long>(k) - static_cast<long>(size_ / 2);
  }
  std::size_t zero_index() const noexcept { return size_ / 2; }

  /// Index of the mirror node -xi_k; empty for the leftmost node.
  std::optional<std::size_t> mirror(std::size_t k) const noexcept {
    if (k == 0) return std::nullopt;
    return size_ - k;
  }

  double period() const noexcept { return 2.0 * std::numbers::pi / spacing_; }
  double dx() const noexcept { return period() / static_cast<double>(size_); }
  double position(std::size_t j) const noexcept {
    return (static_cast<double>(j) - static_cast<double>(size_ / 2)) * dx();
  }

  /// Number of nodes per unit frequency if the spacing divides 1 exactly.
  std::optional<long> nodes_per_unit() const noexcept;

  /// Same spacing, `padded` nodes; the original nodes sit in the middle.
  FrequencyGrid padded(std::size_t padded_size) const;

  friend bool operator==(const FrequencyGrid& a, const FrequencyGrid& b) noexcept {
    return a.spacing_ == b.spacing_ && a.size_ == b.size_;
  }

 private:
  double spacing_ = 1.0;
  std::size_t size_ = 8;
};

/// Grid with the given half-width and node count; spacing = 2*extent/M.
FrequencyGrid make_grid(double extent, std::size_t node_count);

/// Grid with the given spacing covering at least [-extent, extent).
FrequencyGrid grid_with_spacing(double spacing, double extent);

/// Closed frequency interval [lo, hi].
struct BandWindow {
  double lo;
  double hi;

  BandWindow(double a, double b);
  bool contains(double xi) const noexcept { return xi >= lo && xi <= hi; }
};

/// <xi> = (1 + xi^2)^{1/2}
inline double bracket(double xi) noexcept { return std::sqrt(1.0 + xi * xi); }

/// lambda(xi) = |xi| / <xi>, the dispersion symbol; takes values in [0, 1).
inline double lambda_symbol(double xi) noexcept {
  const double a = std::abs(xi);
  if (a > 1e150) return 1.0;
  return a / bracket(xi);
}

}  // namespace imbq
