#include "imbq/grid.hpp"

#include <stdexcept>
#include <string>

namespace imbq {

FrequencyGrid::FrequencyGrid(double spacing, std::size_t size) : spacing_(spacing), size_(size) {
  if (!(spacing > 0.0) || !std::isfinite(spacing))
    throw std::invalid_argument("frequency spacing must be positive and finite");
  if (size < 8 || size % 2 != 0)
    throw std::invalid_argument("node count must be even and at least 8, got " + std::to_string(size));
}

std::optional<long> FrequencyGrid::nodes_per_unit() const noexcept {
  const double inv = 1.0 / spacing_;
  const double r = std::round(inv);
  if (r < 1.0 || std::abs(r * spacing_ - 1.0) > 1e-12) return std::nullopt;
  return static_cast<long>(r);
}

FrequencyGrid FrequencyGrid::padded(std::size_t padded_size) const {
  if (padded_size < size_ || padded_size % 2 != 0)
    throw std::invalid_argument("padded size must be even and not smaller than the grid");
  return FrequencyGrid(spacing_, padded_size);
}

FrequencyGrid make_grid(double extent, std::size_t node_count) {
  if (!(extent > 0.0)) throw std::invalid_argument("grid extent must be positive");
  if (node_count < 8 || node_count % 2 != 0)
    throw std::invalid_argument("node count must be even and at least 8, got " + std::to_string(node_count));
  return FrequencyGrid(2.0 * extent / static_cast<double>(node_count), node_count);
}

FrequencyGrid grid_with_spacing(double spacing, double extent) {
  if (!(spacing > 0.0) || !(extent > 0.0)) throw std::invalid_argument("spacing and extent must be positive");
  auto half = static_cast<std::size_t>(std::ceil(extent / spacing - 1e-9));
  if (half < 4) half = 4;
  return FrequencyGrid(spacing, 2 * half);
}

BandWindow::BandWindow(double a, double b) : lo(a), hi(b) {
  if (!(a < b)) throw std::invalid_argument("band window needs lo < hi");
}

}  // namespace imbq
