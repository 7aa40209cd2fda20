#include "imbq/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "imbq/errors.hpp"

namespace imbq {
namespace {

// FFTW planning is not thread-safe; execution on new arrays is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(std::size_t n, int direction) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, direction);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto* buf = fftw_alloc_complex(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, direction,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (!plan) throw std::runtime_error("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

void execute(std::span<cplx> data, int direction) {
  fftw_plan plan = PlanCache::instance().get(data.size(), direction);
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, p, p);
}

// (-1)^j twiddles move the origin of both grids to index M/2.
void alternate(std::span<cplx> data) {
  for (std::size_t j = 1; j < data.size(); j += 2) data[j] = -data[j];
}

}  // namespace

namespace detail {

void forward_in_place(std::span<cplx> data, const FrequencyGrid& grid) {
  if (data.size() != grid.size()) throw GridMismatch("buffer size does not match grid");
  alternate(data);
  execute(data, FFTW_FORWARD);
  alternate(data);
  const double scale = (grid.size() / 2) % 2 == 0 ? grid.dx() : -grid.dx();
  for (auto& v : data) v *= scale;
}

void inverse_in_place(std::span<cplx> data, const FrequencyGrid& grid) {
  if (data.size() != grid.size()) throw GridMismatch("buffer size does not match grid");
  alternate(data);
  execute(data, FFTW_BACKWARD);
  alternate(data);
  const double base = grid.spacing() / (2.0 * std::numbers::pi);
  const double scale = (grid.size() / 2) % 2 == 0 ? base : -base;
  for (auto& v : data) v *= scale;
}

void embed(std::span<const cplx> src, std::span<cplx> dst) {
  if (dst.size() < src.size() || (dst.size() - src.size()) % 2 != 0)
    throw std::invalid_argument("embed: incompatible sizes");
  std::fill(dst.begin(), dst.end(), cplx{});
  std::copy(src.begin(), src.end(), dst.begin() + (dst.size() - src.size()) / 2);
}

void truncate(std::span<const cplx> src, std::span<cplx> dst) {
  if (src.size() < dst.size() || (src.size() - dst.size()) % 2 != 0)
    throw std::invalid_argument("truncate: incompatible sizes");
  const auto off = static_cast<std::ptrdiff_t>((src.size() - dst.size()) / 2);
  std::copy(src.begin() + off, src.begin() + off + static_cast<std::ptrdiff_t>(dst.size()), dst.begin());
}

}  // namespace detail

PositionField to_position(const SpectralField& f) {
  PositionField g{f.grid(), f.values(), f.real_valued()};
  detail::inverse_in_place(g.samples, g.grid);
  if (g.real_valued)
    for (auto& v : g.samples) v = {v.real(), 0.0};
  return g;
}

SpectralField to_frequency(const PositionField& g) {
  if (g.samples.size() != g.grid.size()) throw GridMismatch("sample count does not match grid");
  auto data = g.samples;
  detail::forward_in_place(data, g.grid);
  if (g.real_valued) symmetrize(data);
  return SpectralField(g.grid, std::move(data), g.real_valued);
}

}  // namespace imbq
