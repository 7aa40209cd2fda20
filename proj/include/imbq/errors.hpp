#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace imbq {

/// Raised when an iterative or adaptive numerical procedure fails to meet
/// its tolerance. Carries the history that led to the failure.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> history = {})
      : std::runtime_error(what), history_(std::move(history)) {}

  const std::vector<double>& history() const noexcept { return history_; }

 private:
  std::vector<double> history_;
};

/// Two fields or a field and a window were defined on incompatible grids.
class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace imbq
