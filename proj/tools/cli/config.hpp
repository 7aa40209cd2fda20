#pragma once
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace imbq::cli {

/// Bad or incomplete configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& msg)
      : std::runtime_error(field.empty() ? msg : field + ": " + msg), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Initial data for the solve command.
struct FieldSpec {
  std::string type = "zero";  // zero | gaussian | mode | random
  double amplitude = 0.0;
  double width = 1.0;
  double shift = 0.0;
  bool mean_zero = false;
  double k = 1.0;
  long band = -1;
};

struct SolveParams {
  int p = 2;
  double sign = 1.0;
  double horizon = 1.0;
  double s = 0.0;
  double picard_tol = 1e-12;
  int max_iterations = 50;
  int quadrature_nodes = 33;
  double window_safety = 0.1;
  double ball_constant = 1.0;
  double dealias_factor = 0.0;
  std::optional<double> window;
  int max_window_halvings = 5;
  bool nonlinear = true;
  double spacing = 1.0 / 8;
  double extent = 16.0;
  FieldSpec u0{"gaussian", 0.3, 2.0, 0.0, false, 1.0, -1};
  FieldSpec u1{"gaussian", 0.2, 1.5, 1.0, true, 1.0, -1};
};

struct InflateParams {
  int p = 2;
  double sign = 1.0;
  double s = -0.5;
  double t = 0.5;
  std::vector<int> N{16, 32, 64, 128};
  double spacing = 1.0 / 64;
  int tau_nodes = 65;
  double padding = 0.0;
  double slope_tolerance = 0.2;
};

struct LemmaParams {
  std::vector<std::string> symbols{"m1", "m2_plus", "m3"};
  std::vector<double> t{0.5, 1.0, 2.0, 4.0};
  double h_min = 1e-3;
  double h_max = 1e3;
  int resolution = 6;
  double xi_extent = 1e4;
  int kernel_lo = -100;
  int kernel_hi = 100;
  int kernel_stride = 5;
  int corpus = 100;
};

struct DispersionParams {
  std::vector<double> k{1.0, 10.0, 100.0};
  double periods = 10.0;
};

struct DerivativeParams {
  int N = 8;
  int p = 2;
  double sign = 1.0;
  double t = 0.3;
  double eps = 1e-3;
  double spacing = 1.0 / 32;
};

using Params = std::variant<SolveParams, InflateParams, LemmaParams, DispersionParams, DerivativeParams>;

struct RunConfig {
  std::string command;
  Params params;
  std::string out = "out";
  int jobs = 0;  // 0: all available cores
  std::uint64_t seed = 0;
  bool plot = false;
  /// The validated configuration with defaults filled, echoed into outputs.
  nlohmann::json resolved;
};

/// Flag values; each one present overrides the file.
struct Overrides {
  std::optional<std::string> command;
  std::optional<std::string> out;
  std::optional<int> jobs;
  bool plot = false;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"solve", "inflate", "lemma-check", "dispersion", "derivative-check"};
  return names;
}

/// Parses and validates a JSON document. Unknown keys are rejected.
RunConfig parse_config(const nlohmann::json& doc, const Overrides& flags = {});
/// Reads the file (or starts from {} when path is empty) and parses it.
RunConfig parse_config_file(const std::string& path, const Overrides& flags = {});

}  // namespace imbq::cli
