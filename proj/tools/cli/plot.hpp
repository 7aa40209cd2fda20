#pragma once
#include <filesystem>
#include <string>
#include <vector>

#include "imbq/dispersion.hpp"
#include "imbq/illposedness.hpp"

namespace imbq::cli {

/// Log-log ratio against N, one marker per row, plus the fitted line.
std::string inflation_svg(const InflationReport& report);
/// Mode amplitude against t, one polyline per wavenumber.
std::string dispersion_svg(const std::vector<DispersionFit>& fits);

/// Render and write atomically. An empty report is an error and writes nothing.
void emit_plot(const InflationReport& report, const std::filesystem::path& path);
void emit_plot(const std::vector<DispersionFit>& fits, const std::filesystem::path& path);

}  // namespace imbq::cli
