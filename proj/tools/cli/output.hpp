#pragma once
#include <filesystem>
#include <string>

#include <json.hpp>

namespace imbq::cli {

/// Writes `content` to a temporary file next to `path` and renames it into
/// place, so a reader never sees a partial file under the final name.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Shortest round-trip decimal form of a double; identical bits give identical text.
std::string num(double x);

/// Pretty-printed JSON with a trailing newline.
std::string dump(const nlohmann::json& j);

/// Names the library operation behind each reported quantity.
nlohmann::json provenance(const nlohmann::json& quantities);

}  // namespace imbq::cli
