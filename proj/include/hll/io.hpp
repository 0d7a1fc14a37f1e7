#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "hll/metric.hpp"
#include "hll/planar_map.hpp"

namespace hll {

// {"darts": N, "twin": [...], "next": [...], "root_dart": i, "half_edge_dart": j|null}
// plus "outer_dart": k when an outer face is given (Halin maps need it: the
// rotation system alone does not determine which face is unbounded).
nlohmann::json map_to_json(const PlanarMap& m, std::optional<Dart> outer_dart = std::nullopt);
PlanarMap map_from_json(const nlohmann::json& j);
std::optional<Dart> outer_dart_from_json(const nlohmann::json& j);

// Square distance matrix, one row per line, comma separated.
std::string metric_to_csv(const FiniteMetricSpace& x);
FiniteMetricSpace metric_from_csv(std::string_view text);

std::string read_file(const std::filesystem::path& p);
// Writes to a temporary file in the same directory, then renames it over p.
void write_atomic(const std::filesystem::path& p, std::string_view content);

} // namespace hll
