#pragma once

#include "json.hpp"

#include "motifsketch/sketch.hpp"

namespace motifsketch::detail {

inline constexpr const char* kSketchFormat = "motifsketch-sketch";
inline constexpr const char* kEnsembleFormat = "motifsketch-ensemble";
inline constexpr int kDumpVersion = 1;

nlohmann::json config_to_json(const SketchConfig& c);
SketchConfig config_from_json(const nlohmann::json& j);
nlohmann::json cells_to_json(const Sketch& sketch);
void cells_from_json(const nlohmann::json& j, Sketch& sketch);

}  // namespace motifsketch::detail
