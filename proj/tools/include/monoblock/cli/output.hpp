#pragma once

#include "monoblock/mesh.hpp"
#include "monoblock/monotone.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

namespace monoblock::cli {

/// Write one field as CSV with header x,y,value. Rows run over j in the outer
/// loop and i in the inner loop; values carry 17 significant digits.
void write_field_csv(const std::filesystem::path& path, const Mesh& mesh, const Field& field);

/// solution_c<alpha>_m<level>.csv with 1-based component and 4-digit level
std::string field_file_name(int alpha, int m);

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

nlohmann::json to_json(const MeshSpec& spec);
nlohmann::json to_json(const TauStatus& tau);
nlohmann::json to_json(const LevelReport& level, bool timing);
nlohmann::json to_json(const SolveReport& report, bool timing);

}  // namespace monoblock::cli
