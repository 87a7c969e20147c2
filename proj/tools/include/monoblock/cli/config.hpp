#pragma once

#include "monoblock/init_solutions.hpp"
#include "monoblock/mesh.hpp"
#include "monoblock/models.hpp"
#include "monoblock/monotone.hpp"
#include "monoblock/oracle.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace monoblock::cli {

enum class Method { Jacobi, GaussSeidel, Both };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct OutputSpec {
    std::string dir = "monoblock-out";
    /// Levels to write as CSV; empty means every level
    std::vector<int> levels;
    bool csv = true;
};

/// One manufactured-solution convergence study
struct Regime {
    std::string name;
    ConvergenceConfig config;
    std::optional<std::array<double, 2>> expected_slope;
};

struct ExperimentConfig {
    std::string model;
    ParamMap params;
    MeshSpec mesh;
    Method method = Method::GaussSeidel;
    TimeStepPolicy policy;
    /// Replaces the model's default bracket per component when present
    std::array<std::optional<ComponentRule>, 2> lower_override;
    std::array<std::optional<ComponentRule>, 2> upper_override;
    OutputSpec output;
    std::uint64_t seed = 20240611;
    std::vector<Regime> regimes;
    bool timing = true;
};

/// Parse a config document. Unknown keys and bad values throw Error(Config).
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

/// The regimes used when a config has no convergence block
std::vector<Regime> default_regimes();

/// Model instance with construction overrides applied
ModelInstance resolve_model(const ExperimentConfig& cfg);

}  // namespace monoblock::cli
