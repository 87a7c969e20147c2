#pragma once

#include "monoblock/init_solutions.hpp"
#include "monoblock/mesh.hpp"
#include "monoblock/reaction.hpp"

#include <map>
#include <string>
#include <vector>

namespace monoblock {

/// Named scalar parameters. Unrecognised names are rejected by instantiate().
using ParamMap = std::map<std::string, double>;

/// A bundled model: problem data, its default bracket and the fully resolved parameters
struct ModelInstance {
    std::string name;
    ProblemSpec problem;
    ConstructionRule bracket;
    ParamMap params;
};

/// gas-liquid, volterra-lotka, belousov-zhabotinskii, enzyme-substrate, zero, linear
std::vector<std::string> model_names();

/// Build a model on the domain of `domain`. Every model accepts
///   eps1, eps2            diffusion (default 1)
///   v1x, v1y, v2x, v2y    constant velocities (default 0)
/// plus its own parameters, documented in models.cpp. Boundary data is the
/// constant g_a and initial data is g_a + bump_a sin(pi x/l1) sin(pi y/l2).
/// Throws Config on an unknown model or parameter and InvalidArgument when
/// the parameters break the model's invariants.
ModelInstance instantiate(const std::string& name, const ParamMap& params, const MeshSpec& domain);

/// Default (lower, upper) construction for a model
ConstructionRule default_bracket(const std::string& name, const ParamMap& params, const MeshSpec& domain);

}  // namespace monoblock
