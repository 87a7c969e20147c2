#pragma once

#include "monoblock/mesh.hpp"
#include "monoblock/monotone.hpp"
#include "monoblock/reaction.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace monoblock {

enum class RuleKind {
    ZeroLower,             ///< psi at m = 0, zero afterwards
    ConstantLower,         ///< psi at m = 0, constant k afterwards
    LinearUpper,           ///< solves (L_h + 1/tau) U_m = U_{m-1}/tau + M
    ConstantUpper,         ///< psi at m = 0, constant K afterwards
    AuxiliaryLinearUpper,  ///< LinearUpper with an explicitly supplied rate M0
};

std::string to_string(RuleKind k);
RuleKind rule_kind_from_string(const std::string& s);

/// Construction for one component. `param` is M, K, k or M0; unset means
/// "derive a default" where the kind allows it.
struct ComponentRule {
    RuleKind kind = RuleKind::ZeroLower;
    std::optional<double> param;
};

struct ConstructionRule {
    std::array<ComponentRule, 2> lower;
    std::array<ComponentRule, 2> upper;
};

/// Lower solution at level m under the zero rule. Samples the assumptions
/// (f_a <= 0 at u_a = 0, g >= 0, psi >= 0) and throws ConstructionRefused on failure.
FieldPair lower_zero(const ProblemSpec& problem, const Mesh& mesh, int m);

/// Trajectory m = 0..nt of the linear upper construction for one component
std::vector<Field> upper_linear(const ProblemSpec& problem, const Mesh& mesh, int alpha, double M);

/// Trajectory m = 0..nt of a constant construction (psi at m = 0)
std::vector<Field> constant_trajectory(const ProblemSpec& problem, const Mesh& mesh, int alpha, double value);

/// Default rate for upper_linear: 1.1 * max(0, -min f_a) over sampled sector points
double default_linear_rate(const ProblemSpec& problem, const Mesh& mesh, int alpha, std::uint64_t seed = 11);

/// Build lower and upper trajectories from the rule, check every sampled
/// assumption, then confirm the ordered-pair property level by level.
/// Throws ConstructionRefused with a diagnostic on any failure.
Bracket build_bracket(const ProblemSpec& problem, const Mesh& mesh, const ConstructionRule& rule);

}  // namespace monoblock
