#pragma once

#include "monoblock/mesh.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>

namespace monoblock {

using SpaceTimeFn = std::function<double(double x, double y, double t)>;
using InitialFn = std::function<double(double x, double y)>;
/// Reaction-type callable. u1, u2 are always given in component order.
using ReactionFn = std::function<double(double x, double y, double t, double u1, double u2)>;

/// Sign class of the cross partials -df_a/du_b
enum class QuasiMonotone { Nondecreasing, Nonincreasing };

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Box of admissible values per component at time t, used for sampling checks
using SectorFn = std::function<std::array<Interval, 2>(double t)>;

/// Data for one component of the system
///
///   u_t - eps*Lap(u) + v1*u_x + v2*u_y + f(x,y,t,u1,u2) = 0
///
/// c_bound, c_lower bracket df_own and q_bound caps |df_cross| over the sector.
struct ComponentData {
    double eps = 1.0;
    SpaceTimeFn vel1;
    SpaceTimeFn vel2;
    ReactionFn f;
    ReactionFn df_own;
    ReactionFn df_cross;
    SpaceTimeFn g;
    InitialFn psi;
    SpaceTimeFn c_bound;
    SpaceTimeFn c_lower;
    SpaceTimeFn q_bound;
};

/// Continuous two-component problem. Callables must be re-entrant.
struct ProblemSpec {
    std::string name;
    std::array<ComponentData, 2> comp;
    QuasiMonotone cls = QuasiMonotone::Nondecreasing;
    SectorFn sector;
};

/// Throws InvalidArgument when a callable is missing or eps is not positive
void validate(const ProblemSpec& problem);

/// Per-component max over all mesh nodes of c_bound at t_m
std::array<double, 2> c_level(const ProblemSpec& problem, const Mesh& mesh, int m);

/// Gamma_a = c_a*u_a - f_a(u) at a single point
std::array<double, 2> gamma(const ProblemSpec& problem, const std::array<double, 2>& c, double x, double y,
                            double t, double u1, double u2);

/// Problem for z = exp(-lambda t) u. Bounds on own derivatives shift by lambda,
/// so beta vanishes once lambda >= q - clow.
ProblemSpec lambda_shift(const ProblemSpec& problem, double lambda);

/// Outcome of a sampling check
struct SampleCheck {
    bool ok = true;
    int samples = 0;
    int failures = 0;
    double worst = 0.0;  ///< largest violation observed (0 when ok)
    std::string detail;
};

/// Controls for the sector sampling checks
struct SampleOptions {
    int samples = 200;
    std::uint64_t seed = 20240611;
    double fd_rel_tol = 1e-5;
    double slack = 1e-12;
};

/// Analytic partials against centered differences of f
SampleCheck check_derivatives(const ProblemSpec& problem, const MeshSpec& domain, const SampleOptions& opt = {});
/// c_lower <= df_own <= c_bound and |df_cross| <= q_bound
SampleCheck check_bounds(const ProblemSpec& problem, const MeshSpec& domain, const SampleOptions& opt = {});
/// Sign of -df_cross agrees with the declared class
SampleCheck check_class(const ProblemSpec& problem, const MeshSpec& domain, const SampleOptions& opt = {});
/// Gamma order preservation for ordered sector pairs U >= V, in the form that matches the class
SampleCheck check_gamma_monotone(const ProblemSpec& problem, const MeshSpec& domain, const SampleOptions& opt = {});

/// g or psi evaluated at every node; callers normally read only the boundary ring of g
Field sample_boundary(const ProblemSpec& problem, int alpha, const Mesh& mesh, int m);
Field sample_initial(const ProblemSpec& problem, int alpha, const Mesh& mesh);

/// Constant callables for building problems by hand
SpaceTimeFn constant_fn(double value);
InitialFn constant_initial(double value);
ReactionFn constant_reaction(double value);

}  // namespace monoblock
