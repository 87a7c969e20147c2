#pragma once

#include "monoblock/init_solutions.hpp"
#include "monoblock/mesh.hpp"
#include "monoblock/monotone.hpp"
#include "monoblock/reaction.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace monoblock {

/// Row-major square matrix for small reference solves
class DenseMatrix {
public:
    explicit DenseMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {}

    int size() const noexcept { return n_; }
    double& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(c)]; }
    double operator()(int r, int c) const {
        return a_[static_cast<std::size_t>(r) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(c)];
    }

private:
    int n_;
    std::vector<double> a_;
};

/// Gaussian elimination with partial pivoting. Throws Singular.
std::vector<double> dense_solve(DenseMatrix a, std::span<const double> rhs);

/// Largest number of unknowns (both components) the dense oracle accepts
inline constexpr int kMaxDenseUnknowns = 2000;

struct NewtonConfig {
    double tol = 1e-12;
    int max_newton = 50;
    double damping = 1.0;
    double fallback_damping = 0.5;
};

struct NewtonResult {
    FieldPair solution;
    int iterations = 0;
    double residual = 0.0;
    bool in_sector = true;
};

/// Pointwise residual of the implicit upwind scheme at level m, built directly
/// from the difference quotients rather than the line-block assembly
Field scheme_residual(const ProblemSpec& problem, const Mesh& mesh, int alpha, const FieldPair& u,
                      const FieldPair& prev, int m);

/// Dense Newton solve of the full nonlinear scheme at level m with boundary
/// data g. Starts from `guess` when given, otherwise from prev.
/// Throws Divergence when max_newton is exhausted and InvalidArgument above kMaxDenseUnknowns.
NewtonResult newton_solve_level(const ProblemSpec& problem, const Mesh& mesh, const FieldPair& prev, int m,
                                const NewtonConfig& cfg = {}, const std::optional<FieldPair>& guess = std::nullopt);

/// Level-by-level Newton trajectory m = 0..nt starting from the initial data
std::vector<FieldPair> newton_march(const ProblemSpec& problem, const Mesh& mesh, const NewtonConfig& cfg = {});

/// Manufactured problem with exact solution u_a = amp_a exp(-t) sin(pi x) sin(pi y)
/// on the unit square. The reaction is f_a = u_a - u_b/2 + s_a with the source
/// s_a chosen so the exact solution solves the continuous equation.
struct ManufacturedSpec {
    std::array<double, 2> amp{1.0, 0.5};
    std::array<double, 2> eps{0.05, 0.05};
    std::array<double, 2> vx{1.0, 1.0};
    std::array<double, 2> vy{1.0, 1.0};
};

struct Manufactured {
    ProblemSpec problem;
    ConstructionRule bracket;
    std::function<double(int alpha, double x, double y, double t)> exact;
    double K = 0.0;
};

Manufactured make_manufactured(const ManufacturedSpec& spec);

/// Least-squares slope of log(err) against log(h). Needs at least 3 points.
double convergence_order(std::span<const double> h, std::span<const double> err);

enum class TauScaling { Linear, Quadratic };

struct ConvergenceConfig {
    ManufacturedSpec manufactured;
    double T = 0.25;
    std::vector<double> h{1.0 / 8, 1.0 / 16, 1.0 / 32};
    TauScaling scaling = TauScaling::Linear;
    /// tau = factor*h or factor*h^2
    double tau_factor = 0.25;
    TimeStepPolicy policy;
};

struct ConvergenceResult {
    std::vector<double> h;
    std::vector<double> tau;
    std::vector<double> error;
    std::vector<int> iterations;
    double slope = 0.0;
    /// Every error is within 10 T delta, so the mesh reproduces the exact solution and no order is fitted
    bool skipped = false;
};

/// March each mesh with Gauss-Seidel and measure the final-time max error
ConvergenceResult run_convergence(const ConvergenceConfig& cfg);

}  // namespace monoblock
