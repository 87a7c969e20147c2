#pragma once

#include "monoblock/blocksolve.hpp"
#include "monoblock/mesh.hpp"
#include "monoblock/reaction.hpp"

#include <span>
#include <vector>

namespace monoblock {

/// Five-point implicit upwind stencil at one interior node
///
///   d U(i,j) - l U(i-1,j) - r U(i+1,j) - b U(i,j-1) - t U(i,j+1)
///
/// with d = 1/tau + l + r + b + t.
struct StencilCoeffs {
    double l = 0.0;
    double r = 0.0;
    double b = 0.0;
    double t = 0.0;
    double d = 0.0;
};

struct AssemblyOptions {
    /// Test hook: use the downwind one-sided difference, which breaks the sign structure
    bool corrupt_upwind = false;
};

StencilCoeffs stencil(const ProblemSpec& problem, const Mesh& mesh, int alpha, int i, int j, int m,
                      const AssemblyOptions& opt = {});

/// Line block for component alpha, column i, level m.
///
/// A is tridiagonal over j = 1..ny-1 with diagonal d and off-diagonals -b, -t;
/// left and right hold the diagonal couplings L, R to columns i-1, i+1.
struct LineBlockSystem {
    int alpha = 0;
    int i = 0;
    int m = 0;
    TriDiag A;
    std::vector<double> left;
    std::vector<double> right;
    std::vector<double> bottom;
    std::vector<double> top;
};

LineBlockSystem assemble_line(const ProblemSpec& problem, const Mesh& mesh, int alpha, int i, int m,
                              const AssemblyOptions& opt = {});

/// All lines i = 1..nx-1 of one component at one level
struct LevelOperator {
    int alpha = 0;
    int m = 0;
    std::vector<LineBlockSystem> lines;

    const LineBlockSystem& line(int i) const { return lines[static_cast<std::size_t>(i - 1)]; }
};

LevelOperator assemble_level(const ProblemSpec& problem, const Mesh& mesh, int alpha, int m,
                             const AssemblyOptions& opt = {});

/// Boundary vector G* for line i: the y-boundary values of the line itself and,
/// on the first and last line, the folded-in x-boundary columns. Values are taken
/// from `self`, whose boundary ring carries the data.
std::vector<double> boundary_vector(const LineBlockSystem& sys, const Mesh& mesh, const Field& self);

/// Residual of the nonlinear scheme on one line,
///
///   A U_i - (L U_{i-1} + R U_{i+1}) + F(U_self, U_other) - U_prev/tau + G*
///
/// `other` supplies the partner component's values. Output length ny-1.
void residual_line(const ProblemSpec& problem, const Mesh& mesh, const LineBlockSystem& sys, const Field& self,
                   const Field& prev, const Field& other, std::span<double> out);

/// Residual on every interior node; boundary entries are zero
Field residual_field(const ProblemSpec& problem, const Mesh& mesh, const LevelOperator& op, const Field& self,
                     const Field& prev, const Field& other);

/// max over components and interior nodes of |residual| for a pair solving level m
double residual_norm(const ProblemSpec& problem, const Mesh& mesh, const FieldPair& u, const FieldPair& prev, int m);

/// max |entry| over all nodes
double max_abs(const Field& f);

/// Evaluate f_alpha with `own` in slot alpha and `partner` in the other slot
inline double reaction_value(const ProblemSpec& problem, int alpha, double x, double y, double t, double own,
                             double partner) {
    return alpha == 0 ? problem.comp[0].f(x, y, t, own, partner) : problem.comp[1].f(x, y, t, partner, own);
}

}  // namespace monoblock
