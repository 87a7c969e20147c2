#include "testing.hpp"

#include <gtest/gtest.h>

using namespace monoblock;
using mbt::Gen;

TEST(Stencil, PureDiffusionCoefficients) {
    const ProblemSpec p = mbt::linear_problem(0.0, 0.0, 0.0, 0.5);
    MeshSpec s;
    s.l1 = 1.0;
    s.l2 = 2.0;
    s.nx = 4;
    s.ny = 4;
    s.T = 1.0;
    s.nt = 2;
    const Mesh mesh(s);
    const StencilCoeffs c = stencil(p, mesh, 0, 1, 1, 1);
    EXPECT_DOUBLE_EQ(c.l, 0.5 * 16.0);
    EXPECT_DOUBLE_EQ(c.r, 0.5 * 16.0);
    EXPECT_DOUBLE_EQ(c.b, 0.5 * 4.0);
    EXPECT_DOUBLE_EQ(c.t, 0.5 * 4.0);
    EXPECT_DOUBLE_EQ(c.d, 2.0 + 8.0 + 8.0 + 2.0 + 2.0);
}

TEST(Stencil, UpwindSideFollowsVelocitySign) {
    const Mesh mesh(mbt::mesh_spec(4, 4, 1));
    const double diff = 16.0;
    {
        const ProblemSpec p = mbt::linear_problem(0.0, 0.0, 0.0, 1.0, 2.0, -3.0);
        const StencilCoeffs c = stencil(p, mesh, 1, 2, 2, 1);
        EXPECT_DOUBLE_EQ(c.l, diff + 2.0 * 4.0);
        EXPECT_DOUBLE_EQ(c.r, diff);
        EXPECT_DOUBLE_EQ(c.b, diff);
        EXPECT_DOUBLE_EQ(c.t, diff + 3.0 * 4.0);
    }
    {
        const ProblemSpec p = mbt::linear_problem(0.0, 0.0, 0.0, 1.0, -1.0, 1.0);
        const StencilCoeffs c = stencil(p, mesh, 0, 2, 2, 1);
        EXPECT_DOUBLE_EQ(c.l, diff);
        EXPECT_DOUBLE_EQ(c.r, diff + 4.0);
        EXPECT_DOUBLE_EQ(c.b, diff + 4.0);
        EXPECT_DOUBLE_EQ(c.t, diff);
    }
}

TEST(Stencil, CoefficientsNonnegativeAndRowSumProperty) {
    Gen gen(401);
    for (int trial = 0; trial < 100; ++trial) {
        const Mesh mesh(gen.mesh(10));
        const ProblemSpec p = mbt::linear_problem(0.0, 0.0, 0.0, gen.uniform(1e-3, 2.0), gen.uniform(-50, 50),
                                                      gen.uniform(-50, 50));
        const int i = gen.integer(1, mesh.nx() - 1);
        const int j = gen.integer(1, mesh.ny() - 1);
        const StencilCoeffs c = stencil(p, mesh, gen.integer(0, 1), i, j, gen.integer(1, mesh.nt()));
        EXPECT_GE(std::min({c.l, c.r, c.b, c.t}), 0.0);
        EXPECT_NEAR(c.d - (c.l + c.r + c.b + c.t), 1.0 / mesh.tau(), 1e-9 * c.d);
    }
}

TEST(Assembly, LineMatricesAreMMatricesProperty) {
    Gen gen(402);
    for (int trial = 0; trial < 50; ++trial) {
        const Mesh mesh(gen.mesh(10));
        const ProblemSpec p = mbt::linear_problem(0.0, 0.0, 0.0, gen.uniform(1e-3, 2.0), gen.uniform(-50, 50),
                                                      gen.uniform(-50, 50));
        const LevelOperator op = assemble_level(p, mesh, 0, mesh.nt());
        ASSERT_EQ(op.lines.size(), static_cast<std::size_t>(mesh.nx() - 1));
        for (const auto& line : op.lines) {
            EXPECT_TRUE(is_m_matrix(line.A));
            EXPECT_TRUE(inverse_positivity_check(line.A, 2));
            for (std::size_t k = 0; k < line.left.size(); ++k) {
                EXPECT_GE(line.left[k], 0.0);
                EXPECT_GE(line.right[k], 0.0);
            }
        }
    }
}

TEST(Assembly, CorruptedUpwindBreaksSignStructure) {
    const Mesh mesh(mbt::mesh_spec(9, 9, 5));
    const ProblemSpec p = mbt::linear_problem(0.0, 0.0, 0.0, 0.05, 1.0, 1.0);
    AssemblyOptions bad;
    bad.corrupt_upwind = true;
    const LineBlockSystem good_line = assemble_line(p, mesh, 0, 3, 1);
    const LineBlockSystem bad_line = assemble_line(p, mesh, 0, 3, 1, bad);
    EXPECT_TRUE(is_m_matrix(good_line.A));
    EXPECT_FALSE(is_m_matrix(bad_line.A));
    EXPECT_LT(*std::min_element(bad_line.right.begin(), bad_line.right.end()), 0.0);
}

TEST(Assembly, OutOfRangeLinesThrow) {
    const Mesh mesh(mbt::mesh_spec(4, 4, 2));
    const ProblemSpec p = mbt::linear_problem(0.0, 0.0, 0.0);
    EXPECT_THROW(assemble_line(p, mesh, 0, 0, 1), Error);
    EXPECT_THROW(assemble_line(p, mesh, 0, 4, 1), Error);
    EXPECT_THROW(assemble_line(p, mesh, 0, 1, 0), Error);
    EXPECT_THROW(assemble_line(p, mesh, 2, 1, 1), Error);
}

TEST(Residual, ConstantStateOfLinearSchemeIsExact) {
    // f = 0 with constant data: U = g solves every level for any transport
    Gen gen(403);
    for (int trial = 0; trial < 30; ++trial) {
        const Mesh mesh(gen.mesh(8));
        const double g = gen.uniform(-2, 2);
        const ProblemSpec p = mbt::linear_problem(0.0, 0.0, g, gen.uniform(0.01, 1), gen.uniform(-5, 5),
                                                      gen.uniform(-5, 5));
        const FieldPair u = make_pair(mesh, g, g);
        EXPECT_LE(residual_norm(p, mesh, u, u, 1), 1e-10 * (1.0 + 1.0 / mesh.tau()));
    }
}

TEST(Residual, MatchesPointwiseOracleProperty) {
    Gen gen(404);
    for (const auto& name : mbt::bundled_models()) {
        for (int trial = 0; trial < 5; ++trial) {
            ParamMap params{{"eps1", gen.uniform(0.05, 1.0)}, {"v1x", gen.uniform(-3, 3)}, {"v2y", gen.uniform(-3, 3)}};
            const ModelInstance mi = instantiate(name, params, MeshSpec{});
            const Mesh mesh(gen.mesh(7));
            const FieldPair u{gen.field(mesh, 0.0, 0.5), gen.field(mesh, 0.0, 0.5)};
            const FieldPair prev{gen.field(mesh, 0.0, 0.5), gen.field(mesh, 0.0, 0.5)};
            const int m = gen.integer(1, mesh.nt());
            for (int a = 0; a < 2; ++a) {
                const LevelOperator op = assemble_level(mi.problem, mesh, a, m);
                const Field block = residual_field(mi.problem, mesh, op, u[a], prev[a], u[1 - a]);
                const Field point = scheme_residual(mi.problem, mesh, a, u, prev, m);
                EXPECT_LE(max_abs_diff_interior(block, point), 1e-9) << name;
            }
        }
    }
}

TEST(Residual, BoundaryVectorCollectsRingValues) {
    const Mesh mesh(mbt::mesh_spec(4, 4, 1));
    const ProblemSpec p = mbt::linear_problem(0.0, 0.0, 0.0, 1.0);
    Field self(mesh, 0.0);
    self(0, 2) = 1.0;   // left column, feeds line 1 row j=2
    self(1, 0) = 2.0;   // bottom of line 1
    self(2, 4) = 3.0;   // top of line 2
    const LineBlockSystem l1 = assemble_line(p, mesh, 0, 1, 1);
    const LineBlockSystem l2 = assemble_line(p, mesh, 0, 2, 1);
    const auto g1 = boundary_vector(l1, mesh, self);
    const auto g2 = boundary_vector(l2, mesh, self);
    EXPECT_DOUBLE_EQ(g1[0], -16.0 * 2.0);
    EXPECT_DOUBLE_EQ(g1[1], -16.0 * 1.0);
    EXPECT_DOUBLE_EQ(g1[2], 0.0);
    EXPECT_DOUBLE_EQ(g2[0], 0.0);
    EXPECT_DOUBLE_EQ(g2[2], -16.0 * 3.0);
}

TEST(Residual, DimensionMismatchThrows) {
    const Mesh mesh(mbt::mesh_spec(4, 4, 1));
    const ProblemSpec p = mbt::linear_problem(0.0, 0.0, 0.0);
    const LineBlockSystem l = assemble_line(p, mesh, 0, 1, 1);
    std::vector<double> out(3);
    EXPECT_THROW(residual_line(p, mesh, l, Field(mesh), Field(5, 5), Field(mesh), out), Error);
    std::vector<double> short_out(2);
    EXPECT_THROW(residual_line(p, mesh, l, Field(mesh), Field(mesh), Field(mesh), short_out), Error);
}

TEST(Residual, MaxAbs) {
    Field f(2, 2, 0.0);
    f(1, 1) = -3.0;
    f(2, 0) = 2.0;
    EXPECT_EQ(max_abs(f), 3.0);
}
