#include "testing.hpp"

#include <gtest/gtest.h>

using namespace monoblock;
using mbt::Gen;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorCode::InvalidArgument;
}

/// Same data and transport as `p` with the reaction replaced by the constant -M
ProblemSpec constant_source(const ProblemSpec& p, double M) {
    ProblemSpec out = p;
    for (auto& c : out.comp) {
        c.f = constant_reaction(-M);
    }
    return out;
}

}  // namespace

TEST(Rules, StringRoundTrip) {
    for (RuleKind k : {RuleKind::ZeroLower, RuleKind::ConstantLower, RuleKind::LinearUpper, RuleKind::ConstantUpper,
                       RuleKind::AuxiliaryLinearUpper}) {
        EXPECT_EQ(rule_kind_from_string(to_string(k)), k);
    }
    EXPECT_EQ(code_of([] { rule_kind_from_string("quadratic_upper"); }), ErrorCode::Config);
}

TEST(LowerZero, AcceptsAdmissibleModels) {
    const MeshSpec s = mbt::mesh_spec(5, 5, 2, 0.5);
    const Mesh mesh(s);
    for (const auto& name : mbt::bundled_models()) {
        const ModelInstance mi = instantiate(name, {}, s);
        const FieldPair z = lower_zero(mi.problem, mesh, 1);
        EXPECT_EQ(max_abs(z[0]), 0.0);
        EXPECT_EQ(max_abs(z[1]), 0.0);
        const FieldPair z0 = lower_zero(mi.problem, mesh, 0);
        EXPECT_EQ(max_abs_diff(z0[1], sample_initial(mi.problem, 1, mesh)), 0.0);
    }
}

TEST(LowerZero, RefusesPositiveReactionAtZero) {
    const Mesh mesh(mbt::mesh_spec(4, 4, 1));
    ProblemSpec p = mbt::linear_problem(1.0, 0.0, 0.0);
    p.comp[0].f = [](double, double, double, double u1, double) { return u1 + 0.5; };
    EXPECT_EQ(code_of([&] { lower_zero(p, mesh, 1); }), ErrorCode::ConstructionRefused);
}

TEST(LowerZero, RefusesNegativeData) {
    const Mesh mesh(mbt::mesh_spec(4, 4, 1));
    const ProblemSpec p = mbt::linear_problem(1.0, 0.0, -0.1);
    EXPECT_EQ(code_of([&] { lower_zero(p, mesh, 1); }), ErrorCode::ConstructionRefused);
    EXPECT_EQ(code_of([&] { lower_zero(p, mesh, 3); }), ErrorCode::OutOfRange);
}

TEST(UpperLinear, SolvesLinearSchemeWithConstantSourceProperty) {
    Gen gen(601);
    for (const auto& name : mbt::bundled_models()) {
        const MeshSpec s = mbt::mesh_spec(gen.integer(3, 8), gen.integer(3, 8), gen.integer(1, 4), 0.5);
        const Mesh mesh(s);
        const ModelInstance mi = instantiate(name, {{"v1x", gen.uniform(-2, 2)}, {"v1y", gen.uniform(-2, 2)}}, s);
        const double M = gen.uniform(0.0, 3.0);
        const ProblemSpec lin = constant_source(mi.problem, M);
        for (int a = 0; a < 2; ++a) {
            const auto traj = upper_linear(mi.problem, mesh, a, M);
            ASSERT_EQ(traj.size(), static_cast<std::size_t>(mesh.nt() + 1));
            for (int m = 1; m <= mesh.nt(); ++m) {
                FieldPair u{traj[m], traj[m]};
                FieldPair prev{traj[m - 1], traj[m - 1]};
                const Field r = scheme_residual(lin, mesh, a, u, prev, m);
                EXPECT_LE(max_abs(r), 1e-9 * (1.0 + 1.0 / mesh.tau())) << name;
                // nonnegative data and M give a nonnegative trajectory
                for (double v : traj[m].values()) {
                    EXPECT_GE(v, 0.0) << name;
                }
            }
        }
    }
}

TEST(UpperLinear, RejectsNegativeRate) {
    const MeshSpec s = mbt::mesh_spec(4, 4, 1);
    const ModelInstance mi = instantiate("gas-liquid", {}, s);
    EXPECT_THROW(upper_linear(mi.problem, Mesh(s), 0, -1.0), Error);
}

TEST(UpperLinear, DefaultRateCoversNegativeReaction) {
    const MeshSpec s = mbt::mesh_spec(5, 5, 2, 0.5);
    const ModelInstance mi = instantiate("volterra-lotka", {}, s);
    const Mesh mesh(s);
    const double M = default_linear_rate(mi.problem, mesh, 0);
    EXPECT_GT(M, 0.0);
    EXPECT_EQ(M, default_linear_rate(mi.problem, mesh, 0));
    // f1 = -u1 (1 - u1 + a1 u2) has min -1/4 at u1 = 1/2, u2 = 0
    EXPECT_GE(M, 1.1 * 0.25 * 0.999);
}

TEST(BuildBracket, ConstantUpperBelowBoundaryIsRefused) {
    const MeshSpec s = mbt::mesh_spec(5, 5, 2, 0.5);
    const ModelInstance mi = instantiate("gas-liquid", {}, s);
    ConstructionRule r = mi.bracket;
    r.upper[0].param = 0.4;  // boundary data is 0.5
    EXPECT_EQ(code_of([&] { build_bracket(mi.problem, Mesh(s), r); }), ErrorCode::ConstructionRefused);
}

TEST(BuildBracket, WrongRolesAreRefused) {
    const MeshSpec s = mbt::mesh_spec(5, 5, 2, 0.5);
    const ModelInstance mi = instantiate("gas-liquid", {}, s);
    ConstructionRule r = mi.bracket;
    r.lower[0] = ComponentRule{RuleKind::ConstantUpper, 1.0};
    EXPECT_EQ(code_of([&] { build_bracket(mi.problem, Mesh(s), r); }), ErrorCode::ConstructionRefused);
    r = mi.bracket;
    r.upper[1] = ComponentRule{RuleKind::ZeroLower, std::nullopt};
    EXPECT_EQ(code_of([&] { build_bracket(mi.problem, Mesh(s), r); }), ErrorCode::ConstructionRefused);
    r = mi.bracket;
    r.upper[1].param.reset();
    EXPECT_EQ(code_of([&] { build_bracket(mi.problem, Mesh(s), r); }), ErrorCode::ConstructionRefused);
}

TEST(BuildBracket, NegativeReactionAtConstantUpperIsRefused) {
    // volterra-lotka: f1(K, M2) = -K (1 - K + a1 M2) < 0 for K just above the data
    const MeshSpec s = mbt::mesh_spec(5, 5, 2, 0.5);
    const ModelInstance mi = instantiate("volterra-lotka", {}, s);
    ConstructionRule r = mi.bracket;
    r.upper[0].param = 1.2;
    EXPECT_EQ(code_of([&] { build_bracket(mi.problem, Mesh(s), r); }), ErrorCode::ConstructionRefused);
}

TEST(BuildBracket, LinearUpperWorksForGasLiquid) {
    const MeshSpec s = mbt::mesh_spec(5, 5, 3, 0.6);
    const ModelInstance mi = instantiate("gas-liquid", {}, s);
    ConstructionRule r = mi.bracket;
    r.upper = {ComponentRule{RuleKind::LinearUpper, std::nullopt}, ComponentRule{RuleKind::ConstantUpper, 0.84}};
    // default rate 1.1 * s1 r1 r2 covers -min f1, so the linear upper stays an upper solution
    const Mesh mesh(s);
    EXPECT_NEAR(default_linear_rate(mi.problem, mesh, 0), 1.1 * 0.84, 1e-12);
    const Bracket b = build_bracket(mi.problem, mesh, r);
    for (int m = 1; m <= mesh.nt(); ++m) {
        EXPECT_TRUE(
            verify_ordered_pair(mi.problem, mesh, b.upper[m], b.lower[m], m, b.upper[m - 1], b.lower[m - 1]));
        EXPECT_GT(max_abs(b.upper[m][0]), 0.5);
    }
}

TEST(BuildBracket, ConstantLowerForSignedProblem) {
    const Manufactured mf = make_manufactured(ManufacturedSpec{});
    const Mesh mesh(MeshSpec{1.0, 1.0, 0.25, 8, 8, 4});
    const Bracket b = build_bracket(mf.problem, mesh, mf.bracket);
    EXPECT_DOUBLE_EQ(b.lower[2][0](3, 3), -mf.K);
    EXPECT_DOUBLE_EQ(b.upper[2][1](3, 3), mf.K);
    ConstructionRule r = mf.bracket;
    r.lower[0].param = 0.5;  // boundary data is zero
    EXPECT_EQ(code_of([&] { build_bracket(mf.problem, mesh, r); }), ErrorCode::ConstructionRefused);
}
