#include "testing.hpp"

#include <gtest/gtest.h>

using namespace monoblock;
using mbt::Gen;

namespace {

ModelInstance model(const std::string& name, const ParamMap& p = {}) {
    return instantiate(name, p, MeshSpec{});
}

}  // namespace

TEST(Reaction, ValidateRejectsIncompleteProblems) {
    ProblemSpec p = mbt::linear_problem(1.0, 0.0, 0.0);
    EXPECT_NO_THROW(validate(p));
    ProblemSpec missing = p;
    missing.comp[1].df_cross = nullptr;
    EXPECT_THROW(validate(missing), Error);
    ProblemSpec bad_eps = p;
    bad_eps.comp[0].eps = 0.0;
    EXPECT_THROW(validate(bad_eps), Error);
    ProblemSpec no_sector = p;
    no_sector.sector = nullptr;
    EXPECT_THROW(validate(no_sector), Error);
}

TEST(Reaction, GammaIsCMinusF) {
    const ProblemSpec p = model("gas-liquid").problem;
    const double u1 = 0.3;
    const double u2 = 0.7;
    const auto g = gamma(p, {2.0, 3.0}, 0.1, 0.2, 0.0, u1, u2);
    // f1 = -(1 - u1) u2, f2 = (1 - u1) u2 with sigma = rho1 = 1
    EXPECT_NEAR(g[0], 2.0 * u1 + (1.0 - u1) * u2, 1e-15);
    EXPECT_NEAR(g[1], 3.0 * u2 - (1.0 - u1) * u2, 1e-15);
}

TEST(Reaction, CLevelTakesMaxOverNodes) {
    ProblemSpec p = mbt::linear_problem(1.0, 0.0, 0.0);
    p.comp[0].c_bound = [](double x, double y, double t) { return x + 2.0 * y + t; };
    MeshSpec s;
    s.l1 = 2.0;
    s.l2 = 1.0;
    s.T = 1.0;
    s.nt = 4;
    const Mesh mesh(s);
    const auto c = c_level(p, mesh, 2);
    EXPECT_DOUBLE_EQ(c[0], 2.0 + 2.0 + 0.5);
    EXPECT_DOUBLE_EQ(c[1], 1.0);
    EXPECT_THROW(c_level(p, mesh, 5), Error);
}

TEST(Reaction, LambdaShiftTransformsReactionProperty) {
    const ProblemSpec base = model("volterra-lotka").problem;
    const double lambda = 1.7;
    const ProblemSpec sh = lambda_shift(base, lambda);
    Gen gen(301);
    for (int trial = 0; trial < 100; ++trial) {
        const double x = gen.uniform(0, 1), y = gen.uniform(0, 1), t = gen.uniform(0, 1);
        const double z1 = gen.uniform(0, 1), z2 = gen.uniform(0, 1);
        const double e = std::exp(lambda * t);
        for (int a = 0; a < 2; ++a) {
            const double za = a == 0 ? z1 : z2;
            EXPECT_NEAR(sh.comp[a].f(x, y, t, z1, z2), lambda * za + base.comp[a].f(x, y, t, e * z1, e * z2) / e,
                        1e-12);
            EXPECT_NEAR(sh.comp[a].df_own(x, y, t, z1, z2),
                        lambda + base.comp[a].df_own(x, y, t, e * z1, e * z2), 1e-12);
            EXPECT_NEAR(sh.comp[a].c_lower(x, y, t), lambda + base.comp[a].c_lower(x, y, t), 1e-15);
        }
    }
    EXPECT_THROW(lambda_shift(base, -1.0), Error);
}

TEST(Reaction, LambdaShiftKeepsDerivativesConsistent) {
    const ProblemSpec sh = lambda_shift(model("gas-liquid").problem, 0.8);
    EXPECT_TRUE(check_derivatives(sh, MeshSpec{}).ok);
}

TEST(Reaction, BundledModelsPassSamplingChecks) {
    for (const auto& name : mbt::bundled_models()) {
        const ProblemSpec p = model(name).problem;
        EXPECT_TRUE(check_derivatives(p, MeshSpec{}).ok) << name << ": " << check_derivatives(p, MeshSpec{}).detail;
        EXPECT_TRUE(check_bounds(p, MeshSpec{}).ok) << name << ": " << check_bounds(p, MeshSpec{}).detail;
        EXPECT_TRUE(check_class(p, MeshSpec{}).ok) << name;
        EXPECT_TRUE(check_gamma_monotone(p, MeshSpec{}).ok) << name << ": "
                                                             << check_gamma_monotone(p, MeshSpec{}).detail;
    }
}

TEST(Reaction, WrongDerivativeIsDetected) {
    ProblemSpec p = model("gas-liquid").problem;
    p.comp[0].df_own = [](double, double, double, double, double u2) { return 2.0 * u2; };
    const SampleCheck c = check_derivatives(p, MeshSpec{});
    EXPECT_FALSE(c.ok);
    EXPECT_GT(c.failures, 0);
    EXPECT_FALSE(c.detail.empty());
}

TEST(Reaction, WrongClassIsDetected) {
    ProblemSpec p = model("gas-liquid").problem;
    p.cls = QuasiMonotone::Nonincreasing;
    EXPECT_FALSE(check_class(p, MeshSpec{}).ok);
    ProblemSpec q = model("belousov-zhabotinskii").problem;
    q.cls = QuasiMonotone::Nondecreasing;
    EXPECT_FALSE(check_class(q, MeshSpec{}).ok);
}

TEST(Reaction, TooSmallBoundIsDetected) {
    ProblemSpec p = model("gas-liquid").problem;
    p.comp[1].c_bound = constant_fn(0.1);
    EXPECT_FALSE(check_bounds(p, MeshSpec{}).ok);
}

TEST(Reaction, SamplingIsDeterministicForSeed) {
    ProblemSpec p = model("gas-liquid").problem;
    p.comp[1].c_bound = constant_fn(0.5);
    SampleOptions opt;
    opt.seed = 99;
    const SampleCheck a = check_bounds(p, MeshSpec{}, opt);
    const SampleCheck b = check_bounds(p, MeshSpec{}, opt);
    EXPECT_EQ(a.failures, b.failures);
    EXPECT_EQ(a.worst, b.worst);
    EXPECT_EQ(a.detail, b.detail);
}

TEST(Reaction, SampledDataMatchesCallables) {
    const ModelInstance mi = model("gas-liquid");
    const Mesh mesh(MeshSpec{});
    const Field g = sample_boundary(mi.problem, 0, mesh, 3);
    const Field psi = sample_initial(mi.problem, 1, mesh);
    for (int i = 0; i <= mesh.nx(); ++i) {
        for (int j = 0; j <= mesh.ny(); ++j) {
            EXPECT_EQ(g(i, j), mi.problem.comp[0].g(mesh.x(i), mesh.y(j), mesh.t(3)));
            EXPECT_EQ(psi(i, j), mi.problem.comp[1].psi(mesh.x(i), mesh.y(j)));
        }
    }
    EXPECT_EQ(constant_fn(2.5)(1, 2, 3), 2.5);
    EXPECT_EQ(constant_initial(-1.0)(0, 0), -1.0);
    EXPECT_EQ(constant_reaction(4.0)(0, 0, 0, 1, 1), 4.0);
}
