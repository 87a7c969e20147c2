#include "testing.hpp"

#include <gtest/gtest.h>

using namespace monoblock;

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

}  // namespace

TEST(Models, NamesAndLookup) {
    const auto names = model_names();
    EXPECT_EQ(names.size(), 6u);
    for (const auto& n : names) {
        EXPECT_NO_THROW(instantiate(n, {}, MeshSpec{})) << n;
        EXPECT_EQ(instantiate(n, {}, MeshSpec{}).name, n);
    }
    EXPECT_EQ(code_of([] { instantiate("brusselator", {}, MeshSpec{}); }), ErrorCode::Config);
    EXPECT_EQ(code_of([] { instantiate("gas-liquid", {{"kappa", 1.0}}, MeshSpec{}); }), ErrorCode::Config);
}

TEST(Models, InvariantViolationsAreInvalidArguments) {
    EXPECT_EQ(code_of([] { instantiate("volterra-lotka", {{"a1", 2.0}, {"a2", 0.6}}, MeshSpec{}); }),
              ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { instantiate("gas-liquid", {{"rho1", 0.5}}, MeshSpec{}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { instantiate("belousov-zhabotinskii", {{"K1", 0.5}}, MeshSpec{}); }),
              ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { instantiate("enzyme-substrate", {{"M0", 0.5}}, MeshSpec{}); }),
              ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { instantiate("enzyme-substrate", {{"g2", 1.5}}, MeshSpec{}); }),
              ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { instantiate("gas-liquid", {{"eps1", 0.0}}, MeshSpec{}); }), ErrorCode::InvalidArgument);
}

TEST(Models, ResolvedDefaults) {
    const ModelInstance gl = instantiate("gas-liquid", {}, MeshSpec{});
    EXPECT_NEAR(gl.params.at("rho2"), 1.05 * 0.8, 1e-15);
    EXPECT_EQ(gl.params.at("eps1"), 1.0);
    const ModelInstance vl = instantiate("volterra-lotka", {}, MeshSpec{});
    // M2 = max((a2+1)/(1-a1 a2), bump2, (bump1-1)/a1) = 2, M1 = a1 M2 + 1 = 2
    EXPECT_DOUBLE_EQ(vl.params.at("M2"), 2.0);
    EXPECT_DOUBLE_EQ(vl.params.at("M1"), 2.0);
    const ModelInstance bz = instantiate("belousov-zhabotinskii", {}, MeshSpec{});
    EXPECT_DOUBLE_EQ(bz.params.at("K1"), 1.05);
    EXPECT_NEAR(bz.params.at("K2"), 0.84, 1e-15);
    const ModelInstance es = instantiate("enzyme-substrate", {}, MeshSpec{});
    EXPECT_DOUBLE_EQ(es.params.at("M0"), 1.05);
}

TEST(Models, BetaAtDefaults) {
    // beta = max over levels and components of q - clow, computed from the closed forms
    const Mesh mesh(MeshSpec{});
    struct Case {
        std::string name;
        double beta;
    };
    for (const Case& c : {Case{"gas-liquid", 1.0}, Case{"volterra-lotka", 3.0}, Case{"belousov-zhabotinskii", 2.05},
                          Case{"enzyme-substrate", 0.8 + 1.05 + 1.0}, Case{"zero", 0.0}, Case{"linear", 0.0}}) {
        const TauStatus st = check_tau_restriction(instantiate(c.name, {}, MeshSpec{}).problem, mesh);
        EXPECT_NEAR(st.beta_max, c.beta, 1e-12) << c.name;
        EXPECT_TRUE(st.ok) << c.name;
    }
}

TEST(Models, InitialDataMatchesBoundaryData) {
    for (const auto& n : model_names()) {
        MeshSpec d;
        d.l1 = 2.0;
        d.l2 = 0.5;
        const ModelInstance mi = instantiate(n, {}, d);
        for (int a = 0; a < 2; ++a) {
            const auto& c = mi.problem.comp[a];
            for (double s : {0.0, 0.3, 0.7, 1.0}) {
                EXPECT_NEAR(c.psi(s * d.l1, 0.0), c.g(s * d.l1, 0.0, 0.0), 1e-15) << n;
                EXPECT_NEAR(c.psi(s * d.l1, d.l2), c.g(s * d.l1, d.l2, 0.0), 1e-15) << n;
                EXPECT_NEAR(c.psi(0.0, s * d.l2), c.g(0.0, s * d.l2, 0.0), 1e-15) << n;
                EXPECT_NEAR(c.psi(d.l1, s * d.l2), c.g(d.l1, s * d.l2, 0.0), 1e-15) << n;
            }
        }
    }
}

TEST(Models, ClassesAndParameters) {
    EXPECT_EQ(instantiate("gas-liquid", {}, MeshSpec{}).problem.cls, QuasiMonotone::Nondecreasing);
    EXPECT_EQ(instantiate("volterra-lotka", {}, MeshSpec{}).problem.cls, QuasiMonotone::Nondecreasing);
    EXPECT_EQ(instantiate("belousov-zhabotinskii", {}, MeshSpec{}).problem.cls, QuasiMonotone::Nonincreasing);
    EXPECT_EQ(instantiate("enzyme-substrate", {}, MeshSpec{}).problem.cls, QuasiMonotone::Nonincreasing);
    const ModelInstance gl = instantiate("gas-liquid", {{"v1x", 2.0}, {"eps2", 0.1}, {"g1", 0.2}}, MeshSpec{});
    EXPECT_EQ(gl.problem.comp[0].vel1(0.3, 0.3, 0.0), 2.0);
    EXPECT_EQ(gl.problem.comp[1].eps, 0.1);
    EXPECT_EQ(gl.problem.comp[0].g(0.0, 0.5, 0.2), 0.2);
    EXPECT_EQ(default_bracket("gas-liquid", {}, MeshSpec{}).upper[0].kind, RuleKind::ConstantUpper);
    EXPECT_EQ(default_bracket("enzyme-substrate", {}, MeshSpec{}).upper[0].kind, RuleKind::AuxiliaryLinearUpper);
}

TEST(Models, ModelDataPassesSamplingForParameterSweep) {
    // a handful of admissible parameter sets per model
    const std::vector<std::pair<std::string, ParamMap>> cases = {
        {"gas-liquid", {{"sigma1", 2.0}, {"sigma2", 0.5}, {"rho1", 1.5}}},
        {"volterra-lotka", {{"a1", 0.2}, {"a2", 0.9}}},
        {"belousov-zhabotinskii", {{"a", 2.0}, {"b", 0.5}, {"sigma1", 0.3}}},
        {"enzyme-substrate", {{"a1", 0.5}, {"b2", 2.0}, {"E0", 1.5}}},
    };
    for (const auto& [name, params] : cases) {
        const ProblemSpec p = instantiate(name, params, MeshSpec{}).problem;
        EXPECT_TRUE(check_derivatives(p, MeshSpec{}).ok) << name;
        EXPECT_TRUE(check_bounds(p, MeshSpec{}).ok) << name << ": " << check_bounds(p, MeshSpec{}).detail;
        EXPECT_TRUE(check_class(p, MeshSpec{}).ok) << name;
        EXPECT_TRUE(check_gamma_monotone(p, MeshSpec{}).ok) << name;
    }
}
