#include "monoblock/models.hpp"

#include "monoblock/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace monoblock {

namespace {

/// Reads parameters with defaults and remembers every name it was asked about
class Params {
public:
    explicit Params(const ParamMap& given) : given_(given) {}

    double get(const std::string& key, double fallback) {
        known_.insert(key);
        auto it = given_.find(key);
        const double v = it == given_.end() ? fallback : it->second;
        resolved_[key] = v;
        return v;
    }

    bool has(const std::string& key) const { return given_.count(key) > 0; }

    void set(const std::string& key, double v) {
        known_.insert(key);
        resolved_[key] = v;
    }

    void reject_unknown(const std::string& model) const {
        for (const auto& [k, v] : given_) {
            if (!known_.count(k)) {
                raise(ErrorCode::Config, "model '" + model + "' has no parameter '" + k + "'");
            }
        }
    }

    const ParamMap& resolved() const { return resolved_; }

private:
    const ParamMap& given_;
    std::set<std::string> known_;
    ParamMap resolved_;
};

void require(bool cond, const std::string& what) {
    if (!cond) {
        raise(ErrorCode::InvalidArgument, what);
    }
}

double positive(Params& p, const std::string& key, double fallback) {
    const double v = p.get(key, fallback);
    require(v > 0.0 && std::isfinite(v), key + " must be positive");
    return v;
}

/// Boundary value g and bump amplitude for one component
struct Profile {
    double base = 0.0;
    double bump = 0.0;

    double max() const { return base + std::max(bump, 0.0); }
    double min() const { return base + std::min(bump, 0.0); }
};

/// Shared transport and data setup for all models
void common(Params& p, ProblemSpec& prob, const MeshSpec& domain, const std::array<Profile, 2>& prof) {
    const double l1 = domain.l1;
    const double l2 = domain.l2;
    const char* axis[2][2] = {{"v1x", "v1y"}, {"v2x", "v2y"}};
    for (int a = 0; a < 2; ++a) {
        auto& c = prob.comp[a];
        c.eps = positive(p, a == 0 ? "eps1" : "eps2", 1.0);
        c.vel1 = constant_fn(p.get(axis[a][0], 0.0));
        c.vel2 = constant_fn(p.get(axis[a][1], 0.0));
        const Profile pr = prof[a];
        c.g = constant_fn(pr.base);
        c.psi = [pr, l1, l2](double x, double y) {
            return pr.base + pr.bump * std::sin(std::numbers::pi * x / l1) * std::sin(std::numbers::pi * y / l2);
        };
    }
}

Profile profile(Params& p, int alpha, double base, double bump) {
    const std::string k = std::to_string(alpha + 1);
    return {p.get("g" + k, base), p.get("bump" + k, bump)};
}

ComponentRule rule(RuleKind kind) {
    return {kind, std::nullopt};
}

ComponentRule rule(RuleKind kind, double v) {
    return {kind, v};
}

/// f1 = -s1 (r1 - u1) u2,  f2 = s2 (r1 - u1) u2
ModelInstance gas_liquid(Params& p, const MeshSpec& domain) {
    ModelInstance mi;
    ProblemSpec& prob = mi.problem;
    prob.name = "gas-liquid";
    prob.cls = QuasiMonotone::Nondecreasing;
    const double s1 = positive(p, "sigma1", 1.0);
    const double s2 = positive(p, "sigma2", 1.0);
    const double r1 = positive(p, "rho1", 1.0);
    const std::array<Profile, 2> prof{profile(p, 0, 0.5, 0.3), profile(p, 1, 0.5, 0.3)};
    const double r2 = positive(p, "rho2", 1.05 * std::max(prof[1].base, prof[1].max()));
    require(prof[0].min() >= 0.0 && prof[1].min() >= 0.0, "gas-liquid data must be nonnegative");
    require(r1 >= prof[0].max(), "rho1 must bound the data of component 1");
    require(r2 >= prof[1].max(), "rho2 must bound the data of component 2");
    common(p, prob, domain, prof);

    auto& c1 = prob.comp[0];
    auto& c2 = prob.comp[1];
    c1.f = [=](double, double, double, double u1, double u2) { return -s1 * (r1 - u1) * u2; };
    c1.df_own = [=](double, double, double, double, double u2) { return s1 * u2; };
    c1.df_cross = [=](double, double, double, double u1, double) { return -s1 * (r1 - u1); };
    c2.f = [=](double, double, double, double u1, double u2) { return s2 * (r1 - u1) * u2; };
    c2.df_own = [=](double, double, double, double u1, double) { return s2 * (r1 - u1); };
    c2.df_cross = [=](double, double, double, double, double u2) { return -s2 * u2; };
    c1.c_bound = constant_fn(s1 * r2);
    c2.c_bound = constant_fn(s2 * r1);
    c1.c_lower = constant_fn(0.0);
    c2.c_lower = constant_fn(0.0);
    c1.q_bound = constant_fn(s1 * r1);
    c2.q_bound = constant_fn(s2 * r2);
    prob.sector = [=](double) { return std::array<Interval, 2>{Interval{0.0, r1}, Interval{0.0, r2}}; };

    mi.bracket.lower = {rule(RuleKind::ZeroLower), rule(RuleKind::ZeroLower)};
    mi.bracket.upper = {rule(RuleKind::ConstantUpper, r1), rule(RuleKind::ConstantUpper, r2)};
    return mi;
}

/// f1 = -u1 (1 - u1 + a1 u2),  f2 = -u2 (1 + a2 u1 - u2), zero boundary data
ModelInstance volterra_lotka(Params& p, const MeshSpec& domain) {
    ModelInstance mi;
    ProblemSpec& prob = mi.problem;
    prob.name = "volterra-lotka";
    prob.cls = QuasiMonotone::Nondecreasing;
    const double a1 = positive(p, "a1", 0.5);
    const double a2 = positive(p, "a2", 0.5);
    require(a1 * a2 < 1.0, "volterra-lotka needs a1*a2 < 1");
    const std::array<Profile, 2> prof{Profile{0.0, p.get("bump1", 1.0)}, Profile{0.0, p.get("bump2", 1.0)}};
    require(prof[0].min() >= 0.0 && prof[1].min() >= 0.0, "volterra-lotka initial data must be nonnegative");
    const double m2_min = std::max({(a2 + 1.0) / (1.0 - a1 * a2), prof[1].max(), (prof[0].max() - 1.0) / a1});
    const double M2 = p.get("M2", m2_min);
    const double M1 = a1 * M2 + 1.0;
    p.set("M1", M1);
    require(M2 >= m2_min, "M2 below the admissible minimum");
    require(M1 <= (M2 - 1.0) / a2 + 1e-12, "M1 exceeds (M2-1)/a2");
    common(p, prob, domain, prof);

    auto& c1 = prob.comp[0];
    auto& c2 = prob.comp[1];
    c1.f = [=](double, double, double, double u1, double u2) { return -u1 * (1.0 - u1 + a1 * u2); };
    c1.df_own = [=](double, double, double, double u1, double u2) { return -1.0 + 2.0 * u1 - a1 * u2; };
    c1.df_cross = [=](double, double, double, double u1, double) { return -a1 * u1; };
    c2.f = [=](double, double, double, double u1, double u2) { return -u2 * (1.0 + a2 * u1 - u2); };
    c2.df_own = [=](double, double, double, double u1, double u2) { return -1.0 - a2 * u1 + 2.0 * u2; };
    c2.df_cross = [=](double, double, double, double, double u2) { return -a2 * u2; };
    c1.c_bound = constant_fn(2.0 * M1);
    c2.c_bound = constant_fn(2.0 * M2);
    c1.c_lower = constant_fn(-1.0 - a1 * M2);
    c2.c_lower = constant_fn(-1.0 - a2 * M1);
    c1.q_bound = constant_fn(a1 * M1);
    c2.q_bound = constant_fn(a2 * M2);
    prob.sector = [=](double) { return std::array<Interval, 2>{Interval{0.0, M1}, Interval{0.0, M2}}; };

    mi.bracket.lower = {rule(RuleKind::ZeroLower), rule(RuleKind::ZeroLower)};
    mi.bracket.upper = {rule(RuleKind::ConstantUpper, M1), rule(RuleKind::ConstantUpper, M2)};
    return mi;
}

/// f1 = -u1 (a - b u1 - s1 u2),  f2 = s2 u1 u2
ModelInstance belousov_zhabotinskii(Params& p, const MeshSpec& domain) {
    ModelInstance mi;
    ProblemSpec& prob = mi.problem;
    prob.name = "belousov-zhabotinskii";
    prob.cls = QuasiMonotone::Nonincreasing;
    const double a = positive(p, "a", 1.0);
    const double b = positive(p, "b", 1.0);
    const double s1 = positive(p, "sigma1", 1.0);
    const double s2 = positive(p, "sigma2", 1.0);
    const std::array<Profile, 2> prof{profile(p, 0, 0.5, 0.3), profile(p, 1, 0.5, 0.3)};
    require(prof[0].min() >= 0.0 && prof[1].min() >= 0.0, "belousov-zhabotinskii data must be nonnegative");
    const double k1_min = std::max({a / b, prof[0].base, prof[0].max()});
    const double k2_min = std::max(prof[1].base, prof[1].max());
    const double K1 = p.get("K1", 1.05 * k1_min);
    const double K2 = p.get("K2", 1.05 * k2_min);
    require(K1 >= k1_min, "K1 below max(a/b, g1, psi1)");
    require(K2 >= k2_min && K2 > 0.0, "K2 below max(g2, psi2)");
    common(p, prob, domain, prof);

    auto& c1 = prob.comp[0];
    auto& c2 = prob.comp[1];
    c1.f = [=](double, double, double, double u1, double u2) { return -u1 * (a - b * u1 - s1 * u2); };
    c1.df_own = [=](double, double, double, double u1, double u2) { return -a + 2.0 * b * u1 + s1 * u2; };
    c1.df_cross = [=](double, double, double, double u1, double) { return s1 * u1; };
    c2.f = [=](double, double, double, double u1, double u2) { return s2 * u1 * u2; };
    c2.df_own = [=](double, double, double, double u1, double) { return s2 * u1; };
    c2.df_cross = [=](double, double, double, double, double u2) { return s2 * u2; };
    c1.c_bound = constant_fn(2.0 * b * K1 + s1 * K2);
    c2.c_bound = constant_fn(s2 * K1);
    c1.c_lower = constant_fn(-a);
    c2.c_lower = constant_fn(0.0);
    c1.q_bound = constant_fn(s1 * K1);
    c2.q_bound = constant_fn(s2 * K2);
    prob.sector = [=](double) { return std::array<Interval, 2>{Interval{0.0, K1}, Interval{0.0, K2}}; };

    mi.bracket.lower = {rule(RuleKind::ZeroLower), rule(RuleKind::ZeroLower)};
    mi.bracket.upper = {rule(RuleKind::ConstantUpper, K1), rule(RuleKind::ConstantUpper, K2)};
    return mi;
}

/// f1 = a1 u1 u2 - b1 (E0 - u2),  f2 = a2 u1 u2 - b2 (E0 - u2)
///
/// Component 1 is bounded above by V(t) = max(g1, psi1) + M0 t, which caps
/// the auxiliary linear upper solution through the discrete maximum principle.
ModelInstance enzyme_substrate(Params& p, const MeshSpec& domain) {
    ModelInstance mi;
    ProblemSpec& prob = mi.problem;
    prob.name = "enzyme-substrate";
    prob.cls = QuasiMonotone::Nonincreasing;
    const double a1 = positive(p, "a1", 1.0);
    const double a2 = positive(p, "a2", 1.0);
    const double b1 = positive(p, "b1", 1.0);
    const double b2 = positive(p, "b2", 1.0);
    const double E0 = positive(p, "E0", 1.0);
    const std::array<Profile, 2> prof{profile(p, 0, 0.5, 0.3), profile(p, 1, 0.5, 0.3)};
    const double M0 = p.get("M0", 1.05 * b1 * E0);
    require(M0 > b1 * E0, "enzyme-substrate needs M0 > b1*E0");
    require(prof[0].min() >= 0.0 && prof[1].min() >= 0.0, "enzyme-substrate data must be nonnegative");
    require(prof[1].max() <= E0, "enzyme-substrate needs g2, psi2 <= E0");
    common(p, prob, domain, prof);
    const double v0 = std::max(prof[0].base, prof[0].max());
    auto vbound = [=](double t) { return v0 + M0 * t; };

    auto& c1 = prob.comp[0];
    auto& c2 = prob.comp[1];
    c1.f = [=](double, double, double, double u1, double u2) { return a1 * u1 * u2 - b1 * (E0 - u2); };
    c1.df_own = [=](double, double, double, double, double u2) { return a1 * u2; };
    c1.df_cross = [=](double, double, double, double u1, double) { return a1 * u1 + b1; };
    c2.f = [=](double, double, double, double u1, double u2) { return a2 * u1 * u2 - b2 * (E0 - u2); };
    c2.df_own = [=](double, double, double, double u1, double) { return a2 * u1 + b2; };
    c2.df_cross = [=](double, double, double, double, double u2) { return a2 * u2; };
    c1.c_bound = constant_fn(a1 * E0);
    c2.c_bound = [=](double, double, double t) { return a2 * vbound(t) + b2; };
    c1.c_lower = constant_fn(0.0);
    c2.c_lower = constant_fn(b2);
    c1.q_bound = [=](double, double, double t) { return a1 * vbound(t) + b1; };
    c2.q_bound = constant_fn(a2 * E0);
    prob.sector = [=](double t) { return std::array<Interval, 2>{Interval{0.0, vbound(t)}, Interval{0.0, E0}}; };

    mi.bracket.lower = {rule(RuleKind::ZeroLower), rule(RuleKind::ZeroLower)};
    mi.bracket.upper = {rule(RuleKind::AuxiliaryLinearUpper, M0), rule(RuleKind::ConstantUpper, E0)};
    return mi;
}

/// f = 0 with zero data
ModelInstance zero_model(Params& p, const MeshSpec& domain) {
    ModelInstance mi;
    ProblemSpec& prob = mi.problem;
    prob.name = "zero";
    prob.cls = QuasiMonotone::Nondecreasing;
    common(p, prob, domain, {Profile{}, Profile{}});
    for (auto& c : prob.comp) {
        c.f = constant_reaction(0.0);
        c.df_own = constant_reaction(0.0);
        c.df_cross = constant_reaction(0.0);
        c.c_bound = constant_fn(0.0);
        c.c_lower = constant_fn(0.0);
        c.q_bound = constant_fn(0.0);
    }
    prob.sector = [](double) { return std::array<Interval, 2>{Interval{0.0, 1.0}, Interval{0.0, 1.0}}; };
    mi.bracket.lower = {rule(RuleKind::ZeroLower), rule(RuleKind::ZeroLower)};
    mi.bracket.upper = {rule(RuleKind::ConstantUpper, 0.0), rule(RuleKind::ConstantUpper, 0.0)};
    return mi;
}

/// f_a = clow u_a - q u_b with zero data; beta = max(0, q - clow) is set directly
ModelInstance linear_model(Params& p, const MeshSpec& domain) {
    ModelInstance mi;
    ProblemSpec& prob = mi.problem;
    prob.name = "linear";
    prob.cls = QuasiMonotone::Nondecreasing;
    const double clow = p.get("clow", 1.0);
    const double q = p.get("q", 0.0);
    require(q >= 0.0, "q must be nonnegative");
    common(p, prob, domain, {Profile{}, Profile{}});
    prob.comp[0].f = [=](double, double, double, double u1, double u2) { return clow * u1 - q * u2; };
    prob.comp[1].f = [=](double, double, double, double u1, double u2) { return clow * u2 - q * u1; };
    for (auto& c : prob.comp) {
        c.df_own = constant_reaction(clow);
        c.df_cross = constant_reaction(-q);
        c.c_bound = constant_fn(clow);
        c.c_lower = constant_fn(clow);
        c.q_bound = constant_fn(q);
    }
    prob.sector = [](double) { return std::array<Interval, 2>{Interval{-1.0, 1.0}, Interval{-1.0, 1.0}}; };
    mi.bracket.lower = {rule(RuleKind::ZeroLower), rule(RuleKind::ZeroLower)};
    mi.bracket.upper = {rule(RuleKind::ConstantUpper, 0.0), rule(RuleKind::ConstantUpper, 0.0)};
    return mi;
}

}  // namespace

std::vector<std::string> model_names() {
    return {"gas-liquid", "volterra-lotka", "belousov-zhabotinskii", "enzyme-substrate", "zero", "linear"};
}

ModelInstance instantiate(const std::string& name, const ParamMap& params, const MeshSpec& domain) {
    Params p(params);
    ModelInstance mi;
    if (name == "gas-liquid") {
        mi = gas_liquid(p, domain);
    } else if (name == "volterra-lotka") {
        mi = volterra_lotka(p, domain);
    } else if (name == "belousov-zhabotinskii") {
        mi = belousov_zhabotinskii(p, domain);
    } else if (name == "enzyme-substrate") {
        mi = enzyme_substrate(p, domain);
    } else if (name == "zero") {
        mi = zero_model(p, domain);
    } else if (name == "linear") {
        mi = linear_model(p, domain);
    } else {
        raise(ErrorCode::Config, "unknown model '" + name + "'");
    }
    p.reject_unknown(name);
    mi.name = name;
    mi.params = p.resolved();
    validate(mi.problem);
    return mi;
}

ConstructionRule default_bracket(const std::string& name, const ParamMap& params, const MeshSpec& domain) {
    return instantiate(name, params, domain).bracket;
}

}  // namespace monoblock
