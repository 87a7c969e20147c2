#include "monoblock/reaction.hpp"

#include "monoblock/error.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <sstream>

namespace monoblock {

namespace {

struct SamplePoint {
    double x, y, t;
    std::array<double, 2> u;
};

/// Fixed-seed generator over the space-time box and the sector at each time
class Sampler {
public:
    Sampler(const ProblemSpec& problem, const MeshSpec& domain, std::uint64_t seed)
        : problem_(problem), domain_(domain), rng_(seed) {}

    SamplePoint next() {
        SamplePoint p{};
        p.x = uniform(0.0, domain_.l1);
        p.y = uniform(0.0, domain_.l2);
        p.t = uniform(0.0, domain_.T);
        const auto box = problem_.sector(p.t);
        for (int a = 0; a < 2; ++a) {
            p.u[a] = uniform(box[a].lo, box[a].hi);
        }
        return p;
    }

    double uniform(double lo, double hi) {
        std::uniform_real_distribution<double> d(0.0, 1.0);
        return lo + (hi - lo) * d(rng_);
    }

private:
    const ProblemSpec& problem_;
    const MeshSpec& domain_;
    std::mt19937_64 rng_;
};

void record(SampleCheck& out, double violation, const std::string& what) {
    if (violation > 0.0) {
        if (out.failures == 0) {
            out.detail = what;
        }
        out.ok = false;
        ++out.failures;
        out.worst = std::max(out.worst, violation);
    }
}

std::string where(const SamplePoint& p, int alpha) {
    std::ostringstream os;
    os.precision(6);
    os << "component " << alpha + 1 << " at (x=" << p.x << ", y=" << p.y << ", t=" << p.t << ", u=(" << p.u[0]
       << ", " << p.u[1] << "))";
    return os.str();
}

double eval(const ReactionFn& fn, const SamplePoint& p, const std::array<double, 2>& u) {
    return fn(p.x, p.y, p.t, u[0], u[1]);
}

}  // namespace

void validate(const ProblemSpec& problem) {
    for (int a = 0; a < 2; ++a) {
        const auto& c = problem.comp[a];
        if (!(c.eps > 0.0) || !std::isfinite(c.eps)) {
            raise(ErrorCode::InvalidArgument, "diffusion coefficient must be positive");
        }
        if (!c.vel1 || !c.vel2 || !c.f || !c.df_own || !c.df_cross || !c.g || !c.psi || !c.c_bound ||
            !c.c_lower || !c.q_bound) {
            raise(ErrorCode::InvalidArgument, "problem '" + problem.name + "' has an unset callable");
        }
    }
    if (!problem.sector) {
        raise(ErrorCode::InvalidArgument, "problem '" + problem.name + "' has no sector");
    }
}

std::array<double, 2> c_level(const ProblemSpec& problem, const Mesh& mesh, int m) {
    if (m < 0 || m > mesh.nt()) {
        raise(ErrorCode::OutOfRange, "time level out of range");
    }
    const double t = mesh.t(m);
    std::array<double, 2> c{-INFINITY, -INFINITY};
    for (int a = 0; a < 2; ++a) {
        for (int i = 0; i <= mesh.nx(); ++i) {
            for (int j = 0; j <= mesh.ny(); ++j) {
                const double v = problem.comp[a].c_bound(mesh.x(i), mesh.y(j), t);
                if (!std::isfinite(v)) {
                    raise(ErrorCode::NonFinite, "c bound is not finite");
                }
                c[a] = std::max(c[a], v);
            }
        }
    }
    return c;
}

std::array<double, 2> gamma(const ProblemSpec& problem, const std::array<double, 2>& c, double x, double y,
                            double t, double u1, double u2) {
    const double f1 = problem.comp[0].f(x, y, t, u1, u2);
    const double f2 = problem.comp[1].f(x, y, t, u1, u2);
    if (!std::isfinite(f1) || !std::isfinite(f2)) {
        raise(ErrorCode::NonFinite, "reaction value is not finite");
    }
    return {c[0] * u1 - f1, c[1] * u2 - f2};
}

ProblemSpec lambda_shift(const ProblemSpec& problem, double lambda) {
    if (!(lambda >= 0.0)) {
        raise(ErrorCode::InvalidArgument, "lambda must be nonnegative");
    }
    auto base = std::make_shared<const ProblemSpec>(problem);
    ProblemSpec out = problem;
    out.name = problem.name + "+shift";
    for (int a = 0; a < 2; ++a) {
        out.comp[a].f = [base, a, lambda](double x, double y, double t, double z1, double z2) {
            const double e = std::exp(lambda * t);
            const double za = a == 0 ? z1 : z2;
            return lambda * za + base->comp[a].f(x, y, t, e * z1, e * z2) / e;
        };
        out.comp[a].df_own = [base, a, lambda](double x, double y, double t, double z1, double z2) {
            const double e = std::exp(lambda * t);
            return lambda + base->comp[a].df_own(x, y, t, e * z1, e * z2);
        };
        out.comp[a].df_cross = [base, a, lambda](double x, double y, double t, double z1, double z2) {
            const double e = std::exp(lambda * t);
            return base->comp[a].df_cross(x, y, t, e * z1, e * z2);
        };
        out.comp[a].g = [base, a, lambda](double x, double y, double t) {
            return std::exp(-lambda * t) * base->comp[a].g(x, y, t);
        };
        out.comp[a].c_bound = [base, a, lambda](double x, double y, double t) {
            return lambda + base->comp[a].c_bound(x, y, t);
        };
        out.comp[a].c_lower = [base, a, lambda](double x, double y, double t) {
            return lambda + base->comp[a].c_lower(x, y, t);
        };
    }
    out.sector = [base, lambda](double t) {
        auto box = base->sector(t);
        const double s = std::exp(-lambda * t);
        for (auto& iv : box) {
            iv.lo *= s;
            iv.hi *= s;
        }
        return box;
    };
    return out;
}

SampleCheck check_derivatives(const ProblemSpec& problem, const MeshSpec& domain, const SampleOptions& opt) {
    SampleCheck out;
    Sampler sampler(problem, domain, opt.seed);
    for (int s = 0; s < opt.samples; ++s) {
        const SamplePoint p = sampler.next();
        for (int a = 0; a < 2; ++a) {
            const auto& c = problem.comp[a];
            for (int which = 0; which < 2; ++which) {
                const int var = which == 0 ? a : 1 - a;
                const double h = 1e-6 * (1.0 + std::abs(p.u[var]));
                auto up = p.u;
                auto dn = p.u;
                up[var] += h;
                dn[var] -= h;
                const double fd = (eval(c.f, p, up) - eval(c.f, p, dn)) / (2.0 * h);
                const double an = eval(which == 0 ? c.df_own : c.df_cross, p, p.u);
                const double err = std::abs(an - fd) - opt.fd_rel_tol * (1.0 + std::abs(an));
                record(out, err, (which == 0 ? "own partial of " : "cross partial of ") + where(p, a));
            }
        }
        ++out.samples;
    }
    return out;
}

SampleCheck check_bounds(const ProblemSpec& problem, const MeshSpec& domain, const SampleOptions& opt) {
    SampleCheck out;
    Sampler sampler(problem, domain, opt.seed);
    for (int s = 0; s < opt.samples; ++s) {
        const SamplePoint p = sampler.next();
        for (int a = 0; a < 2; ++a) {
            const auto& c = problem.comp[a];
            const double own = eval(c.df_own, p, p.u);
            const double cross = eval(c.df_cross, p, p.u);
            const double hi = c.c_bound(p.x, p.y, p.t);
            const double lo = c.c_lower(p.x, p.y, p.t);
            const double q = c.q_bound(p.x, p.y, p.t);
            record(out, own - hi - opt.slack, "c bound below own partial, " + where(p, a));
            record(out, lo - own - opt.slack, "lower c bound above own partial, " + where(p, a));
            record(out, std::abs(cross) - q - opt.slack, "q bound below cross partial, " + where(p, a));
        }
        ++out.samples;
    }
    return out;
}

SampleCheck check_class(const ProblemSpec& problem, const MeshSpec& domain, const SampleOptions& opt) {
    SampleCheck out;
    Sampler sampler(problem, domain, opt.seed);
    const double sign = problem.cls == QuasiMonotone::Nondecreasing ? 1.0 : -1.0;
    for (int s = 0; s < opt.samples; ++s) {
        const SamplePoint p = sampler.next();
        for (int a = 0; a < 2; ++a) {
            // nondecreasing needs -df_cross >= 0, nonincreasing needs -df_cross <= 0
            const double v = -eval(problem.comp[a].df_cross, p, p.u) * sign;
            record(out, -v - opt.slack, "cross partial sign, " + where(p, a));
        }
        ++out.samples;
    }
    return out;
}

SampleCheck check_gamma_monotone(const ProblemSpec& problem, const MeshSpec& domain, const SampleOptions& opt) {
    SampleCheck out;
    Sampler sampler(problem, domain, opt.seed);
    for (int s = 0; s < opt.samples; ++s) {
        const SamplePoint v = sampler.next();
        const auto box = problem.sector(v.t);
        SamplePoint u = v;
        for (int a = 0; a < 2; ++a) {
            u.u[a] = sampler.uniform(v.u[a], box[a].hi);
        }
        const std::array<double, 2> c{problem.comp[0].c_bound(v.x, v.y, v.t), problem.comp[1].c_bound(v.x, v.y, v.t)};
        if (problem.cls == QuasiMonotone::Nondecreasing) {
            const auto gu = gamma(problem, c, v.x, v.y, v.t, u.u[0], u.u[1]);
            const auto gv = gamma(problem, c, v.x, v.y, v.t, v.u[0], v.u[1]);
            for (int a = 0; a < 2; ++a) {
                record(out, gv[a] - gu[a] - opt.slack, "gamma order, " + where(v, a));
            }
        } else {
            // own argument from U against the partner from V, compared with the reverse pairing
            const auto g_uv = gamma(problem, c, v.x, v.y, v.t, u.u[0], v.u[1]);
            const auto g_vu = gamma(problem, c, v.x, v.y, v.t, v.u[0], u.u[1]);
            record(out, g_vu[0] - g_uv[0] - opt.slack, "mixed gamma order, " + where(v, 0));
            record(out, g_uv[1] - g_vu[1] - opt.slack, "mixed gamma order, " + where(v, 1));
        }
        ++out.samples;
    }
    return out;
}

Field sample_boundary(const ProblemSpec& problem, int alpha, const Mesh& mesh, int m) {
    Field out(mesh);
    const double t = mesh.t(m);
    for (int i = 0; i <= mesh.nx(); ++i) {
        for (int j = 0; j <= mesh.ny(); ++j) {
            out(i, j) = problem.comp[alpha].g(mesh.x(i), mesh.y(j), t);
        }
    }
    return out;
}

Field sample_initial(const ProblemSpec& problem, int alpha, const Mesh& mesh) {
    Field out(mesh);
    for (int i = 0; i <= mesh.nx(); ++i) {
        for (int j = 0; j <= mesh.ny(); ++j) {
            out(i, j) = problem.comp[alpha].psi(mesh.x(i), mesh.y(j));
        }
    }
    return out;
}

SpaceTimeFn constant_fn(double value) {
    return [value](double, double, double) { return value; };
}

InitialFn constant_initial(double value) {
    return [value](double, double) { return value; };
}

ReactionFn constant_reaction(double value) {
    return [value](double, double, double, double, double) { return value; };
}

}  // namespace monoblock
