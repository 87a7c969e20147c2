#include "monoblock/init_solutions.hpp"

#include "monoblock/blocksolve.hpp"
#include "monoblock/discretization.hpp"
#include "monoblock/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace monoblock {

namespace {

[[noreturn]] void refuse(const std::string& what) {
    raise(ErrorCode::ConstructionRefused, what);
}

std::string comp_name(int alpha) {
    return "component " + std::to_string(alpha + 1);
}

/// Partner values to probe at time t: the sector ends plus a few interior points
std::vector<double> partner_probes(const ProblemSpec& problem, int partner, double t) {
    const Interval iv = problem.sector(t)[partner];
    std::vector<double> v;
    for (int k = 0; k <= 4; ++k) {
        v.push_back(iv.lo + (iv.hi - iv.lo) * k / 4.0);
    }
    return v;
}

void check_data_bounds(const ProblemSpec& problem, const Mesh& mesh, int alpha, double lo, double hi,
                       const std::string& rule) {
    for (int m = 0; m <= mesh.nt(); ++m) {
        for (int i = 0; i <= mesh.nx(); ++i) {
            for (int j = 0; j <= mesh.ny(); ++j) {
                const double x = mesh.x(i);
                const double y = mesh.y(j);
                if (m == 0) {
                    const double p = problem.comp[alpha].psi(x, y);
                    if (p < lo || p > hi) {
                        std::ostringstream os;
                        os << rule << ": initial data " << p << " of " << comp_name(alpha) << " outside [" << lo
                           << ", " << hi << "]";
                        refuse(os.str());
                    }
                }
                if (mesh.classify(i, j) == NodeKind::Boundary) {
                    const double g = problem.comp[alpha].g(x, y, mesh.t(m));
                    if (g < lo || g > hi) {
                        std::ostringstream os;
                        os << rule << ": boundary data " << g << " of " << comp_name(alpha) << " outside [" << lo
                           << ", " << hi << "] at t=" << mesh.t(m);
                        refuse(os.str());
                    }
                }
            }
        }
    }
}

}  // namespace

std::string to_string(RuleKind k) {
    switch (k) {
        case RuleKind::ZeroLower: return "zero_lower";
        case RuleKind::ConstantLower: return "constant_lower";
        case RuleKind::LinearUpper: return "linear_upper";
        case RuleKind::ConstantUpper: return "constant_upper";
        case RuleKind::AuxiliaryLinearUpper: return "auxiliary_linear_upper";
    }
    return "unknown";
}

RuleKind rule_kind_from_string(const std::string& s) {
    for (RuleKind k : {RuleKind::ZeroLower, RuleKind::ConstantLower, RuleKind::LinearUpper, RuleKind::ConstantUpper,
                       RuleKind::AuxiliaryLinearUpper}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    raise(ErrorCode::Config, "unknown construction kind '" + s + "'");
}

FieldPair lower_zero(const ProblemSpec& problem, const Mesh& mesh, int m) {
    if (m < 0 || m > mesh.nt()) {
        raise(ErrorCode::OutOfRange, "time level out of range");
    }
    for (int a = 0; a < 2; ++a) {
        check_data_bounds(problem, mesh, a, 0.0, INFINITY, "zero lower");
    }
    if (m == 0) {
        return {sample_initial(problem, 0, mesh), sample_initial(problem, 1, mesh)};
    }
    const double t = mesh.t(m);
    const bool nd = problem.cls == QuasiMonotone::Nondecreasing;
    for (int a = 0; a < 2; ++a) {
        // the partner of a lower sequence is the other lower (zero) or the other upper (anywhere in the sector)
        const std::vector<double> partners = nd ? std::vector<double>{0.0} : partner_probes(problem, 1 - a, t);
        for (int i = 0; i <= mesh.nx(); ++i) {
            for (int j = 0; j <= mesh.ny(); ++j) {
                for (double p : partners) {
                    const double f = reaction_value(problem, a, mesh.x(i), mesh.y(j), t, 0.0, p);
                    if (f > 1e-12) {
                        std::ostringstream os;
                        os << "zero lower: f of " << comp_name(a) << " is " << f << " > 0 at u=0, partner " << p;
                        refuse(os.str());
                    }
                }
            }
        }
    }
    return make_pair(mesh);
}

std::vector<Field> constant_trajectory(const ProblemSpec& problem, const Mesh& mesh, int alpha, double value) {
    std::vector<Field> out;
    out.reserve(static_cast<std::size_t>(mesh.nt() + 1));
    out.push_back(sample_initial(problem, alpha, mesh));
    for (int m = 1; m <= mesh.nt(); ++m) {
        out.emplace_back(mesh, value);
    }
    return out;
}

std::vector<Field> upper_linear(const ProblemSpec& problem, const Mesh& mesh, int alpha, double M) {
    if (!(M >= 0.0) || !std::isfinite(M)) {
        raise(ErrorCode::InvalidArgument, "linear upper rate must be finite and nonnegative");
    }
    const int nx = mesh.nx();
    const int ny = mesh.ny();
    const int w = ny - 1;
    const int n = (nx - 1) * w;
    auto idx = [w](int i, int j) { return (i - 1) * w + (j - 1); };
    const double inv_tau = 1.0 / mesh.tau();

    std::vector<Field> out;
    out.reserve(static_cast<std::size_t>(mesh.nt() + 1));
    out.push_back(sample_initial(problem, alpha, mesh));
    std::vector<double> rhs(static_cast<std::size_t>(n));
    for (int m = 1; m <= mesh.nt(); ++m) {
        Field u = sample_boundary(problem, alpha, mesh, m);
        const Field& prev = out.back();
        BandedLU lu(n, w);
        for (int i = 1; i < nx; ++i) {
            for (int j = 1; j < ny; ++j) {
                const StencilCoeffs s = stencil(problem, mesh, alpha, i, j, m);
                const int row = idx(i, j);
                double b = inv_tau * prev(i, j) + M;
                lu.at(row, row) = s.d;
                if (i > 1) {
                    lu.at(row, idx(i - 1, j)) = -s.l;
                } else {
                    b += s.l * u(0, j);
                }
                if (i < nx - 1) {
                    lu.at(row, idx(i + 1, j)) = -s.r;
                } else {
                    b += s.r * u(nx, j);
                }
                if (j > 1) {
                    lu.at(row, idx(i, j - 1)) = -s.b;
                } else {
                    b += s.b * u(i, 0);
                }
                if (j < ny - 1) {
                    lu.at(row, idx(i, j + 1)) = -s.t;
                } else {
                    b += s.t * u(i, ny);
                }
                rhs[static_cast<std::size_t>(row)] = b;
            }
        }
        lu.factor();
        lu.solve(rhs);
        for (int i = 1; i < nx; ++i) {
            for (int j = 1; j < ny; ++j) {
                u(i, j) = rhs[static_cast<std::size_t>(idx(i, j))];
            }
        }
        out.push_back(std::move(u));
    }
    return out;
}

double default_linear_rate(const ProblemSpec& problem, const Mesh& mesh, int alpha, std::uint64_t seed) {
    const MeshSpec& d = mesh.spec();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double fmin = INFINITY;
    auto probe = [&](double x, double y, double t, double u1, double u2) {
        fmin = std::min(fmin, problem.comp[alpha].f(x, y, t, u1, u2));
    };
    for (int s = 0; s < 200; ++s) {
        const double x = d.l1 * unit(rng);
        const double y = d.l2 * unit(rng);
        const double t = d.T * unit(rng);
        const auto box = problem.sector(t);
        probe(x, y, t, box[0].lo + (box[0].hi - box[0].lo) * unit(rng),
              box[1].lo + (box[1].hi - box[1].lo) * unit(rng));
        for (int corner = 0; corner < 4; ++corner) {
            probe(x, y, t, corner & 1 ? box[0].hi : box[0].lo, corner & 2 ? box[1].hi : box[1].lo);
        }
    }
    return 1.1 * std::max(0.0, -fmin);
}

Bracket build_bracket(const ProblemSpec& problem, const Mesh& mesh, const ConstructionRule& rule) {
    validate(problem);
    const bool nd = problem.cls == QuasiMonotone::Nondecreasing;
    std::array<std::vector<Field>, 2> lower, upper;

    for (int a = 0; a < 2; ++a) {
        const ComponentRule& r = rule.lower[a];
        switch (r.kind) {
            case RuleKind::ZeroLower:
                check_data_bounds(problem, mesh, a, 0.0, INFINITY, "zero lower");
                lower[a] = constant_trajectory(problem, mesh, a, 0.0);
                break;
            case RuleKind::ConstantLower:
                if (!r.param) {
                    refuse("constant lower for " + comp_name(a) + " needs a value");
                }
                check_data_bounds(problem, mesh, a, *r.param, INFINITY, "constant lower");
                lower[a] = constant_trajectory(problem, mesh, a, *r.param);
                break;
            default:
                refuse(to_string(r.kind) + " is not a lower construction");
        }
    }

    for (int a = 0; a < 2; ++a) {
        const ComponentRule& r = rule.upper[a];
        switch (r.kind) {
            case RuleKind::ConstantUpper:
                if (!r.param) {
                    refuse("constant upper for " + comp_name(a) + " needs a value");
                }
                check_data_bounds(problem, mesh, a, -INFINITY, *r.param, "constant upper");
                upper[a] = constant_trajectory(problem, mesh, a, *r.param);
                break;
            case RuleKind::LinearUpper:
            case RuleKind::AuxiliaryLinearUpper: {
                if (r.kind == RuleKind::AuxiliaryLinearUpper && !r.param) {
                    refuse("auxiliary linear upper for " + comp_name(a) + " needs a rate");
                }
                const double M = r.param ? *r.param : default_linear_rate(problem, mesh, a);
                if (!(M >= 0.0)) {
                    refuse("linear upper rate must be nonnegative");
                }
                upper[a] = upper_linear(problem, mesh, a, M);
                break;
            }
            default:
                refuse(to_string(r.kind) + " is not an upper construction");
        }
    }

    // residual-sign assumptions for constant uppers, probed on every node of every level
    for (int a = 0; a < 2; ++a) {
        if (rule.upper[a].kind != RuleKind::ConstantUpper) {
            continue;
        }
        const auto& partner = nd ? upper[1 - a] : lower[1 - a];
        const double K = *rule.upper[a].param;
        for (int m = 1; m <= mesh.nt(); ++m) {
            const Field& p = partner[static_cast<std::size_t>(m)];
            for (int i = 0; i <= mesh.nx(); ++i) {
                for (int j = 0; j <= mesh.ny(); ++j) {
                    const double f = reaction_value(problem, a, mesh.x(i), mesh.y(j), mesh.t(m), K, p(i, j));
                    if (f < -1e-12) {
                        std::ostringstream os;
                        os << "constant upper: f of " << comp_name(a) << " is " << f << " < 0 at u=" << K;
                        refuse(os.str());
                    }
                }
            }
        }
    }

    Bracket out;
    for (int m = 0; m <= mesh.nt(); ++m) {
        const auto mm = static_cast<std::size_t>(m);
        out.lower.push_back({lower[0][mm], lower[1][mm]});
        out.upper.push_back({upper[0][mm], upper[1][mm]});
    }
    for (int m = 1; m <= mesh.nt(); ++m) {
        const auto mm = static_cast<std::size_t>(m);
        const PairCheck chk =
            check_ordered_pair(problem, mesh, out.upper[mm], out.lower[mm], m, out.upper[mm - 1], out.lower[mm - 1]);
        if (!chk.ok()) {
            refuse("bracket fails the ordered-pair test at level " + std::to_string(m) + ": " + chk.detail);
        }
    }
    return out;
}

}  // namespace monoblock
