#include "monoblock/oracle.hpp"

#include "monoblock/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace monoblock {

std::vector<double> dense_solve(DenseMatrix a, std::span<const double> rhs) {
    const int n = a.size();
    if (static_cast<int>(rhs.size()) != n) {
        raise(ErrorCode::DimensionMismatch, "dense rhs size mismatch");
    }
    std::vector<double> b(rhs.begin(), rhs.end());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) {
                piv = r;
            }
        }
        if (a(piv, col) == 0.0 || !std::isfinite(a(piv, col))) {
            raise(ErrorCode::Singular, "dense matrix is singular at column " + std::to_string(col));
        }
        if (piv != col) {
            for (int c = 0; c < n; ++c) {
                std::swap(a(col, c), a(piv, c));
            }
            std::swap(b[static_cast<std::size_t>(col)], b[static_cast<std::size_t>(piv)]);
        }
        const double d = a(col, col);
        for (int r = col + 1; r < n; ++r) {
            const double f = a(r, col) / d;
            if (f == 0.0) {
                continue;
            }
            for (int c = col + 1; c < n; ++c) {
                a(r, c) -= f * a(col, c);
            }
            b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
        }
    }
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int r = n - 1; r >= 0; --r) {
        double v = b[static_cast<std::size_t>(r)];
        for (int c = r + 1; c < n; ++c) {
            v -= a(r, c) * x[static_cast<std::size_t>(c)];
        }
        x[static_cast<std::size_t>(r)] = v / a(r, r);
    }
    return x;
}

namespace {

/// Coefficients of the linear part at one node as the scheme defines them:
/// u_t - eps (Dxx + Dyy) u + v1 Dx u + v2 Dy u with one-sided Dx, Dy picked by velocity sign.
struct PointOperator {
    double center, west, east, south, north;
};

PointOperator point_operator(const ProblemSpec& problem, const Mesh& mesh, int alpha, int i, int j, int m) {
    const auto& c = problem.comp[alpha];
    const double x = mesh.x(i), y = mesh.y(j), t = mesh.t(m);
    const double hx = mesh.hx(), hy = mesh.hy();
    const double v1 = c.vel1(x, y, t);
    const double v2 = c.vel2(x, y, t);
    PointOperator p{};
    // time derivative and the centered second differences
    p.center = 1.0 / mesh.tau() + 2.0 * c.eps / (hx * hx) + 2.0 * c.eps / (hy * hy);
    p.west = p.east = -c.eps / (hx * hx);
    p.south = p.north = -c.eps / (hy * hy);
    // v Dx u: backward quotient (u_i - u_{i-1})/hx when v >= 0, forward (u_{i+1} - u_i)/hx otherwise
    if (v1 >= 0.0) {
        p.center += v1 / hx;
        p.west -= v1 / hx;
    } else {
        p.center -= v1 / hx;
        p.east += v1 / hx;
    }
    if (v2 >= 0.0) {
        p.center += v2 / hy;
        p.south -= v2 / hy;
    } else {
        p.center -= v2 / hy;
        p.north += v2 / hy;
    }
    return p;
}

int unknown(const Mesh& mesh, int alpha, int i, int j) {
    const int w = mesh.ny() - 1;
    return alpha * static_cast<int>(mesh.interior_count()) + (i - 1) * w + (j - 1);
}

double max_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double e : v) {
        m = std::max(m, std::abs(e));
    }
    return m;
}

std::vector<double> full_residual(const ProblemSpec& problem, const Mesh& mesh, const FieldPair& u,
                                  const FieldPair& prev, int m) {
    std::vector<double> r(2 * mesh.interior_count());
    for (int a = 0; a < 2; ++a) {
        const Field f = scheme_residual(problem, mesh, a, u, prev, m);
        for (int i = 1; i < mesh.nx(); ++i) {
            for (int j = 1; j < mesh.ny(); ++j) {
                r[static_cast<std::size_t>(unknown(mesh, a, i, j))] = f(i, j);
            }
        }
    }
    return r;
}

}  // namespace

Field scheme_residual(const ProblemSpec& problem, const Mesh& mesh, int alpha, const FieldPair& u,
                      const FieldPair& prev, int m) {
    Field out(mesh);
    const Field& w = u[alpha];
    const double t = mesh.t(m);
    for (int i = 1; i < mesh.nx(); ++i) {
        for (int j = 1; j < mesh.ny(); ++j) {
            const PointOperator p = point_operator(problem, mesh, alpha, i, j, m);
            double v = p.center * w(i, j) + p.west * w(i - 1, j) + p.east * w(i + 1, j) + p.south * w(i, j - 1) +
                       p.north * w(i, j + 1);
            v -= prev[alpha](i, j) / mesh.tau();
            v += problem.comp[alpha].f(mesh.x(i), mesh.y(j), t, u[0](i, j), u[1](i, j));
            out(i, j) = v;
        }
    }
    return out;
}

NewtonResult newton_solve_level(const ProblemSpec& problem, const Mesh& mesh, const FieldPair& prev, int m,
                                const NewtonConfig& cfg, const std::optional<FieldPair>& guess) {
    if (!(cfg.tol > 0.0) || cfg.max_newton < 1) {
        raise(ErrorCode::InvalidArgument, "newton needs tol > 0 and max_newton >= 1");
    }
    const int n = 2 * static_cast<int>(mesh.interior_count());
    if (n > kMaxDenseUnknowns) {
        raise(ErrorCode::InvalidArgument, "mesh too large for the dense oracle");
    }
    NewtonResult res;
    res.solution = guess ? *guess : prev;
    for (int a = 0; a < 2; ++a) {
        const Field g = sample_boundary(problem, a, mesh, m);
        for (int i = 0; i <= mesh.nx(); ++i) {
            for (int j = 0; j <= mesh.ny(); ++j) {
                if (mesh.classify(i, j) == NodeKind::Boundary) {
                    res.solution[a](i, j) = g(i, j);
                }
            }
        }
    }
    const double t = mesh.t(m);
    std::vector<double> r = full_residual(problem, mesh, res.solution, prev, m);
    double rn = max_norm(r);
    while (rn > cfg.tol) {
        if (res.iterations >= cfg.max_newton) {
            raise(ErrorCode::Divergence, "newton stalled at residual " + std::to_string(rn) + " after " +
                                             std::to_string(res.iterations) + " steps");
        }
        DenseMatrix J(n);
        for (int a = 0; a < 2; ++a) {
            const auto& c = problem.comp[a];
            for (int i = 1; i < mesh.nx(); ++i) {
                for (int j = 1; j < mesh.ny(); ++j) {
                    const int row = unknown(mesh, a, i, j);
                    const PointOperator p = point_operator(problem, mesh, a, i, j, m);
                    const double u1 = res.solution[0](i, j), u2 = res.solution[1](i, j);
                    const double x = mesh.x(i), y = mesh.y(j);
                    J(row, row) = p.center + c.df_own(x, y, t, u1, u2);
                    J(row, unknown(mesh, 1 - a, i, j)) = c.df_cross(x, y, t, u1, u2);
                    if (i > 1) J(row, unknown(mesh, a, i - 1, j)) = p.west;
                    if (i < mesh.nx() - 1) J(row, unknown(mesh, a, i + 1, j)) = p.east;
                    if (j > 1) J(row, unknown(mesh, a, i, j - 1)) = p.south;
                    if (j < mesh.ny() - 1) J(row, unknown(mesh, a, i, j + 1)) = p.north;
                }
            }
        }
        std::vector<double> neg(r.size());
        for (std::size_t k = 0; k < r.size(); ++k) {
            neg[k] = -r[k];
        }
        const std::vector<double> dx = dense_solve(std::move(J), neg);
        auto trial = [&](double omega) {
            FieldPair next = res.solution;
            for (int a = 0; a < 2; ++a) {
                for (int i = 1; i < mesh.nx(); ++i) {
                    for (int j = 1; j < mesh.ny(); ++j) {
                        next[a](i, j) += omega * dx[static_cast<std::size_t>(unknown(mesh, a, i, j))];
                    }
                }
            }
            return next;
        };
        FieldPair next = trial(cfg.damping);
        std::vector<double> rnext = full_residual(problem, mesh, next, prev, m);
        if (max_norm(rnext) > rn) {
            next = trial(cfg.fallback_damping);
            rnext = full_residual(problem, mesh, next, prev, m);
        }
        res.solution = std::move(next);
        r = std::move(rnext);
        rn = max_norm(r);
        ++res.iterations;
        if (!std::isfinite(rn)) {
            raise(ErrorCode::Divergence, "newton produced a non-finite residual");
        }
    }
    res.residual = rn;
    const auto box = problem.sector(t);
    for (int a = 0; a < 2; ++a) {
        for (double v : res.solution[a].values()) {
            if (v < box[a].lo - 1e-10 || v > box[a].hi + 1e-10) {
                res.in_sector = false;
            }
        }
    }
    return res;
}

std::vector<FieldPair> newton_march(const ProblemSpec& problem, const Mesh& mesh, const NewtonConfig& cfg) {
    std::vector<FieldPair> out;
    out.push_back({sample_initial(problem, 0, mesh), sample_initial(problem, 1, mesh)});
    for (int m = 1; m <= mesh.nt(); ++m) {
        out.push_back(newton_solve_level(problem, mesh, out.back(), m, cfg).solution);
    }
    return out;
}

Manufactured make_manufactured(const ManufacturedSpec& spec) {
    using std::numbers::pi;
    Manufactured out;
    auto exact = [spec](int a, double x, double y, double t) {
        return spec.amp[a] * std::exp(-t) * std::sin(pi * x) * std::sin(pi * y);
    };
    // s_a = -(u_t - eps Lap u + v . grad u) - (u_a - u_b/2) evaluated on the exact solution
    auto source = [spec, exact](int a, double x, double y, double t) {
        const double ua = exact(a, x, y, t);
        const double ub = exact(1 - a, x, y, t);
        const double e = spec.amp[a] * std::exp(-t);
        const double ux = e * pi * std::cos(pi * x) * std::sin(pi * y);
        const double uy = e * pi * std::sin(pi * x) * std::cos(pi * y);
        const double ut = -ua;
        const double lap = -2.0 * pi * pi * ua;
        return -(ut - spec.eps[a] * lap + spec.vx[a] * ux + spec.vy[a] * uy) - (ua - 0.5 * ub);
    };
    double smax = 0.0;
    double umax = 0.0;
    constexpr int samples = 200;
    for (int a = 0; a < 2; ++a) {
        for (int i = 0; i <= samples; ++i) {
            for (int j = 0; j <= samples; ++j) {
                const double x = static_cast<double>(i) / samples;
                const double y = static_cast<double>(j) / samples;
                smax = std::max(smax, std::abs(source(a, x, y, 0.0)));
                umax = std::max(umax, std::abs(exact(a, x, y, 0.0)));
            }
        }
    }
    // the source and solution peak at t = 0; the margin covers the sampling gap
    const double K = 1.1 * std::max(2.0 * smax, umax) + 1e-3;
    out.K = K;
    out.exact = exact;

    ProblemSpec& p = out.problem;
    p.name = "manufactured";
    p.cls = QuasiMonotone::Nondecreasing;
    for (int a = 0; a < 2; ++a) {
        auto& c = p.comp[a];
        c.eps = spec.eps[a];
        c.vel1 = constant_fn(spec.vx[a]);
        c.vel2 = constant_fn(spec.vy[a]);
        c.f = [a, source](double x, double y, double t, double u1, double u2) {
            const double ua = a == 0 ? u1 : u2;
            const double ub = a == 0 ? u2 : u1;
            return ua - 0.5 * ub + source(a, x, y, t);
        };
        c.df_own = constant_reaction(1.0);
        c.df_cross = constant_reaction(-0.5);
        c.g = [a, exact](double x, double y, double t) { return exact(a, x, y, t); };
        c.psi = [a, exact](double x, double y) { return exact(a, x, y, 0.0); };
        c.c_bound = constant_fn(1.0);
        c.c_lower = constant_fn(1.0);
        c.q_bound = constant_fn(0.5);
    }
    p.sector = [K](double) { return std::array<Interval, 2>{Interval{-K, K}, Interval{-K, K}}; };
    out.bracket.lower = {ComponentRule{RuleKind::ConstantLower, -K}, ComponentRule{RuleKind::ConstantLower, -K}};
    out.bracket.upper = {ComponentRule{RuleKind::ConstantUpper, K}, ComponentRule{RuleKind::ConstantUpper, K}};
    return out;
}

double convergence_order(std::span<const double> h, std::span<const double> err) {
    if (h.size() != err.size()) {
        raise(ErrorCode::DimensionMismatch, "h and error lists differ in length");
    }
    if (h.size() < 3) {
        raise(ErrorCode::InvalidArgument, "convergence order needs at least 3 mesh levels");
    }
    const double n = static_cast<double>(h.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < h.size(); ++k) {
        if (!(h[k] > 0.0) || !(err[k] > 0.0)) {
            raise(ErrorCode::InvalidArgument, "convergence order needs positive h and errors");
        }
        const double x = std::log(h[k]);
        const double y = std::log(err[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceResult run_convergence(const ConvergenceConfig& cfg) {
    if (cfg.h.size() < 3) {
        raise(ErrorCode::InvalidArgument, "convergence study needs at least 3 mesh levels");
    }
    const Manufactured mf = make_manufactured(cfg.manufactured);
    ConvergenceResult out;
    for (double h : cfg.h) {
        const int n = static_cast<int>(std::lround(1.0 / h));
        const double tau_target = cfg.scaling == TauScaling::Linear ? cfg.tau_factor * h : cfg.tau_factor * h * h;
        const int nt = std::max(1, static_cast<int>(std::lround(cfg.T / tau_target)));
        const Mesh mesh(MeshSpec{1.0, 1.0, cfg.T, n, n, nt});
        const Bracket bracket = build_bracket(mf.problem, mesh, mf.bracket);
        const MarchResult run = march(mf.problem, mesh, Sweep::GaussSeidel, cfg.policy, bracket);
        const FieldPair& last = run.solution.back();
        double err = 0.0;
        for (int a = 0; a < 2; ++a) {
            for (int i = 0; i <= mesh.nx(); ++i) {
                for (int j = 0; j <= mesh.ny(); ++j) {
                    err = std::max(err, std::abs(last[a](i, j) - mf.exact(a, mesh.x(i), mesh.y(j), cfg.T)));
                }
            }
        }
        int iters = 0;
        for (const auto& l : run.report.levels) {
            iters += l.iterations;
        }
        out.h.push_back(1.0 / n);
        out.tau.push_back(mesh.tau());
        out.error.push_back(err);
        out.iterations.push_back(iters);
    }
    const double emax = *std::max_element(out.error.begin(), out.error.end());
    // a solution the scheme reproduces exactly leaves only the stopping error, bounded by T delta
    if (emax <= 10.0 * cfg.T * cfg.policy.delta + 1e-14) {
        out.skipped = true;
        return out;
    }
    out.slope = convergence_order(out.h, out.error);
    return out;
}

}  // namespace monoblock
