#include "monoblock/discretization.hpp"

#include "monoblock/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace monoblock {

StencilCoeffs stencil(const ProblemSpec& problem, const Mesh& mesh, int alpha, int i, int j, int m,
                      const AssemblyOptions& opt) {
    const auto& c = problem.comp[alpha];
    const double x = mesh.x(i);
    const double y = mesh.y(j);
    const double t = mesh.t(m);
    const double v1 = c.vel1(x, y, t);
    const double v2 = c.vel2(x, y, t);
    if (!std::isfinite(v1) || !std::isfinite(v2) || !std::isfinite(c.eps)) {
        raise(ErrorCode::NonFinite, "velocity or diffusion not finite at (" + std::to_string(i) + "," +
                                        std::to_string(j) + ")");
    }
    const double hx = mesh.hx();
    const double hy = mesh.hy();
    StencilCoeffs s;
    s.l = s.r = c.eps / (hx * hx);
    s.b = s.t = c.eps / (hy * hy);
    if (!opt.corrupt_upwind) {
        (v1 >= 0.0 ? s.l : s.r) += std::abs(v1) / hx;
        (v2 >= 0.0 ? s.b : s.t) += std::abs(v2) / hy;
    } else {
        (v1 >= 0.0 ? s.r : s.l) -= std::abs(v1) / hx;
        (v2 >= 0.0 ? s.t : s.b) -= std::abs(v2) / hy;
    }
    s.d = 1.0 / mesh.tau() + s.l + s.r + s.b + s.t;
    return s;
}

LineBlockSystem assemble_line(const ProblemSpec& problem, const Mesh& mesh, int alpha, int i, int m,
                              const AssemblyOptions& opt) {
    if (alpha < 0 || alpha > 1) {
        raise(ErrorCode::OutOfRange, "component index must be 0 or 1");
    }
    if (i < 1 || i > mesh.nx() - 1 || m < 1 || m > mesh.nt()) {
        raise(ErrorCode::OutOfRange, "line (" + std::to_string(i) + ", m=" + std::to_string(m) + ") not assemblable");
    }
    const auto n = static_cast<std::size_t>(mesh.line_size());
    LineBlockSystem sys;
    sys.alpha = alpha;
    sys.i = i;
    sys.m = m;
    sys.A.diag.resize(n);
    sys.A.sub.resize(n - 1);
    sys.A.sup.resize(n - 1);
    sys.left.resize(n);
    sys.right.resize(n);
    sys.bottom.resize(n);
    sys.top.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const StencilCoeffs s = stencil(problem, mesh, alpha, i, static_cast<int>(k) + 1, m, opt);
        sys.A.diag[k] = s.d;
        sys.left[k] = s.l;
        sys.right[k] = s.r;
        sys.bottom[k] = s.b;
        sys.top[k] = s.t;
        if (k > 0) {
            sys.A.sub[k - 1] = -s.b;
        }
        if (k + 1 < n) {
            sys.A.sup[k] = -s.t;
        }
    }
    return sys;
}

LevelOperator assemble_level(const ProblemSpec& problem, const Mesh& mesh, int alpha, int m,
                             const AssemblyOptions& opt) {
    LevelOperator op;
    op.alpha = alpha;
    op.m = m;
    op.lines.reserve(static_cast<std::size_t>(mesh.nx() - 1));
    for (int i = 1; i < mesh.nx(); ++i) {
        op.lines.push_back(assemble_line(problem, mesh, alpha, i, m, opt));
    }
    return op;
}

std::vector<double> boundary_vector(const LineBlockSystem& sys, const Mesh& mesh, const Field& self) {
    const int ny = mesh.ny();
    const auto n = static_cast<std::size_t>(ny - 1);
    std::vector<double> g(n, 0.0);
    g[0] -= sys.bottom[0] * self(sys.i, 0);
    g[n - 1] -= sys.top[n - 1] * self(sys.i, ny);
    if (sys.i == 1) {
        for (std::size_t k = 0; k < n; ++k) {
            g[k] -= sys.left[k] * self(0, static_cast<int>(k) + 1);
        }
    }
    if (sys.i == mesh.nx() - 1) {
        for (std::size_t k = 0; k < n; ++k) {
            g[k] -= sys.right[k] * self(mesh.nx(), static_cast<int>(k) + 1);
        }
    }
    return g;
}

void residual_line(const ProblemSpec& problem, const Mesh& mesh, const LineBlockSystem& sys, const Field& self,
                   const Field& prev, const Field& other, std::span<double> out) {
    const auto n = static_cast<std::size_t>(mesh.line_size());
    if (out.size() != n || self.nx() != mesh.nx() || self.ny() != mesh.ny() || !self.same_shape(prev) ||
        !self.same_shape(other)) {
        raise(ErrorCode::DimensionMismatch, "residual inputs do not match the mesh");
    }
    const int i = sys.i;
    const int nx = mesh.nx();
    const double inv_tau = 1.0 / mesh.tau();
    const double x = mesh.x(i);
    const double t = mesh.t(sys.m);
    sys.A.apply(self.interior_line(i), out);
    const auto gstar = boundary_vector(sys, mesh, self);
    for (std::size_t k = 0; k < n; ++k) {
        const int j = static_cast<int>(k) + 1;
        double v = out[k];
        if (i > 1) {
            v -= sys.left[k] * self(i - 1, j);
        }
        if (i < nx - 1) {
            v -= sys.right[k] * self(i + 1, j);
        }
        v += reaction_value(problem, sys.alpha, x, mesh.y(j), t, self(i, j), other(i, j));
        v -= inv_tau * prev(i, j);
        v += gstar[k];
        out[k] = v;
    }
}

Field residual_field(const ProblemSpec& problem, const Mesh& mesh, const LevelOperator& op, const Field& self,
                     const Field& prev, const Field& other) {
    Field out(mesh);
    for (int i = 1; i < mesh.nx(); ++i) {
        residual_line(problem, mesh, op.line(i), self, prev, other, out.interior_line(i));
    }
    return out;
}

double max_abs(const Field& f) {
    double v = 0.0;
    for (double e : f.values()) {
        v = std::max(v, std::abs(e));
    }
    return v;
}

double residual_norm(const ProblemSpec& problem, const Mesh& mesh, const FieldPair& u, const FieldPair& prev, int m) {
    double norm = 0.0;
    for (int a = 0; a < 2; ++a) {
        const LevelOperator op = assemble_level(problem, mesh, a, m);
        norm = std::max(norm, max_abs(residual_field(problem, mesh, op, u[a], prev[a], u[1 - a])));
    }
    return norm;
}

}  // namespace monoblock
