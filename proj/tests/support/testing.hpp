#pragma once

#include "monoblock/monoblock.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace mbt {

using namespace monoblock;

/// Small deterministic generator for property tests
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }

    std::vector<double> vector(std::size_t n, double lo, double hi) {
        std::vector<double> v(n);
        for (auto& x : v) {
            x = uniform(lo, hi);
        }
        return v;
    }

    /// Strictly dominant tridiagonal M-matrix with margin at least `margin`
    TriDiag m_matrix(std::size_t n, double margin = 0.1) {
        TriDiag t;
        t.sub = vector(n > 0 ? n - 1 : 0, -2.0, 0.0);
        t.sup = vector(n > 0 ? n - 1 : 0, -2.0, 0.0);
        t.diag.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            double off = 0.0;
            if (k > 0) off += -t.sub[k - 1];
            if (k + 1 < n) off += -t.sup[k];
            t.diag[k] = off + margin + uniform(0.0, 1.0);
        }
        return t;
    }

    /// Mesh spec with small random interval counts and extents
    MeshSpec mesh(int max_n = 8) {
        MeshSpec s;
        s.l1 = uniform(0.5, 2.0);
        s.l2 = uniform(0.5, 2.0);
        s.T = uniform(0.1, 1.0);
        s.nx = integer(2, max_n);
        s.ny = integer(2, max_n);
        s.nt = integer(1, 4);
        return s;
    }

    Field field(const Mesh& mesh, double lo, double hi) {
        Field f(mesh);
        for (auto& v : f.values()) {
            v = uniform(lo, hi);
        }
        return f;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// The four models with ordering guarantees
inline std::vector<std::string> bundled_models() {
    return {"gas-liquid", "volterra-lotka", "belousov-zhabotinskii", "enzyme-substrate"};
}

inline MeshSpec mesh_spec(int nx, int ny, int nt, double T = 1.0) {
    MeshSpec s;
    s.nx = nx;
    s.ny = ny;
    s.nt = nt;
    s.T = T;
    return s;
}

/// Linear problem f_a = c u_a - q u_b + s_a(x,y,t) with constant data
inline ProblemSpec linear_problem(double c, double q, double g, double eps = 1.0, double vx = 0.0, double vy = 0.0) {
    ProblemSpec p;
    p.name = "linear-test";
    p.cls = QuasiMonotone::Nondecreasing;
    for (int a = 0; a < 2; ++a) {
        auto& d = p.comp[a];
        d.eps = eps;
        d.vel1 = constant_fn(vx);
        d.vel2 = constant_fn(vy);
        d.df_own = constant_reaction(c);
        d.df_cross = constant_reaction(-q);
        d.g = constant_fn(g);
        d.psi = constant_initial(g);
        d.c_bound = constant_fn(c);
        d.c_lower = constant_fn(c);
        d.q_bound = constant_fn(q);
    }
    p.comp[0].f = [=](double, double, double, double u1, double u2) { return c * u1 - q * u2; };
    p.comp[1].f = [=](double, double, double, double u1, double u2) { return c * u2 - q * u1; };
    p.sector = [](double) { return std::array<Interval, 2>{Interval{-10.0, 10.0}, Interval{-10.0, 10.0}}; };
    return p;
}

}  // namespace mbt
