#include "testing.hpp"

#include <gtest/gtest.h>

using namespace monoblock;
using mbt::Gen;

namespace {

DenseMatrix to_dense(const TriDiag& t) {
    const int n = static_cast<int>(t.size());
    DenseMatrix a(n);
    for (int k = 0; k < n; ++k) {
        a(k, k) = t.diag[static_cast<std::size_t>(k)];
        if (k > 0) a(k, k - 1) = t.sub[static_cast<std::size_t>(k - 1)];
        if (k + 1 < n) a(k, k + 1) = t.sup[static_cast<std::size_t>(k)];
    }
    return a;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        d = std::max(d, std::abs(a[k] - b[k]));
    }
    return d;
}

}  // namespace

TEST(Tridiag, MatchesDenseEliminationProperty) {
    Gen gen(201);
    for (int trial = 0; trial < 60; ++trial) {
        const auto n = static_cast<std::size_t>(gen.integer(1, 40));
        const TriDiag t = gen.m_matrix(n);
        const auto rhs = gen.vector(n, -5.0, 5.0);
        const auto x = solve_tridiag(t, rhs);
        const auto ref = dense_solve(to_dense(t), rhs);
        EXPECT_LE(max_diff(x, ref), 1e-12) << "n=" << n;
    }
}

TEST(Tridiag, ResidualOfSolveIsSmallProperty) {
    Gen gen(202);
    TridiagWorkspace ws;
    for (int trial = 0; trial < 60; ++trial) {
        const auto n = static_cast<std::size_t>(gen.integer(2, 60));
        const TriDiag t = gen.m_matrix(n, 1e-3);
        const auto rhs = gen.vector(n, -1.0, 1.0);
        std::vector<double> x(n), y(n);
        ws.solve(t, rhs, x);
        t.apply(x, y);
        EXPECT_LE(max_diff(y, rhs), 1e-12);
        EXPECT_EQ(x, solve_tridiag(t, rhs));
    }
}

TEST(Tridiag, KnownSolution) {
    // [2 -1 0; -1 2 -1; 0 -1 2] x = (1, 0, 1) has x = (1, 1, 1)
    TriDiag t{{-1.0, -1.0}, {2.0, 2.0, 2.0}, {-1.0, -1.0}};
    // weakly dominant interior row is rejected, so shift to make it strict
    EXPECT_THROW(solve_tridiag(t, std::vector<double>{1.0, 0.0, 1.0}), Error);
    const TriDiag s = t.shifted(1.0);
    EXPECT_EQ(s.diag, (std::vector<double>{3.0, 3.0, 3.0}));
    const auto x = solve_tridiag(s, std::vector<double>{2.0, 1.0, 2.0});
    for (double v : x) {
        EXPECT_NEAR(v, 1.0, 1e-15);
    }
    EXPECT_DOUBLE_EQ(dominance_margin(s), 1.0);
}

TEST(Tridiag, SizeMismatchThrows) {
    TriDiag t{{-1.0}, {3.0, 3.0}, {-1.0}};
    try {
        solve_tridiag(t, std::vector<double>{1.0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
    TriDiag bad{{-1.0, -1.0}, {3.0, 3.0}, {-1.0}};
    EXPECT_THROW(solve_tridiag(bad, std::vector<double>{1.0, 1.0}), Error);
}

TEST(Tridiag, NonDominantThrows) {
    TriDiag t{{-2.0}, {1.0, 1.0}, {-2.0}};
    try {
        solve_tridiag(t, std::vector<double>{1.0, 1.0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DominanceViolation);
    }
}

TEST(MMatrix, GeneratedMatricesQualifyProperty) {
    Gen gen(203);
    for (int trial = 0; trial < 50; ++trial) {
        const TriDiag t = gen.m_matrix(static_cast<std::size_t>(gen.integer(1, 30)));
        EXPECT_TRUE(is_m_matrix(t));
        EXPECT_GT(dominance_margin(t), 0.0);
        EXPECT_TRUE(inverse_positivity_check(t, 4, static_cast<std::uint64_t>(trial)));
    }
}

TEST(MMatrix, InverseIsNonnegativeAgainstDenseProperty) {
    Gen gen(204);
    for (int trial = 0; trial < 20; ++trial) {
        const auto n = static_cast<std::size_t>(gen.integer(2, 15));
        const TriDiag t = gen.m_matrix(n);
        const DenseMatrix a = to_dense(t);
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<double> e(n, 0.0);
            e[k] = 1.0;
            for (double v : dense_solve(a, e)) {
                EXPECT_GE(v, 0.0);
            }
        }
    }
}

TEST(MMatrix, RejectsWrongSigns) {
    TriDiag pos{{0.5}, {1.0, 1.0}, {0.5}};
    EXPECT_FALSE(is_m_matrix(pos));
    // inverse of [[1, .5], [.5, 1]] has negative off-diagonal entries
    EXPECT_FALSE(inverse_positivity_check(pos, 2));
    TriDiag weak{{-1.0}, {1.0, 2.0}, {-1.0}};
    EXPECT_FALSE(is_m_matrix(weak));
    TriDiag negdiag{{}, {-1.0}, {}};
    EXPECT_FALSE(is_m_matrix(negdiag));
    EXPECT_FALSE(inverse_positivity_check(negdiag, 2));
}

TEST(BandedLU, MatchesDenseProperty) {
    Gen gen(205);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = gen.integer(3, 30);
        const int bw = gen.integer(1, std::min(5, n - 1));
        BandedLU lu(n, bw);
        DenseMatrix a(n);
        for (int r = 0; r < n; ++r) {
            double off = 0.0;
            for (int c = std::max(0, r - bw); c <= std::min(n - 1, r + bw); ++c) {
                if (c == r) continue;
                const double v = gen.uniform(-1.0, 1.0);
                lu.at(r, c) = v;
                a(r, c) = v;
                off += std::abs(v);
            }
            lu.at(r, r) = a(r, r) = off + gen.uniform(0.1, 1.0);
        }
        std::vector<double> rhs = gen.vector(static_cast<std::size_t>(n), -3.0, 3.0);
        const auto ref = dense_solve(a, rhs);
        lu.factor();
        lu.solve(rhs);
        EXPECT_LE(max_diff(rhs, ref), 1e-12);
    }
}

TEST(BandedLU, OutsideBandThrows) {
    BandedLU lu(5, 1);
    EXPECT_THROW(lu.at(0, 3), Error);
}

TEST(DenseSolve, IdentityAndHilbert) {
    DenseMatrix id(3);
    for (int k = 0; k < 3; ++k) id(k, k) = 1.0;
    const std::vector<double> b{1.5, -2.0, 3.0};
    EXPECT_EQ(dense_solve(id, b), b);

    DenseMatrix h(4);
    std::vector<double> rows(4, 0.0);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            h(r, c) = 1.0 / (r + c + 1);
            rows[static_cast<std::size_t>(r)] += h(r, c);
        }
    }
    for (double v : dense_solve(h, rows)) {
        EXPECT_NEAR(v, 1.0, 1e-8);
    }
}

TEST(DenseSolve, SingularThrows) {
    DenseMatrix a(2);
    a(0, 0) = 1.0;
    a(0, 1) = 2.0;
    a(1, 0) = 2.0;
    a(1, 1) = 4.0;
    try {
        dense_solve(a, std::vector<double>{1.0, 1.0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Singular);
    }
}
