#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace monoblock {

/// Tridiagonal matrix stored by diagonals. sub[k] couples row k+1 to k, sup[k] row k to k+1.
struct TriDiag {
    std::vector<double> sub;
    std::vector<double> diag;
    std::vector<double> sup;

    std::size_t size() const noexcept { return diag.size(); }
    /// Copy with s added to every diagonal entry
    TriDiag shifted(double s) const;
    /// y = M x
    void apply(std::span<const double> x, std::span<double> y) const;
};

/// Two-sweep elimination without pivoting. Throws DominanceViolation when a
/// row is not strictly diagonally dominant, DimensionMismatch on bad sizes.
void solve_tridiag(const TriDiag& sys, std::span<const double> rhs, std::span<double> x);
std::vector<double> solve_tridiag(const TriDiag& sys, std::span<const double> rhs);

/// Reusable scratch for repeated solves of the same size
class TridiagWorkspace {
public:
    void solve(const TriDiag& sys, std::span<const double> rhs, std::span<double> x);

private:
    std::vector<double> c_;
    std::vector<double> d_;
};

/// Positive diagonal, nonpositive off-diagonals, strictly dominant rows
bool is_m_matrix(const TriDiag& sys);

/// Smallest row margin diag - |sub| - |sup|
double dominance_margin(const TriDiag& sys);

/// Solves with random nonnegative right-hand sides and unit vectors. True iff every
/// solution is >= -1e-13 entrywise. Never throws on indefinite input.
bool inverse_positivity_check(const TriDiag& sys, int trials, std::uint64_t seed = 7);

/// Square banded matrix with equal lower and upper bandwidth, LU factored in place
/// without pivoting. Intended for diagonally dominant discrete operators.
class BandedLU {
public:
    BandedLU(int n, int bandwidth);

    int size() const noexcept { return n_; }
    int bandwidth() const noexcept { return bw_; }
    double& at(int row, int col);
    double at(int row, int col) const;

    /// Throws Singular on a zero pivot
    void factor();
    void solve(std::span<double> rhs_inout) const;

private:
    std::size_t offset(int row, int col) const;

    int n_;
    int bw_;
    bool factored_ = false;
    std::vector<double> a_;
};

}  // namespace monoblock
