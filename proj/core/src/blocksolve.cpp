#include "monoblock/blocksolve.hpp"

#include "monoblock/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace monoblock {

namespace {

void check_shape(const TriDiag& sys) {
    const std::size_t n = sys.diag.size();
    if (n == 0 || sys.sub.size() + 1 != n || sys.sup.size() + 1 != n) {
        raise(ErrorCode::DimensionMismatch, "tridiagonal system has inconsistent diagonals");
    }
}

double row_margin(const TriDiag& sys, std::size_t k) {
    const std::size_t n = sys.diag.size();
    double off = 0.0;
    if (k > 0) {
        off += std::abs(sys.sub[k - 1]);
    }
    if (k + 1 < n) {
        off += std::abs(sys.sup[k]);
    }
    return sys.diag[k] - off;
}

}  // namespace

TriDiag TriDiag::shifted(double s) const {
    TriDiag out = *this;
    for (double& d : out.diag) {
        d += s;
    }
    return out;
}

void TriDiag::apply(std::span<const double> x, std::span<double> y) const {
    const std::size_t n = diag.size();
    if (x.size() != n || y.size() != n) {
        raise(ErrorCode::DimensionMismatch, "tridiagonal apply size mismatch");
    }
    for (std::size_t k = 0; k < n; ++k) {
        double v = diag[k] * x[k];
        if (k > 0) {
            v += sub[k - 1] * x[k - 1];
        }
        if (k + 1 < n) {
            v += sup[k] * x[k + 1];
        }
        y[k] = v;
    }
}

void TridiagWorkspace::solve(const TriDiag& sys, std::span<const double> rhs, std::span<double> x) {
    check_shape(sys);
    const std::size_t n = sys.diag.size();
    if (rhs.size() != n || x.size() != n) {
        raise(ErrorCode::DimensionMismatch, "tridiagonal rhs size mismatch");
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (!(row_margin(sys, k) > 0.0)) {
            raise(ErrorCode::DominanceViolation, "row " + std::to_string(k) + " is not strictly dominant");
        }
    }
    c_.resize(n);
    d_.resize(n);
    double piv = sys.diag[0];
    c_[0] = n > 1 ? sys.sup[0] / piv : 0.0;
    d_[0] = rhs[0] / piv;
    for (std::size_t k = 1; k < n; ++k) {
        piv = sys.diag[k] - sys.sub[k - 1] * c_[k - 1];
        c_[k] = k + 1 < n ? sys.sup[k] / piv : 0.0;
        d_[k] = (rhs[k] - sys.sub[k - 1] * d_[k - 1]) / piv;
    }
    x[n - 1] = d_[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) {
        x[k] = d_[k] - c_[k] * x[k + 1];
    }
}

void solve_tridiag(const TriDiag& sys, std::span<const double> rhs, std::span<double> x) {
    TridiagWorkspace ws;
    ws.solve(sys, rhs, x);
}

std::vector<double> solve_tridiag(const TriDiag& sys, std::span<const double> rhs) {
    std::vector<double> x(rhs.size());
    solve_tridiag(sys, rhs, x);
    return x;
}

bool is_m_matrix(const TriDiag& sys) {
    check_shape(sys);
    for (std::size_t k = 0; k < sys.diag.size(); ++k) {
        if (!(sys.diag[k] > 0.0) || !(row_margin(sys, k) > 0.0)) {
            return false;
        }
    }
    for (double v : sys.sub) {
        if (v > 0.0) {
            return false;
        }
    }
    for (double v : sys.sup) {
        if (v > 0.0) {
            return false;
        }
    }
    return true;
}

double dominance_margin(const TriDiag& sys) {
    check_shape(sys);
    double m = INFINITY;
    for (std::size_t k = 0; k < sys.diag.size(); ++k) {
        m = std::min(m, row_margin(sys, k));
    }
    return m;
}

bool inverse_positivity_check(const TriDiag& sys, int trials, std::uint64_t seed) {
    check_shape(sys);
    const std::size_t n = sys.diag.size();
    // Gaussian elimination with partial pivoting on a dense copy, so an
    // indefinite or corrupted matrix still yields an answer
    std::vector<double> a(n * n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        a[k * n + k] = sys.diag[k];
        if (k > 0) {
            a[k * n + k - 1] = sys.sub[k - 1];
        }
        if (k + 1 < n) {
            a[k * n + k + 1] = sys.sup[k];
        }
    }
    std::vector<std::size_t> perm(n);
    for (std::size_t k = 0; k < n; ++k) {
        perm[k] = k;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r * n + col]) > std::abs(a[best * n + col])) {
                best = r;
            }
        }
        if (a[best * n + col] == 0.0) {
            return false;
        }
        if (best != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a[col * n + c], a[best * n + c]);
            }
            std::swap(perm[col], perm[best]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            a[r * n + col] = f;
            for (std::size_t c = col + 1; c < n; ++c) {
                a[r * n + c] -= f * a[col * n + c];
            }
        }
    }
    auto solve = [&](const std::vector<double>& b) {
        std::vector<double> x(n);
        for (std::size_t r = 0; r < n; ++r) {
            double v = b[perm[r]];
            for (std::size_t c = 0; c < r; ++c) {
                v -= a[r * n + c] * x[c];
            }
            x[r] = v;
        }
        for (std::size_t r = n; r-- > 0;) {
            double v = x[r];
            for (std::size_t c = r + 1; c < n; ++c) {
                v -= a[r * n + c] * x[c];
            }
            x[r] = v / a[r * n + r];
        }
        return x;
    };
    constexpr double slack = -1e-13;
    std::vector<double> b(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::fill(b.begin(), b.end(), 0.0);
        b[k] = 1.0;
        for (double v : solve(b)) {
            if (!(v >= slack)) {
                return false;
            }
        }
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int t = 0; t < trials; ++t) {
        for (double& v : b) {
            v = dist(rng);
        }
        for (double v : solve(b)) {
            if (!(v >= slack)) {
                return false;
            }
        }
    }
    return true;
}

BandedLU::BandedLU(int n, int bandwidth)
    : n_(n), bw_(bandwidth), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(2 * bandwidth + 1), 0.0) {
    if (n <= 0 || bandwidth < 0) {
        raise(ErrorCode::InvalidArgument, "banded matrix needs n > 0 and bandwidth >= 0");
    }
}

std::size_t BandedLU::offset(int row, int col) const {
    if (row < 0 || row >= n_ || col < 0 || col >= n_ || std::abs(row - col) > bw_) {
        raise(ErrorCode::OutOfRange, "banded index outside band");
    }
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(2 * bw_ + 1) +
           static_cast<std::size_t>(col - row + bw_);
}

double& BandedLU::at(int row, int col) {
    return a_[offset(row, col)];
}

double BandedLU::at(int row, int col) const {
    return a_[offset(row, col)];
}

void BandedLU::factor() {
    for (int k = 0; k < n_; ++k) {
        const double piv = at(k, k);
        if (piv == 0.0 || !std::isfinite(piv)) {
            raise(ErrorCode::Singular, "zero pivot in banded factorization at row " + std::to_string(k));
        }
        const int last = std::min(n_ - 1, k + bw_);
        for (int r = k + 1; r <= last; ++r) {
            const double f = at(r, k) / piv;
            at(r, k) = f;
            if (f == 0.0) {
                continue;
            }
            for (int c = k + 1; c <= last; ++c) {
                at(r, c) -= f * at(k, c);
            }
        }
    }
    factored_ = true;
}

void BandedLU::solve(std::span<double> b) const {
    if (!factored_) {
        raise(ErrorCode::InvalidArgument, "banded solve before factor");
    }
    if (b.size() != static_cast<std::size_t>(n_)) {
        raise(ErrorCode::DimensionMismatch, "banded rhs size mismatch");
    }
    for (int r = 0; r < n_; ++r) {
        double v = b[static_cast<std::size_t>(r)];
        for (int c = std::max(0, r - bw_); c < r; ++c) {
            v -= at(r, c) * b[static_cast<std::size_t>(c)];
        }
        b[static_cast<std::size_t>(r)] = v;
    }
    for (int r = n_ - 1; r >= 0; --r) {
        double v = b[static_cast<std::size_t>(r)];
        for (int c = r + 1; c <= std::min(n_ - 1, r + bw_); ++c) {
            v -= at(r, c) * b[static_cast<std::size_t>(c)];
        }
        b[static_cast<std::size_t>(r)] = v / at(r, r);
    }
}

}  // namespace monoblock
