#include "monoblock/mesh.hpp"

#include "monoblock/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace monoblock {

namespace {

std::vector<double> axis(int n, double length) {
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    const double h = length / n;
    for (int k = 0; k <= n; ++k) {
        v[static_cast<std::size_t>(k)] = k * h;
    }
    // pin the far end so it is exact rather than n*h
    v.back() = length;
    return v;
}

}  // namespace

Mesh::Mesh(const MeshSpec& spec) : spec_(spec) {
    if (!(spec.l1 > 0.0) || !(spec.l2 > 0.0) || !(spec.T > 0.0) || !std::isfinite(spec.l1) ||
        !std::isfinite(spec.l2) || !std::isfinite(spec.T)) {
        raise(ErrorCode::InvalidArgument, "mesh extents must be positive and finite");
    }
    if (spec.nx < 2 || spec.ny < 2) {
        raise(ErrorCode::InvalidArgument,
              "mesh needs nx, ny >= 2, got " + std::to_string(spec.nx) + "x" + std::to_string(spec.ny));
    }
    if (spec.nt < 1) {
        raise(ErrorCode::InvalidArgument, "mesh needs nt >= 1");
    }
    hx_ = spec.l1 / spec.nx;
    hy_ = spec.l2 / spec.ny;
    tau_ = spec.T / spec.nt;
    x_ = axis(spec.nx, spec.l1);
    y_ = axis(spec.ny, spec.l2);
    t_ = axis(spec.nt, spec.T);
}

NodeKind Mesh::classify(int i, int j) const {
    if (i < 0 || i > spec_.nx || j < 0 || j > spec_.ny) {
        raise(ErrorCode::OutOfRange, "node (" + std::to_string(i) + "," + std::to_string(j) + ") outside mesh");
    }
    if (i == 0 || i == spec_.nx || j == 0 || j == spec_.ny) {
        return NodeKind::Boundary;
    }
    return NodeKind::Interior;
}

Field::Field(int nx, int ny, double value)
    : nx_(nx), ny_(ny), data_(static_cast<std::size_t>(nx + 1) * static_cast<std::size_t>(ny + 1), value) {}

bool Field::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

FieldPair make_pair(const Mesh& mesh, double v1, double v2) {
    return {Field(mesh, v1), Field(mesh, v2)};
}

double max_abs_diff(const Field& a, const Field& b) {
    if (!a.same_shape(b)) {
        raise(ErrorCode::DimensionMismatch, "field shapes differ");
    }
    double d = 0.0;
    auto va = a.values();
    auto vb = b.values();
    for (std::size_t k = 0; k < va.size(); ++k) {
        d = std::max(d, std::abs(va[k] - vb[k]));
    }
    return d;
}

double max_abs_diff(const FieldPair& a, const FieldPair& b) {
    return std::max(max_abs_diff(a[0], b[0]), max_abs_diff(a[1], b[1]));
}

double max_abs_diff_interior(const Field& a, const Field& b) {
    if (!a.same_shape(b)) {
        raise(ErrorCode::DimensionMismatch, "field shapes differ");
    }
    double d = 0.0;
    for (int i = 1; i < a.nx(); ++i) {
        for (int j = 1; j < a.ny(); ++j) {
            d = std::max(d, std::abs(a(i, j) - b(i, j)));
        }
    }
    return d;
}

}  // namespace monoblock
