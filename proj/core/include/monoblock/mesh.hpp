#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace monoblock {

/// Extents and resolution of the space-time box [0,l1]x[0,l2]x[0,T].
///
/// nx, ny count intervals, so the x axis carries nx+1 nodes.
struct MeshSpec {
    double l1 = 1.0;
    double l2 = 1.0;
    double T = 1.0;
    int nx = 9;
    int ny = 9;
    int nt = 5;
};

enum class NodeKind { Interior, Boundary };

/// Uniform rectangular mesh. Immutable after construction.
class Mesh {
public:
    explicit Mesh(const MeshSpec& spec);

    const MeshSpec& spec() const noexcept { return spec_; }
    int nx() const noexcept { return spec_.nx; }
    int ny() const noexcept { return spec_.ny; }
    int nt() const noexcept { return spec_.nt; }
    double hx() const noexcept { return hx_; }
    double hy() const noexcept { return hy_; }
    double tau() const noexcept { return tau_; }

    double x(int i) const { return x_[static_cast<std::size_t>(i)]; }
    double y(int j) const { return y_[static_cast<std::size_t>(j)]; }
    double t(int m) const { return t_[static_cast<std::size_t>(m)]; }

    std::span<const double> xs() const noexcept { return x_; }
    std::span<const double> ys() const noexcept { return y_; }
    std::span<const double> ts() const noexcept { return t_; }

    /// Throws OutOfRange for indices outside the node range
    NodeKind classify(int i, int j) const;

    std::size_t node_count() const noexcept {
        return static_cast<std::size_t>(spec_.nx + 1) * static_cast<std::size_t>(spec_.ny + 1);
    }
    std::size_t interior_count() const noexcept {
        return static_cast<std::size_t>(spec_.nx - 1) * static_cast<std::size_t>(spec_.ny - 1);
    }
    /// Interior unknowns on one line (fixed i)
    int line_size() const noexcept { return spec_.ny - 1; }

private:
    MeshSpec spec_;
    double hx_, hy_, tau_;
    std::vector<double> x_, y_, t_;
};

/// Nodal values of one component at one time level.
///
/// Storage is line-contiguous: node (i,j) lives at i*(ny+1)+j, so the
/// interior of line i is a contiguous run starting at j=1.
class Field {
public:
    Field() = default;
    Field(int nx, int ny, double value = 0.0);
    explicit Field(const Mesh& mesh, double value = 0.0) : Field(mesh.nx(), mesh.ny(), value) {}

    int nx() const noexcept { return nx_; }
    int ny() const noexcept { return ny_; }
    std::size_t size() const noexcept { return data_.size(); }

    double& operator()(int i, int j) { return data_[index(i, j)]; }
    double operator()(int i, int j) const { return data_[index(i, j)]; }

    /// Full column at fixed i, j = 0..ny
    std::span<double> line(int i) { return {data_.data() + index(i, 0), static_cast<std::size_t>(ny_ + 1)}; }
    std::span<const double> line(int i) const {
        return {data_.data() + index(i, 0), static_cast<std::size_t>(ny_ + 1)};
    }
    /// Interior part of a column, j = 1..ny-1
    std::span<double> interior_line(int i) {
        return {data_.data() + index(i, 1), static_cast<std::size_t>(ny_ - 1)};
    }
    std::span<const double> interior_line(int i) const {
        return {data_.data() + index(i, 1), static_cast<std::size_t>(ny_ - 1)};
    }

    std::span<double> values() noexcept { return data_; }
    std::span<const double> values() const noexcept { return data_; }

    bool same_shape(const Field& other) const noexcept { return nx_ == other.nx_ && ny_ == other.ny_; }
    bool all_finite() const;

private:
    std::size_t index(int i, int j) const noexcept {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(ny_ + 1) + static_cast<std::size_t>(j);
    }

    int nx_ = 0;
    int ny_ = 0;
    std::vector<double> data_;
};

/// Both components at one time level
using FieldPair = std::array<Field, 2>;

FieldPair make_pair(const Mesh& mesh, double v1 = 0.0, double v2 = 0.0);

/// max |a-b| over all nodes
double max_abs_diff(const Field& a, const Field& b);
double max_abs_diff(const FieldPair& a, const FieldPair& b);
/// max |a-b| over interior nodes only
double max_abs_diff_interior(const Field& a, const Field& b);

}  // namespace monoblock
