#pragma once

#include <cstddef>
#include <vector>

namespace podsolid {

/// Uniform node-based grid on [x_min, x_max]; node 0 and node n-1 sit on the boundary.
class Grid1D {
public:
    Grid1D(std::size_t n_nodes, double x_min = 0.0, double x_max = 1.0);

    std::size_t n_nodes() const noexcept { return n_nodes_; }
    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    double spacing() const noexcept { return (x_max_ - x_min_) / static_cast<double>(n_nodes_ - 1); }
    /// Node coordinate; the last node is exactly x_max on a unit domain.
    double x(std::size_t i) const noexcept {
        return x_min_ + (x_max_ - x_min_) * static_cast<double>(i) / static_cast<double>(n_nodes_ - 1);
    }
    std::vector<double> coordinates() const;

private:
    std::size_t n_nodes_;
    double x_min_;
    double x_max_;
};

/**
 * MAC staggered grid on [0, lx] x [0, ly].
 *
 * Cell-centred quantities (pressure, temperature) are stored x-fastest with
 * index j * nx + i. Horizontal velocity lives on vertical faces,
 * (nx + 1) * ny values indexed j * (nx + 1) + i with face i at x = i * dx.
 * Vertical velocity lives on horizontal faces, nx * (ny + 1) values indexed
 * j * nx + i with face j at y = j * dy.
 */
class StaggeredGrid2D {
public:
    StaggeredGrid2D(std::size_t nx, std::size_t ny, double lx = 1.0, double ly = 1.0);

    std::size_t nx() const noexcept { return nx_; }
    std::size_t ny() const noexcept { return ny_; }
    double lx() const noexcept { return lx_; }
    double ly() const noexcept { return ly_; }
    double dx() const noexcept { return lx_ / static_cast<double>(nx_); }
    double dy() const noexcept { return ly_ / static_cast<double>(ny_); }

    std::size_t n_cells() const noexcept { return nx_ * ny_; }
    std::size_t n_u() const noexcept { return (nx_ + 1) * ny_; }
    std::size_t n_v() const noexcept { return nx_ * (ny_ + 1); }

    std::size_t cell(std::size_t i, std::size_t j) const noexcept { return j * nx_ + i; }
    std::size_t u_face(std::size_t i, std::size_t j) const noexcept { return j * (nx_ + 1) + i; }
    std::size_t v_face(std::size_t i, std::size_t j) const noexcept { return j * nx_ + i; }

    double cell_x(std::size_t i) const noexcept { return (static_cast<double>(i) + 0.5) * dx(); }
    double cell_y(std::size_t j) const noexcept { return (static_cast<double>(j) + 0.5) * dy(); }
    double face_x(std::size_t i) const noexcept { return static_cast<double>(i) * dx(); }
    double face_y(std::size_t j) const noexcept { return static_cast<double>(j) * dy(); }

    bool operator==(const StaggeredGrid2D&) const = default;

private:
    std::size_t nx_;
    std::size_t ny_;
    double lx_;
    double ly_;
};

}  // namespace podsolid
