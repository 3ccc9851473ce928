#include "podsolid/grid.hpp"

#include <cmath>
#include <string>

#include "podsolid/errors.hpp"

namespace podsolid {

Grid1D::Grid1D(std::size_t n_nodes, double x_min, double x_max)
    : n_nodes_(n_nodes), x_min_(x_min), x_max_(x_max) {
    if (n_nodes < 2) {
        throw ArgumentError("Grid1D needs at least 2 nodes, got " + std::to_string(n_nodes));
    }
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
        throw ArgumentError("Grid1D needs finite x_min < x_max");
    }
}

std::vector<double> Grid1D::coordinates() const {
    std::vector<double> xs(n_nodes_);
    for (std::size_t i = 0; i < n_nodes_; ++i) xs[i] = x(i);
    return xs;
}

StaggeredGrid2D::StaggeredGrid2D(std::size_t nx, std::size_t ny, double lx, double ly)
    : nx_(nx), ny_(ny), lx_(lx), ly_(ly) {
    if (nx < 2 || ny < 2) {
        throw ArgumentError("StaggeredGrid2D needs at least 2x2 cells");
    }
    if (!std::isfinite(lx) || !std::isfinite(ly) || lx <= 0.0 || ly <= 0.0) {
        throw ArgumentError("StaggeredGrid2D extents must be positive and finite");
    }
}

}  // namespace podsolid
