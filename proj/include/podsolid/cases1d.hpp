#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "podsolid/grid.hpp"
#include "podsolid/snapshot.hpp"

namespace podsolid {

/// Indicator of [left, right] scaled by `height`. The support must stay
/// strictly inside the domain so the homogeneous Dirichlet condition holds.
struct RectangleIC {
    double left = 0.25;
    double right = 0.75;
    double height = 1.0;
};

/// Nodal values; both end values must be zero.
struct SampledIC {
    std::vector<double> values;
};

using InitialCondition1D = std::variant<RectangleIC, SampledIC>;

enum class TimeScheme { explicit_euler, implicit_euler };

struct Heat1DConfig {
    double alpha = 1.0;
    double dt = 1e-3;
    Grid1D grid{256, 0.0, 1.0};
    std::size_t n_snaps = 128;
    InitialCondition1D ic = RectangleIC{};
    TimeScheme scheme = TimeScheme::implicit_euler;
};

/// Samples the initial condition on the grid, boundary nodes included.
std::vector<double> sample_initial_condition(const Heat1DConfig& cfg);

/// Largest stable forward-Euler step, spacing^2 / (2 alpha).
double explicit_stability_limit(const Heat1DConfig& cfg);

/**
 * u_t = alpha u_xx on the grid with u = 0 at both ends, three-point stencil in
 * space. Column j of the result is the state after j steps (column 0 is the
 * initial condition), labelled with its time j * dt.
 *
 * Throws ArgumentError for an invalid config, StabilityError when the explicit
 * scheme is requested with dt above the stability limit.
 */
SnapshotMatrix solve_heat1d(const Heat1DConfig& cfg);

/// Steepness of the "steep" and "stretched" sigmoid cases.
inline constexpr double kSteepSigmoid = 100.0;
inline constexpr double kStretchedSigmoid = 15.0;

struct JumpProfile {};
struct SigmoidProfile {
    double steepness = kSteepSigmoid;
};
using AdvectedProfile = std::variant<JumpProfile, SigmoidProfile>;

/// Sample times j / (n_snaps - 1), j = 0..n_snaps-1.
std::vector<double> unit_time_grid(std::size_t n_snaps);

/// entry(i, j) = 1 if x_i <= t_j else 0.
SnapshotMatrix gen_advected_jump(const Grid1D& grid, std::size_t n_snaps);

/// entry(i, j) = 1 / (1 + exp(-k (t_j - x_i))).
SnapshotMatrix gen_sigmoid(const Grid1D& grid, std::size_t n_snaps, double steepness);

SnapshotMatrix gen_advected(const Grid1D& grid, std::size_t n_snaps, const AdvectedProfile& profile);

}  // namespace podsolid
