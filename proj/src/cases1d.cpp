#include "podsolid/cases1d.hpp"

#include <cmath>

#include <fmt/format.h>

#include "podsolid/errors.hpp"

namespace podsolid {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void validate(const Heat1DConfig& cfg) {
    if (!(cfg.alpha > 0.0) || !std::isfinite(cfg.alpha)) throw ArgumentError("alpha must be positive");
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw ArgumentError("dt must be positive");
    if (cfg.n_snaps < 1) throw ArgumentError("n_snaps must be at least 1");
    if (cfg.scheme == TimeScheme::explicit_euler && cfg.dt > explicit_stability_limit(cfg)) {
        throw StabilityError(fmt::format("explicit Euler is unstable: dt = {} exceeds spacing^2/(2 alpha) = {}",
                                         cfg.dt, explicit_stability_limit(cfg)),
                             explicit_stability_limit(cfg));
    }
}

// Thomas algorithm for the interior system of (I - r * D2) u_new = u_old
// with r = alpha dt / h^2 and zero Dirichlet ends.
void implicit_step(std::vector<double>& u, double r, std::vector<double>& scratch) {
    const std::size_t n = u.size();
    if (n <= 2) return;
    const std::size_t m = n - 2;
    const double diag = 1.0 + 2.0 * r;
    const double off = -r;
    scratch.assign(m, 0.0);
    double denom = diag;
    if (denom == 0.0) throw NumericalError("singular tridiagonal system in heat solve");
    scratch[0] = off / denom;
    u[1] /= denom;
    for (std::size_t k = 1; k < m; ++k) {
        denom = diag - off * scratch[k - 1];
        if (denom == 0.0) throw NumericalError("singular tridiagonal system in heat solve");
        scratch[k] = off / denom;
        u[k + 1] = (u[k + 1] - off * u[k]) / denom;
    }
    for (std::size_t k = m - 1; k > 0; --k) u[k] -= scratch[k - 1] * u[k + 1];
    u.front() = 0.0;
    u.back() = 0.0;
}

void explicit_step(std::vector<double>& u, double r, std::vector<double>& scratch) {
    scratch = u;
    for (std::size_t i = 1; i + 1 < u.size(); ++i) {
        u[i] = scratch[i] + r * (scratch[i - 1] - 2.0 * scratch[i] + scratch[i + 1]);
    }
    u.front() = 0.0;
    u.back() = 0.0;
}

}  // namespace

double explicit_stability_limit(const Heat1DConfig& cfg) {
    const double h = cfg.grid.spacing();
    return h * h / (2.0 * cfg.alpha);
}

std::vector<double> sample_initial_condition(const Heat1DConfig& cfg) {
    const Grid1D& g = cfg.grid;
    return std::visit(
        overloaded{
            [&](const RectangleIC& rect) {
                if (!(rect.left > g.x_min() && rect.right < g.x_max() && rect.left < rect.right)) {
                    throw ArgumentError("rectangle initial condition must sit strictly inside the domain");
                }
                if (!std::isfinite(rect.height)) throw ArgumentError("rectangle height must be finite");
                std::vector<double> u(g.n_nodes(), 0.0);
                for (std::size_t i = 1; i + 1 < g.n_nodes(); ++i) {
                    const double x = g.x(i);
                    if (x >= rect.left && x <= rect.right) u[i] = rect.height;
                }
                return u;
            },
            [&](const SampledIC& sampled) {
                if (sampled.values.size() != g.n_nodes()) {
                    throw DimensionError(fmt::format("sampled initial condition has {} values for {} nodes",
                                                     sampled.values.size(), g.n_nodes()));
                }
                if (sampled.values.front() != 0.0 || sampled.values.back() != 0.0) {
                    throw ArgumentError("sampled initial condition must vanish on the boundary");
                }
                for (double v : sampled.values) {
                    if (!std::isfinite(v)) throw DataError("sampled initial condition is not finite");
                }
                return sampled.values;
            },
        },
        cfg.ic);
}

SnapshotMatrix solve_heat1d(const Heat1DConfig& cfg) {
    validate(cfg);
    const double h = cfg.grid.spacing();
    const double r = cfg.alpha * cfg.dt / (h * h);

    std::vector<double> u = sample_initial_condition(cfg);
    std::vector<double> scratch;
    SnapshotBuilder builder(FieldLayout::single("u", cfg.grid.n_nodes()));
    builder.append(u, 0.0);
    for (std::size_t j = 1; j < cfg.n_snaps; ++j) {
        if (cfg.scheme == TimeScheme::implicit_euler) {
            implicit_step(u, r, scratch);
        } else {
            explicit_step(u, r, scratch);
        }
        builder.append(u, static_cast<double>(j) * cfg.dt);
    }
    return builder.build();
}

std::vector<double> unit_time_grid(std::size_t n_snaps) {
    if (n_snaps < 2) throw ArgumentError("advected profiles need at least 2 snapshots");
    std::vector<double> t(n_snaps);
    for (std::size_t j = 0; j < n_snaps; ++j) {
        t[j] = static_cast<double>(j) / static_cast<double>(n_snaps - 1);
    }
    return t;
}

SnapshotMatrix gen_advected(const Grid1D& grid, std::size_t n_snaps, const AdvectedProfile& profile) {
    const auto times = unit_time_grid(n_snaps);
    if (const auto* sig = std::get_if<SigmoidProfile>(&profile)) {
        if (!(sig->steepness > 0.0) || !std::isfinite(sig->steepness)) {
            throw ArgumentError("sigmoid steepness must be positive and finite");
        }
    }
    const auto xs = grid.coordinates();
    Eigen::MatrixXd data(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(n_snaps));
    for (std::size_t j = 0; j < n_snaps; ++j) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double t = times[j];
            const double x = xs[i];
            const double value = std::visit(
                overloaded{
                    [&](const JumpProfile&) { return x <= t ? 1.0 : 0.0; },
                    // exp overflow gives inf, so the value saturates cleanly to 0.
                    [&](const SigmoidProfile& s) { return 1.0 / (1.0 + std::exp(-s.steepness * (t - x))); },
                },
                profile);
            data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
        }
    }
    return SnapshotMatrix(std::move(data), FieldLayout::single("u", xs.size()), times);
}

SnapshotMatrix gen_advected_jump(const Grid1D& grid, std::size_t n_snaps) {
    return gen_advected(grid, n_snaps, JumpProfile{});
}

SnapshotMatrix gen_sigmoid(const Grid1D& grid, std::size_t n_snaps, double steepness) {
    return gen_advected(grid, n_snaps, SigmoidProfile{steepness});
}

}  // namespace podsolid
