#include "podsolid/flow.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <fmt/format.h>

#include "podsolid/errors.hpp"

namespace podsolid {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;
using Index = Eigen::Index;

constexpr double kPoissonResidualTol = 1e-10;
constexpr double kDivergenceTol = 1e-8;
constexpr int kRefinementSweeps = 2;

Index idx(std::size_t k) { return static_cast<Index>(k); }

// Momentum operator Op(w) = convection - diffusion at one face, written as
// coefficients on the face itself and its four neighbours. A neighbour index
// of -1 means the neighbour was a ghost and has been folded into `centre`.
struct Stencil {
    double centre = 0.0;
    double east = 0.0, west = 0.0, north = 0.0, south = 0.0;
    Index e = -1, w = -1, n = -1, s = -1;

    double apply(const Eigen::VectorXd& x, Index self) const {
        double r = centre * x(self);
        if (e >= 0) r += east * x(e);
        if (w >= 0) r += west * x(w);
        if (n >= 0) r += north * x(n);
        if (s >= 0) r += south * x(s);
        return r;
    }
};

// Builds the stencil from face-normal (along) and cross-direction data.
// `ghost_sign` is -1 for no-slip (antisymmetric ghost) and +1 for free slip.
Stencil make_stencil(double along_vel, double cross_vel, double h_along, double h_cross, double mu_plus_along,
                     double mu_minus_along, double mu_plus_cross, double mu_minus_cross, Index plus_along,
                     Index minus_along, Index plus_cross, Index minus_cross, double ghost_sign) {
    Stencil st;
    const double inv_a2 = 1.0 / (h_along * h_along);
    const double inv_c2 = 1.0 / (h_cross * h_cross);
    st.centre = (mu_plus_along + mu_minus_along) * inv_a2 + (mu_plus_cross + mu_minus_cross) * inv_c2;
    const double a_plus = along_vel / (2.0 * h_along) - mu_plus_along * inv_a2;
    const double a_minus = -along_vel / (2.0 * h_along) - mu_minus_along * inv_a2;
    const double c_plus = cross_vel / (2.0 * h_cross) - mu_plus_cross * inv_c2;
    const double c_minus = -cross_vel / (2.0 * h_cross) - mu_minus_cross * inv_c2;
    // Along-direction neighbours are always faces (wall faces hold zero).
    st.e = plus_along;
    st.east = a_plus;
    st.w = minus_along;
    st.west = a_minus;
    if (plus_cross >= 0) {
        st.n = plus_cross;
        st.north = c_plus;
    } else {
        st.centre += ghost_sign * c_plus;
    }
    if (minus_cross >= 0) {
        st.s = minus_cross;
        st.south = c_minus;
    } else {
        st.centre += ghost_sign * c_minus;
    }
    return st;
}

// Crank-Nicolson part (convection plus diffusion with the liquid viscosity)
// and fully implicit part (diffusion with the solidification excess
// mu - mu_liquid). The excess can reach 1e6 mu_liquid, where Crank-Nicolson
// has an amplification factor near -1 and leaves undamped sign-flipping
// velocities in the solid.
struct FaceOperators {
    Stencil crank_nicolson;
    Stencil implicit;
};

FaceOperators make_operators(double along_vel, double cross_vel, double h_along, double h_cross,
                             std::array<double, 4> mu, double mu_base, Index plus_along, Index minus_along,
                             Index plus_cross, Index minus_cross, double ghost_sign) {
    std::array<double, 4> base{};
    std::array<double, 4> excess{};
    for (std::size_t k = 0; k < 4; ++k) {
        base[k] = std::min(mu[k], mu_base);
        excess[k] = mu[k] - base[k];
    }
    return {make_stencil(along_vel, cross_vel, h_along, h_cross, base[0], base[1], base[2], base[3], plus_along,
                         minus_along, plus_cross, minus_cross, ghost_sign),
            make_stencil(0.0, 0.0, h_along, h_cross, excess[0], excess[1], excess[2], excess[3], plus_along,
                         minus_along, plus_cross, minus_cross, ghost_sign)};
}

Eigen::VectorXd extrapolate(const Eigen::VectorXd& current, const Eigen::VectorXd& previous) {
    if (previous.size() == 0) return current;
    return 1.5 * current - 0.5 * previous;
}

}  // namespace

struct CavitySolver::Factorizations {
    // Bordered Neumann Laplacian [L 1; 1^T 0] enforcing zero mean.
    Eigen::SparseLU<SpMat> poisson;
    SpMat laplacian;
    // I - dt kappa L + dt B for the heat equation (symmetric positive definite).
    Eigen::SimplicialLDLT<SpMat> heat;
    SpMat heat_operator;  // kappa L - B, applied explicitly in delta form
    Eigen::VectorXd wall_sink;  // B t_wall contribution per cell
};

void SimConfig::validate() const {
    auto positive = [](double value, const char* name) {
        if (!(value > 0.0) || !std::isfinite(value)) throw ArgumentError(fmt::format("{} must be positive", name));
    };
    positive(dt, "dt");
    // Zero buoyancy is allowed for verification runs.
    if (buoyancy_coeff < 0.0 || !std::isfinite(buoyancy_coeff)) throw ArgumentError("buoyancy_coeff must be >= 0");
    positive(thermal_diffusivity, "thermal_diffusivity");
    positive(cfl_max, "cfl_max");
    if (n_steps < 1) throw ArgumentError("n_steps must be at least 1");
    if (snap_every < 1) throw ArgumentError("snap_every must be at least 1");
    if (inner_iterations < 1) throw ArgumentError("inner_iterations must be at least 1");
    if (!std::isfinite(t_ref) || !std::isfinite(initial_temp)) throw ArgumentError("temperatures must be finite");
    if (!(initial_temp > viscosity.t_freeze)) {
        throw ArgumentError("initial_temp must exceed t_freeze so the cavity starts liquid");
    }
    viscosity.validate();
    switch (right_wall.kind) {
        case RightWallBC::Kind::robin:
            positive(right_wall.h, "right wall h");
            if (!std::isfinite(right_wall.t_ambient)) throw ArgumentError("t_ambient must be finite");
            break;
        case RightWallBC::Kind::dirichlet:
            if (!std::isfinite(right_wall.t_cold)) throw ArgumentError("t_cold must be finite");
            break;
        case RightWallBC::Kind::adiabatic:
            break;
    }
}

CavitySolver::CavitySolver(SimConfig cfg) : cfg_(std::move(cfg)), fact_(std::make_unique<Factorizations>()) {
    cfg_.validate();
    const auto& g = cfg_.grid;
    const std::size_t nx = g.nx();
    const std::size_t ny = g.ny();
    const double idx2 = 1.0 / (g.dx() * g.dx());
    const double idy2 = 1.0 / (g.dy() * g.dy());
    const Index n = idx(g.n_cells());

    std::vector<Triplet> lap;
    lap.reserve(5 * g.n_cells());
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const Index c = idx(g.cell(i, j));
            auto link = [&](std::size_t ii, std::size_t jj, double w) {
                lap.emplace_back(c, idx(g.cell(ii, jj)), w);
                lap.emplace_back(c, c, -w);
            };
            if (i > 0) link(i - 1, j, idx2);
            if (i + 1 < nx) link(i + 1, j, idx2);
            if (j > 0) link(i, j - 1, idy2);
            if (j + 1 < ny) link(i, j + 1, idy2);
        }
    }
    fact_->laplacian.resize(n, n);
    fact_->laplacian.setFromTriplets(lap.begin(), lap.end());

    std::vector<Triplet> bordered = lap;
    for (Index c = 0; c < n; ++c) {
        bordered.emplace_back(c, n, 1.0);
        bordered.emplace_back(n, c, 1.0);
    }
    SpMat poisson(n + 1, n + 1);
    poisson.setFromTriplets(bordered.begin(), bordered.end());
    fact_->poisson.compute(poisson);
    if (fact_->poisson.info() != Eigen::Success) {
        throw NumericalError("factorisation of the pressure Poisson operator failed: " +
                             fact_->poisson.lastErrorMessage());
    }

    // Right-wall exchange: flux = h_eff (T_cell - T_wall) through a half cell.
    double h_eff = 0.0;
    double t_wall = 0.0;
    const double kappa = cfg_.thermal_diffusivity;
    switch (cfg_.right_wall.kind) {
        case RightWallBC::Kind::robin:
            h_eff = 1.0 / (1.0 / cfg_.right_wall.h + 0.5 * g.dx() / kappa);
            t_wall = cfg_.right_wall.t_ambient;
            break;
        case RightWallBC::Kind::dirichlet:
            h_eff = 2.0 * kappa / g.dx();
            t_wall = cfg_.right_wall.t_cold;
            break;
        case RightWallBC::Kind::adiabatic:
            break;
    }
    SpMat sink(n, n);
    fact_->wall_sink = Eigen::VectorXd::Zero(n);
    if (h_eff > 0.0) {
        std::vector<Triplet> sink_trip;
        for (std::size_t j = 0; j < ny; ++j) {
            const Index c = idx(g.cell(nx - 1, j));
            sink_trip.emplace_back(c, c, h_eff / g.dx());
            fact_->wall_sink(c) = h_eff / g.dx() * t_wall;
        }
        sink.setFromTriplets(sink_trip.begin(), sink_trip.end());
    }
    fact_->heat_operator = kappa * fact_->laplacian - sink;
    SpMat identity(n, n);
    identity.setIdentity();
    SpMat heat = identity - cfg_.dt * fact_->heat_operator;
    fact_->heat.compute(heat);
    if (fact_->heat.info() != Eigen::Success) {
        throw NumericalError("factorisation of the heat operator failed");
    }
}

CavitySolver::~CavitySolver() = default;
CavitySolver::CavitySolver(CavitySolver&&) noexcept = default;
CavitySolver& CavitySolver::operator=(CavitySolver&&) noexcept = default;

FlowState CavitySolver::initial_state() const {
    const auto& g = cfg_.grid;
    FlowState s;
    s.u = Eigen::VectorXd::Zero(idx(g.n_u()));
    s.v = Eigen::VectorXd::Zero(idx(g.n_v()));
    s.pressure = Eigen::VectorXd::Zero(idx(g.n_cells()));
    s.phi = Eigen::VectorXd::Zero(idx(g.n_cells()));
    s.temp = Eigen::VectorXd::Constant(idx(g.n_cells()), cfg_.initial_temp);
    return s;
}

Eigen::VectorXd CavitySolver::viscosity_field(const Eigen::VectorXd& temp) const {
    Eigen::VectorXd mu(temp.size());
    for (Index c = 0; c < temp.size(); ++c) mu(c) = viscosity_of(cfg_.viscosity, temp(c));
    return mu;
}

Eigen::VectorXd CavitySolver::divergence(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    const auto& g = cfg_.grid;
    Eigen::VectorXd div(idx(g.n_cells()));
    for (std::size_t j = 0; j < g.ny(); ++j) {
        for (std::size_t i = 0; i < g.nx(); ++i) {
            div(idx(g.cell(i, j))) = (u(idx(g.u_face(i + 1, j))) - u(idx(g.u_face(i, j)))) / g.dx() +
                                     (v(idx(g.v_face(i, j + 1))) - v(idx(g.v_face(i, j)))) / g.dy();
        }
    }
    return div;
}

double CavitySolver::courant_number(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    const auto& g = cfg_.grid;
    double worst = 0.0;
    for (std::size_t j = 0; j < g.ny(); ++j) {
        for (std::size_t i = 0; i < g.nx(); ++i) {
            const double inflow = (std::max(u(idx(g.u_face(i, j))), 0.0) +
                                   std::max(-u(idx(g.u_face(i + 1, j))), 0.0)) / g.dx() +
                                  (std::max(v(idx(g.v_face(i, j))), 0.0) +
                                   std::max(-v(idx(g.v_face(i, j + 1))), 0.0)) / g.dy();
            worst = std::max(worst, inflow * cfg_.dt);
        }
    }
    return worst;
}

double CavitySolver::thermal_energy(const Eigen::VectorXd& temp) const {
    return temp.sum() * cfg_.grid.dx() * cfg_.grid.dy();
}

VelocityField CavitySolver::tentative_velocity(const FlowState& state) const {
    return tentative_velocity(state, state.pressure);
}

VelocityField CavitySolver::tentative_velocity(const FlowState& state, const Eigen::VectorXd& pressure_guess) const {
    const auto& g = cfg_.grid;
    const std::size_t nx = g.nx();
    const std::size_t ny = g.ny();
    const double dx = g.dx();
    const double dy = g.dy();
    const double dt = cfg_.dt;
    const double ghost = cfg_.walls == WallKind::no_slip ? -1.0 : 1.0;

    const double courant = courant_number(state.u, state.v);
    if (courant > cfg_.cfl_max) {
        throw StabilityError(fmt::format("advective Courant number {:.4g} exceeds cfl_max {}", courant, cfg_.cfl_max),
                             cfg_.cfl_max);
    }

    const Eigen::VectorXd mu = viscosity_field(state.temp);
    const Eigen::VectorXd uc = extrapolate(state.u, state.u_prev);
    const Eigen::VectorXd vc = extrapolate(state.v, state.v_prev);
    auto mu_at = [&](std::size_t i, std::size_t j) { return mu(idx(g.cell(i, j))); };

    // Wall faces carry zero normal velocity; they are left out of the
    // coupling so round-off in the solve cannot leak flux through a wall.
    auto add_row = [&](std::vector<Triplet>& trip, Index p, const FaceOperators& op, bool plus_is_wall,
                       bool minus_is_wall) {
        const Stencil& cn = op.crank_nicolson;
        const Stencil& im = op.implicit;
        trip.emplace_back(p, p, 1.0 / dt + 0.5 * cn.centre + im.centre);
        if (!plus_is_wall) trip.emplace_back(p, cn.e, 0.5 * cn.east + im.east);
        if (!minus_is_wall) trip.emplace_back(p, cn.w, 0.5 * cn.west + im.west);
        if (cn.n >= 0) trip.emplace_back(p, cn.n, 0.5 * cn.north + im.north);
        if (cn.s >= 0) trip.emplace_back(p, cn.s, 0.5 * cn.south + im.south);
    };
    const double mu_base = cfg_.viscosity.mu_liquid;

    auto solve = [&](const SpMat& m, const Eigen::VectorXd& rhs, const char* what) {
        Eigen::SparseLU<SpMat> lu;
        lu.compute(m);
        if (lu.info() != Eigen::Success) {
            throw NumericalError(fmt::format("{} momentum factorisation failed: {}", what, lu.lastErrorMessage()));
        }
        Eigen::VectorXd x = lu.solve(rhs);
        const double rhs_norm = rhs.norm();
        const double residual = rhs_norm > 0.0 ? (m * x - rhs).norm() / rhs_norm : 0.0;
        if (lu.info() != Eigen::Success || !x.allFinite() || residual > 1e-8) {
            throw NumericalError(fmt::format("{} momentum solve failed", what), -1, residual);
        }
        return x;
    };

    // Horizontal component on vertical faces.
    VelocityField out;
    {
        const Index n = idx(g.n_u());
        std::vector<Triplet> trip;
        trip.reserve(5 * g.n_u());
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
        for (std::size_t j = 0; j < ny; ++j) {
            for (std::size_t i = 0; i <= nx; ++i) {
                const Index p = idx(g.u_face(i, j));
                if (i == 0 || i == nx) {
                    trip.emplace_back(p, p, 1.0);
                    continue;
                }
                const bool has_n = j + 1 < ny;
                const bool has_s = j > 0;
                const double mu_n = has_n ? 0.25 * (mu_at(i - 1, j) + mu_at(i, j) + mu_at(i - 1, j + 1) + mu_at(i, j + 1))
                                          : 0.5 * (mu_at(i - 1, j) + mu_at(i, j));
                const double mu_s = has_s ? 0.25 * (mu_at(i - 1, j) + mu_at(i, j) + mu_at(i - 1, j - 1) + mu_at(i, j - 1))
                                          : 0.5 * (mu_at(i - 1, j) + mu_at(i, j));
                const double cross = 0.25 * (vc(idx(g.v_face(i - 1, j))) + vc(idx(g.v_face(i, j))) +
                                             vc(idx(g.v_face(i - 1, j + 1))) + vc(idx(g.v_face(i, j + 1))));
                const FaceOperators op = make_operators(uc(p), cross, dx, dy, {mu_at(i, j), mu_at(i - 1, j), mu_n, mu_s}, mu_base,
                                                idx(g.u_face(i + 1, j)), idx(g.u_face(i - 1, j)),
                                                has_n ? idx(g.u_face(i, j + 1)) : -1,
                                                has_s ? idx(g.u_face(i, j - 1)) : -1, ghost);
                add_row(trip, p, op, i + 1 == nx, i == 1);
                const double grad_p =
                    (pressure_guess(idx(g.cell(i, j))) - pressure_guess(idx(g.cell(i - 1, j)))) / dx;
                rhs(p) = state.u(p) / dt - 0.5 * op.crank_nicolson.apply(state.u, p) - grad_p;
            }
        }
        SpMat m(n, n);
        m.setFromTriplets(trip.begin(), trip.end());
        out.u = solve(m, rhs, "u");
        for (std::size_t j = 0; j < ny; ++j) out.u(idx(g.u_face(0, j))) = out.u(idx(g.u_face(nx, j))) = 0.0;
    }

    // Vertical component on horizontal faces, with the buoyancy force.
    {
        const Index n = idx(g.n_v());
        std::vector<Triplet> trip;
        trip.reserve(5 * g.n_v());
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
        for (std::size_t j = 0; j <= ny; ++j) {
            for (std::size_t i = 0; i < nx; ++i) {
                const Index p = idx(g.v_face(i, j));
                if (j == 0 || j == ny) {
                    trip.emplace_back(p, p, 1.0);
                    continue;
                }
                const bool has_e = i + 1 < nx;
                const bool has_w = i > 0;
                const double mu_e = has_e ? 0.25 * (mu_at(i, j - 1) + mu_at(i, j) + mu_at(i + 1, j - 1) + mu_at(i + 1, j))
                                          : 0.5 * (mu_at(i, j - 1) + mu_at(i, j));
                const double mu_w = has_w ? 0.25 * (mu_at(i, j - 1) + mu_at(i, j) + mu_at(i - 1, j - 1) + mu_at(i - 1, j))
                                          : 0.5 * (mu_at(i, j - 1) + mu_at(i, j));
                const double cross = 0.25 * (uc(idx(g.u_face(i, j - 1))) + uc(idx(g.u_face(i + 1, j - 1))) +
                                             uc(idx(g.u_face(i, j))) + uc(idx(g.u_face(i + 1, j))));
                const FaceOperators op = make_operators(vc(p), cross, dy, dx, {mu_at(i, j), mu_at(i, j - 1), mu_e, mu_w}, mu_base,
                                                idx(g.v_face(i, j + 1)), idx(g.v_face(i, j - 1)),
                                                has_e ? idx(g.v_face(i + 1, j)) : -1,
                                                has_w ? idx(g.v_face(i - 1, j)) : -1, ghost);
                add_row(trip, p, op, j + 1 == ny, j == 1);
                const double grad_p =
                    (pressure_guess(idx(g.cell(i, j))) - pressure_guess(idx(g.cell(i, j - 1)))) / dy;
                const double t_face = 0.5 * (state.temp(idx(g.cell(i, j - 1))) + state.temp(idx(g.cell(i, j))));
                const double buoyancy = cfg_.buoyancy_coeff * (t_face - cfg_.t_ref);
                rhs(p) = state.v(p) / dt - 0.5 * op.crank_nicolson.apply(state.v, p) - grad_p + buoyancy;
            }
        }
        SpMat m(n, n);
        m.setFromTriplets(trip.begin(), trip.end());
        out.v = solve(m, rhs, "v");
        for (std::size_t i = 0; i < nx; ++i) out.v(idx(g.v_face(i, 0))) = out.v(idx(g.v_face(i, ny))) = 0.0;
    }
    return out;
}

Eigen::VectorXd CavitySolver::pressure_correction(const VelocityField& tentative) const {
    const Index n = idx(cfg_.grid.n_cells());
    if (!tentative.u.allFinite() || !tentative.v.allFinite()) {
        throw DataError("tentative velocity is not finite");
    }
    const Eigen::VectorXd rhs = divergence(tentative.u, tentative.v) / cfg_.dt;
    const double rhs_norm = rhs.norm();
    if (rhs_norm == 0.0) return Eigen::VectorXd::Zero(n);

    Eigen::VectorXd bordered(n + 1);
    bordered.head(n) = rhs;
    bordered(n) = 0.0;
    Eigen::VectorXd sol = fact_->poisson.solve(bordered);
    // The multiplier absorbs the mean of the right-hand side; the solved
    // system is L phi = rhs - mean(rhs).
    const Eigen::VectorXd compatible = rhs.array() - rhs.mean();
    double residual = (fact_->laplacian * sol.head(n) - compatible).norm() / rhs_norm;
    // Iterative refinement: the bordered LU alone stalls around 1e-12.
    for (int sweep = 0; sweep < kRefinementSweeps && residual > 1e-14; ++sweep) {
        Eigen::VectorXd defect(n + 1);
        defect.head(n) = rhs - fact_->laplacian * sol.head(n) - Eigen::VectorXd::Constant(n, sol(n));
        defect(n) = -sol.head(n).sum();
        sol += fact_->poisson.solve(defect);
        residual = (fact_->laplacian * sol.head(n) - compatible).norm() / rhs_norm;
    }
    Eigen::VectorXd phi = sol.head(n);
    if (!phi.allFinite() || residual > kPoissonResidualTol) {
        throw NumericalError("pressure Poisson solve failed", -1, residual);
    }
    return phi;
}

CorrectedVelocity CavitySolver::velocity_update(const VelocityField& tentative, const Eigen::VectorXd& phi,
                                                const Eigen::VectorXd& pressure_guess) const {
    const auto& g = cfg_.grid;
    const double dt = cfg_.dt;
    CorrectedVelocity out{tentative.u, tentative.v, pressure_guess + phi};
    for (std::size_t j = 0; j < g.ny(); ++j) {
        for (std::size_t i = 1; i < g.nx(); ++i) {
            out.u(idx(g.u_face(i, j))) -= dt * (phi(idx(g.cell(i, j))) - phi(idx(g.cell(i - 1, j)))) / g.dx();
        }
    }
    for (std::size_t j = 1; j < g.ny(); ++j) {
        for (std::size_t i = 0; i < g.nx(); ++i) {
            out.v(idx(g.v_face(i, j))) -= dt * (phi(idx(g.cell(i, j))) - phi(idx(g.cell(i, j - 1)))) / g.dy();
        }
    }
    return out;
}

Eigen::VectorXd CavitySolver::temperature_step(const FlowState& state) const {
    const auto& g = cfg_.grid;
    const double dt = cfg_.dt;
    const double courant = courant_number(state.u, state.v);
    if (courant > 1.0) {
        throw StabilityError(fmt::format("temperature advection Courant number {:.4g} exceeds 1", courant), 1.0);
    }
    const auto& u = state.u;
    const auto& v = state.v;
    const auto& t = state.temp;

    // Upwind advection in advective form: each cell moves towards the
    // temperatures flowing into it, a convex update under the Courant limit.
    Eigen::VectorXd advected = t;
    for (std::size_t j = 0; j < g.ny(); ++j) {
        for (std::size_t i = 0; i < g.nx(); ++i) {
            const Index c = idx(g.cell(i, j));
            double change = 0.0;
            if (i > 0) change += std::max(u(idx(g.u_face(i, j))), 0.0) * (t(idx(g.cell(i - 1, j))) - t(c)) / g.dx();
            if (i + 1 < g.nx())
                change += std::max(-u(idx(g.u_face(i + 1, j))), 0.0) * (t(idx(g.cell(i + 1, j))) - t(c)) / g.dx();
            if (j > 0) change += std::max(v(idx(g.v_face(i, j))), 0.0) * (t(idx(g.cell(i, j - 1))) - t(c)) / g.dy();
            if (j + 1 < g.ny())
                change += std::max(-v(idx(g.v_face(i, j + 1))), 0.0) * (t(idx(g.cell(i, j + 1))) - t(c)) / g.dy();
            advected(c) += dt * change;
        }
    }

    // Implicit diffusion in increment form, so a uniform adiabatic field is
    // reproduced exactly: (I - dt A) d = dt (A T* + s), T = T* + d.
    const Eigen::VectorXd forcing = dt * (fact_->heat_operator * advected + fact_->wall_sink);
    const Eigen::VectorXd increment = fact_->heat.solve(forcing);
    if (fact_->heat.info() != Eigen::Success || !increment.allFinite()) {
        throw NumericalError("heat solve failed");
    }
    return advected + increment;
}

void CavitySolver::step(FlowState& state) const {
    try {
        Eigen::VectorXd guess = state.pressure;
        VelocityField tentative;
        Eigen::VectorXd phi;
        for (std::size_t k = 0; k < cfg_.inner_iterations; ++k) {
            if (k > 0) guess += phi;
            tentative = tentative_velocity(state, guess);
            phi = pressure_correction(tentative);
        }
        CorrectedVelocity corrected = velocity_update(tentative, phi, guess);

        const Eigen::VectorXd div = divergence(corrected.u, corrected.v);
        const double scale = std::max({1.0, corrected.u.lpNorm<Eigen::Infinity>(), corrected.v.lpNorm<Eigen::Infinity>()});
        const double div_max = div.lpNorm<Eigen::Infinity>();
        if (div_max > kDivergenceTol * scale) {
            throw NumericalError(fmt::format("projected velocity has divergence {:.3e}", div_max), -1, div_max);
        }

        state.u_prev = std::move(state.u);
        state.v_prev = std::move(state.v);
        state.u = std::move(corrected.u);
        state.v = std::move(corrected.v);
        state.pressure = std::move(corrected.pressure);
        state.phi = std::move(phi);
        state.temp = temperature_step(state);
        state.time += cfg_.dt;
        state.step += 1;
    } catch (const StabilityError& e) {
        throw StabilityError(fmt::format("step {} (t = {:.6g}): {}", state.step + 1, state.time, e.what()), e.limit());
    } catch (const NumericalError& e) {
        throw NumericalError(fmt::format("step {} (t = {:.6g}, max|u| = {:.4g}, max|v| = {:.4g}, T in [{:.6g}, {:.6g}]): {}",
                                         state.step + 1, state.time, state.u.lpNorm<Eigen::Infinity>(),
                                         state.v.lpNorm<Eigen::Infinity>(), state.temp.minCoeff(),
                                         state.temp.maxCoeff(), e.what()),
                             e.iterations(), e.residual());
    }
}

FieldLayout CavitySolver::snapshot_layout() const {
    const auto& g = cfg_.grid;
    return FieldLayout::from_counts({{"u", g.n_u()}, {"v", g.n_v()}, {"p", g.n_cells()}, {"T", g.n_cells()}});
}

std::vector<double> CavitySolver::snapshot_column(const FlowState& state) const {
    std::vector<double> col;
    col.reserve(static_cast<std::size_t>(state.u.size() + state.v.size() + state.pressure.size() + state.temp.size()));
    for (const Eigen::VectorXd* f : {&state.u, &state.v, &state.pressure, &state.temp}) {
        col.insert(col.end(), f->data(), f->data() + f->size());
    }
    return col;
}

SnapshotMatrix run_case(const SimConfig& cfg) {
    const CavitySolver solver(cfg);
    FlowState state = solver.initial_state();
    SnapshotBuilder builder(solver.snapshot_layout());
    for (std::size_t n = 1; n <= cfg.n_steps; ++n) {
        solver.step(state);
        if (n % cfg.snap_every == 0) builder.append(solver.snapshot_column(state), state.time);
    }
    return builder.build();
}

}  // namespace podsolid
