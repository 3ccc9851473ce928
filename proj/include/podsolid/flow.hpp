#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "podsolid/grid.hpp"
#include "podsolid/snapshot.hpp"
#include "podsolid/viscosity.hpp"

namespace podsolid {

/// Velocity condition on all four walls. Normal velocity is always zero;
/// free slip drops the tangential shear and is used by verification runs.
enum class WallKind { no_slip, free_slip };

/// Thermal condition on the right wall (x = lx). The other walls are adiabatic.
struct RightWallBC {
    enum class Kind { robin, dirichlet, adiabatic };
    Kind kind = Kind::robin;
    double h = 10.0;            ///< heat transfer coefficient, flux = h (T_wall - t_ambient)
    double t_ambient = 550.0;
    double t_cold = 550.0;      ///< wall temperature for the dirichlet kind
};

struct SimConfig {
    StaggeredGrid2D grid{64, 64};
    double dt = 5e-3;
    std::size_t n_steps = 4000;
    std::size_t snap_every = 8;
    ViscosityModel viscosity{};
    double buoyancy_coeff = 10.0;  ///< g * beta
    double t_ref = 700.0;
    double thermal_diffusivity = 1e-2;
    double initial_temp = 700.0;
    RightWallBC right_wall{};
    std::size_t inner_iterations = 1;
    WallKind walls = WallKind::no_slip;
    double cfl_max = 1.0;

    /// Throws ArgumentError on inconsistent values.
    void validate() const;
};

/**
 * Solver state between steps.
 *
 * `u`, `v` hold the latest divergence-free velocity, `u_prev`, `v_prev` the
 * level before it (empty until one step has been taken). `pressure` is the
 * last computed pressure and serves as the guess p* of the next step; `phi`
 * is the most recent pressure correction.
 */
struct FlowState {
    Eigen::VectorXd u;
    Eigen::VectorXd v;
    Eigen::VectorXd u_prev;
    Eigen::VectorXd v_prev;
    Eigen::VectorXd pressure;
    Eigen::VectorXd phi;
    Eigen::VectorXd temp;
    double time = 0.0;
    std::size_t step = 0;
};

struct VelocityField {
    Eigen::VectorXd u;
    Eigen::VectorXd v;
};

struct CorrectedVelocity {
    Eigen::VectorXd u;
    Eigen::VectorXd v;
    Eigen::VectorXd pressure;
};

/**
 * Fractional-step Boussinesq solver on a MAC grid.
 *
 * One step:
 *   1. tentative velocity from the momentum equation with the pressure guess,
 *      Adams-Bashforth extrapolated convecting velocity, Crank-Nicolson
 *      convected/diffused velocity and lagged viscosity mu(T^{n-1});
 *   2. pressure correction from a Neumann Poisson problem (zero mean);
 *      steps 1-2 repeat `inner_iterations` times with p* <- p* + phi;
 *   3. projection u = u_I - dt grad(phi), p = p* + phi;
 *   4. temperature: explicit upwind advection, implicit diffusion.
 *
 * The constant Poisson and heat operators are factorised once in the
 * constructor; all member functions are const and safe to call concurrently.
 */
class CavitySolver {
public:
    explicit CavitySolver(SimConfig cfg);
    ~CavitySolver();
    CavitySolver(CavitySolver&&) noexcept;
    CavitySolver& operator=(CavitySolver&&) noexcept;

    const SimConfig& config() const noexcept { return cfg_; }
    const StaggeredGrid2D& grid() const noexcept { return cfg_.grid; }

    /// At rest, zero pressure, uniform initial temperature.
    FlowState initial_state() const;

    VelocityField tentative_velocity(const FlowState& state) const;
    VelocityField tentative_velocity(const FlowState& state, const Eigen::VectorXd& pressure_guess) const;
    Eigen::VectorXd pressure_correction(const VelocityField& tentative) const;
    CorrectedVelocity velocity_update(const VelocityField& tentative, const Eigen::VectorXd& phi,
                                      const Eigen::VectorXd& pressure_guess) const;
    Eigen::VectorXd temperature_step(const FlowState& state) const;

    /// Full step in place; throws with the step index on failure.
    void step(FlowState& state) const;

    Eigen::VectorXd viscosity_field(const Eigen::VectorXd& temp) const;
    Eigen::VectorXd divergence(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
    /// Largest per-cell explicit-advection Courant number (inflow sum).
    double courant_number(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
    double thermal_energy(const Eigen::VectorXd& temp) const;

    /// Column (u, v, p, T) matching `snapshot_layout`.
    std::vector<double> snapshot_column(const FlowState& state) const;
    FieldLayout snapshot_layout() const;

private:
    struct Factorizations;

    SimConfig cfg_;
    std::unique_ptr<Factorizations> fact_;
};

/// Runs `n_steps` steps and records (u, v, p, T) every `snap_every` steps.
SnapshotMatrix run_case(const SimConfig& cfg);

}  // namespace podsolid
