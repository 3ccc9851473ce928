// Acceptance driver: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every criterion passes, except those listed with
// --expect-fail, which are still run and reported.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <cstdio>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <fmt/format.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "podsolid/analysis.hpp"
#include "podsolid/cases1d.hpp"
#include "podsolid/flow.hpp"
#include "podsolid/pod.hpp"
#include "oracles.hpp"

using namespace podsolid;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = false;
    std::vector<std::string> details;  ///< one line each, printed under the verdict
};

std::size_t modes9999(const PodSpectrum& s) { return modes_for_energy(s, 0.9999).modes_needed; }

std::string check(bool ok, const std::string& what) { return fmt::format("[{}] {}", ok ? "ok" : "no", what); }

Outcome heat_spectrum() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto s = decompose(solve_heat1d(Heat1DConfig{})).spectrum;
    const double elapsed = seconds_since(t0);
    const std::size_t n = modes9999(s);
    const double ratio = s[19] / s[0];
    const bool a = n <= 10, b = ratio <= 1e-8, c = elapsed < 5.0;
    o.pass = a && b && c;
    o.details = {check(a, fmt::format("modes(0.9999) = {} <= 10", n)),
                 check(b, fmt::format("sigma_20 / sigma_1 = {:.3e} <= 1e-8", ratio)),
                 check(c, fmt::format("runtime {:.2f} s < 5 s", elapsed))};
    return o;
}

Outcome jump_spectrum() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto s = decompose(gen_advected_jump(Grid1D(256), 128)).spectrum;
    const auto fit = fit_decay(s, DecayModel::loglog, {4, 64});
    const double elapsed = seconds_since(t0);
    const std::size_t n = modes9999(s);
    const bool a = n >= 100, b = std::abs(fit.slope + 0.5) <= 0.15, c = elapsed < 5.0;
    o.pass = a && b && c;
    // The root tail energy sqrt(sum_{k>n} sigma_k^2) is the best rank-n error; report its slope too.
    std::vector<double> tail(s.size());
    for (std::size_t r = 0; r < s.size(); ++r) tail[r] = std::sqrt(s.tail_energy(r));
    const auto tail_fit = fit_decay(PodSpectrum(tail), DecayModel::loglog, {4, 64});
    o.details = {check(a, fmt::format("modes(0.9999) = {} >= 100 of 128", n)),
                 check(b, fmt::format("loglog slope of sigma over [4, 64] = {:.4f}, want -0.5 +- 0.15", fit.slope)),
                 check(c, fmt::format("runtime {:.2f} s < 5 s", elapsed)),
                 fmt::format("info: loglog slope of the rank-n error over [4, 64] = {:.4f}", tail_fit.slope)};
    return o;
}

Outcome sigmoid_ordering() {
    Outcome o;
    const auto t0 = Clock::now();
    const Grid1D g(256);
    const std::size_t stretched = modes9999(decompose(gen_sigmoid(g, 128, kStretchedSigmoid)).spectrum);
    const std::size_t steep = modes9999(decompose(gen_sigmoid(g, 128, kSteepSigmoid)).spectrum);
    const std::size_t jump = modes9999(decompose(gen_advected_jump(g, 128)).spectrum);
    const double elapsed = seconds_since(t0);
    const bool a = stretched < steep && steep < jump, c = elapsed < 5.0;
    o.pass = a && c;
    o.details = {check(a, fmt::format("modes(0.9999): stretched {} < steep {} < jump {}", stretched, steep, jump)),
                 check(c, fmt::format("runtime {:.2f} s < 5 s", elapsed))};
    return o;
}

struct CavityRuns {
    SnapshotMatrix mushy;
    SnapshotMatrix pure;
    double seconds = 0.0;
};

CavityRuns run_cavities() {
    const auto t0 = Clock::now();
    SimConfig cfg;
    auto mushy = run_case(cfg);
    cfg.viscosity.kind = ViscosityKind::sharp_jump;
    auto pure = run_case(cfg);
    return {std::move(mushy), std::move(pure), seconds_since(t0)};
}

Outcome mushy_vs_pure(const CavityRuns& runs) {
    Outcome o;
    const std::size_t m = modes9999(decompose(runs.mushy).spectrum);
    const std::size_t p = modes9999(decompose(runs.pure).spectrum);
    const bool a = 2 * m <= p, c = runs.seconds < 600.0;
    o.pass = a && c;
    const std::size_t mv = modes9999(decompose(select_fields(runs.mushy, {"u", "v"})).spectrum);
    const std::size_t pv = modes9999(decompose(select_fields(runs.pure, {"u", "v"})).spectrum);
    o.details = {
        check(a, fmt::format("modes(0.9999) of (u, v, p, T): mushy {} <= 0.5 * pure {}", m, p)),
        check(c, fmt::format("both 64x64 runs, {} snapshots each, {:.0f} s < 600 s", runs.mushy.n_snaps(), runs.seconds)),
        fmt::format("info: velocity block (u, v) only: mushy {} vs pure {} (ratio {:.2f})", mv, pv,
                    static_cast<double>(mv) / static_cast<double>(pv))};
    return o;
}

Outcome pressure_vs_velocity(const CavityRuns& runs) {
    Outcome o;
    const auto parts = component_split(runs.pure);
    const std::size_t p = modes9999(decompose(parts.at("p")).spectrum);
    const std::size_t u = modes9999(decompose(parts.at("u")).spectrum);
    const std::size_t v = modes9999(decompose(parts.at("v")).spectrum);
    const std::size_t t = modes9999(decompose(parts.at("T")).spectrum);
    o.pass = p < std::min(u, v);
    o.details = {check(o.pass, fmt::format("pure case modes(0.9999): p {} < min(u {}, v {})", p, u, v)),
                 fmt::format("info: T needs {}", t)};
    return o;
}

Outcome solver_suite() {
    Outcome o;
    using oracle::max_abs;

    SimConfig small;
    small.grid = StaggeredGrid2D(16, 16);
    std::mt19937_64 rng(2024);
    double worst_div = 0.0;
    {
        const CavitySolver solver(small);
        const Eigen::VectorXd guess = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(small.grid.n_cells()));
        for (int trial = 0; trial < 20; ++trial) {
            const auto tentative = oracle::random_tentative(small.grid, rng);
            const auto c = solver.velocity_update(tentative, solver.pressure_correction(tentative), guess);
            const double scale = std::max({1.0, max_abs(c.u), max_abs(c.v)});
            worst_div = std::max(worst_div, max_abs(solver.divergence(c.u, c.v)) / scale);
        }
    }
    const bool a = worst_div <= 1e-8;

    double worst_rest = 0.0;
    {
        SimConfig cfg = small;
        cfg.right_wall.kind = RightWallBC::Kind::adiabatic;
        cfg.initial_temp = cfg.t_ref;
        const CavitySolver solver(cfg);
        FlowState s = solver.initial_state();
        for (int n = 0; n < 100; ++n) {
            solver.step(s);
            worst_rest = std::max({worst_rest, max_abs(s.u), max_abs(s.v),
                                   max_abs(s.temp.array() - cfg.initial_temp) / cfg.initial_temp});
        }
    }
    const bool b = worst_rest <= 1e-12;

    double poisson_err = 0.0;
    {
        SimConfig cfg;
        cfg.grid = StaggeredGrid2D(8, 8);
        const CavitySolver solver(cfg);
        const auto tentative = oracle::random_tentative(cfg.grid, rng);
        const Eigen::VectorXd phi = solver.pressure_correction(tentative);
        const Eigen::VectorXd expected = oracle::dense_pressure_correction(cfg.grid, tentative, cfg.dt);
        poisson_err = max_abs(phi - expected) / max_abs(expected);
    }
    const bool c = poisson_err <= 1e-10;

    double heat_err = 0.0;
    {
        Heat1DConfig cfg;
        cfg.grid = Grid1D(8);
        cfg.dt = 1e-6;
        cfg.n_snaps = 11;
        cfg.ic = SampledIC{{0.0, 0.3, 1.0, 0.2, -0.4, 0.9, 0.5, 0.0}};
        const auto m = solve_heat1d(cfg);
        const Eigen::MatrixXd a = cfg.alpha * oracle::dense_laplacian_1d(8, cfg.grid.spacing());
        const Eigen::VectorXd exact = (a * (10.0 * cfg.dt)).exp() * oracle::interior(m, 0);
        heat_err = (oracle::interior(m, 10) - exact).norm() / exact.norm();
    }
    const bool d = heat_err <= 1e-6;

    const double order = oracle::taylor_green_order(24, 0.04, 0.05, 0.4);
    const bool e = order >= 1.8;

    o.pass = a && b && c && d && e;
    o.details = {check(a, fmt::format("projected divergence, 20 random 16x16 fields: {:.2e} <= 1e-8", worst_div)),
                 check(b, fmt::format("quiescent state over 100 steps: drift {:.2e} <= 1e-12", worst_rest)),
                 check(c, fmt::format("8x8 Poisson vs dense oracle: {:.2e} <= 1e-10", poisson_err)),
                 check(d, fmt::format("8-node heat vs matrix exponential: {:.2e} <= 1e-6", heat_err)),
                 check(e, fmt::format("Taylor-Green temporal order {:.3f} >= 1.8", order))};
    return o;
}

Outcome pod_suite() {
    Outcome o;
    std::mt19937_64 rng(7);
    std::normal_distribution<double> dist;
    auto random_matrix = [&](Eigen::Index r, Eigen::Index c) {
        return Eigen::MatrixXd(Eigen::MatrixXd::NullaryExpr(r, c, [&] { return dist(rng); }));
    };

    double sigma_err = 0.0;
    for (auto [r, c] : {std::pair{200, 100}, {150, 60}, {120, 100}, {40, 10}}) {
        const Eigen::MatrixXd x = random_matrix(r, c);
        const auto direct = decompose(x, SvdMethod::direct).spectrum;
        const auto mos = decompose(x, SvdMethod::method_of_snapshots).spectrum;
        for (std::size_t i = 0; i < direct.size(); ++i)
            sigma_err = std::max(sigma_err, std::abs(direct[i] - mos[i]) / direct[0]);
    }
    const bool a = sigma_err <= 1e-8;

    double ey_err = 0.0;
    for (auto [r, c] : {std::pair{64, 64}, {50, 20}, {10, 40}}) {
        const Eigen::MatrixXd x = random_matrix(r, c);
        const auto b = decompose(x, SvdMethod::direct);
        for (std::size_t k = 1; k < b.spectrum.size(); k += 3) {
            const double err2 = (x - reconstruct(truncate(b, k))).squaredNorm();
            const double tail = b.spectrum.tail_energy(k);
            ey_err = std::max(ey_err, std::abs(err2 - tail) / tail);
        }
    }
    const bool b = ey_err <= 1e-8;

    const std::size_t n = modes_for_energy(PodSpectrum({3, 2, 1}), 0.9).modes_needed;
    const bool c = n == 2;

    o.pass = a && b && c;
    o.details = {check(a, fmt::format("method of snapshots vs direct sigma: {:.2e} <= 1e-8", sigma_err)),
                 check(b, fmt::format("truncation error vs tail energy: {:.2e} <= 1e-8", ey_err)),
                 check(c, fmt::format("modes_for_energy([3, 2, 1], 0.9) = {} (want 2)", n))};
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria, one PASS/FAIL line each"};
    std::vector<int> expect_fail;
    bool skip_2d = false;
    app.add_option("--expect-fail", expect_fail, "Criteria known to fail; reported but not counted in the exit status")
        ->delimiter(',');
    app.add_flag("--skip-2d", skip_2d, "Skip the two 64x64 cavity runs (criteria 4 and 5)");
    CLI11_PARSE(app, argc, argv);
    const std::set<int> expected(expect_fail.begin(), expect_fail.end());

    std::optional<CavityRuns> runs;
    auto cavities = [&]() -> const CavityRuns& {
        if (!runs) runs = run_cavities();
        return *runs;
    };

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"heat spectrum decays exponentially", heat_spectrum},
        {"advected jump spectrum decays slowly", jump_spectrum},
        {"sigmoid steepness orders the decay", sigmoid_ordering},
        {"mushy cavity needs at most half the modes of pure", [&] { return mushy_vs_pure(cavities()); }},
        {"pure cavity pressure decays faster than velocity", [&] { return pressure_vs_velocity(cavities()); }},
        {"solver correctness suite", solver_suite},
        {"POD engine suite", pod_suite},
    };

    int unexpected = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i + 1);
        const auto& [name, run] = criteria[i];
        if (skip_2d && (id == 4 || id == 5)) {
            fmt::print("SKIP {} {}\n", id, name);
            continue;
        }
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.details = {fmt::format("error: {}", e.what())};
        }
        const bool known = expected.contains(id);
        fmt::print("{} {} {}{}\n", o.pass ? "PASS" : "FAIL", id, name,
                   known ? (o.pass ? " (listed as expected failure)" : " (expected failure)") : "");
        for (const auto& d : o.details) fmt::print("    {}\n", d);
        std::fflush(stdout);
        if (!o.pass && !known) ++unexpected;
    }
    return unexpected == 0 ? 0 : 1;
}
