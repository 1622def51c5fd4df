#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skdv/integrators.hpp"

#include <cmath>
#include <limits>

using namespace skdv;

namespace {
constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);

SpectralGrid test_grid() { return SpectralGrid(16.0 * kPi, 256); }

FieldPair plane_wave_state(const SpectralGrid& grid, int k) {
    FieldPair s;
    s.u.values.resize(grid.size());
    s.v.values.assign(grid.size(), 0.0);
    const double xi = kPi * k / grid.half_length();
    for (std::size_t j = 0; j < grid.size(); ++j)
        s.u.values[j] = std::exp(kI * (xi * grid.x(j)));
    return s;
}

double state_distance(const FieldPair& a, const FieldPair& b) {
    double d = 0.0;
    for (std::size_t j = 0; j < a.u.values.size(); ++j)
        d = std::max(d, std::abs(a.u.values[j] - b.u.values[j]));
    for (std::size_t j = 0; j < a.v.values.size(); ++j)
        d = std::max(d, std::abs(a.v.values[j] - b.v.values[j]));
    return d;
}
}  // namespace

TEST_CASE("plane wave with beta = 0 is solved exactly") {
    const SpectralGrid grid = test_grid();
    const int k = 6;
    const double xi = kPi * k / grid.half_length();
    FieldPair state = plane_wave_state(grid, k);
    ApproxParams params;
    params.constants.beta = 0.0;  // |u|^2 is constant, so v stays zero and u is free

    SchemeConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 0.5;
    for (Scheme scheme : {Scheme::strang, Scheme::lie}) {
        cfg.scheme = scheme;
        const Trajectory traj = run(grid, state, params, cfg);
        const FieldPair& last = traj.snapshots.back();
        const Complex phase = std::exp(-kI * (xi * xi * cfg.t_end));
        for (std::size_t j = 0; j < grid.size(); ++j) {
            CHECK(std::abs(last.u.values[j] - phase * state.u.values[j]) < 1e-10);
            CHECK(std::abs(last.v.values[j]) < 1e-12);
        }
    }
}

TEST_CASE("deterministic mass conservation") {
    const SpectralGrid grid = test_grid();
    const FieldPair initial = benchmark_initial(grid);
    ApproxParams params;
    SchemeConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.05;
    const Trajectory traj = run(grid, initial, params, cfg);
    const double m0 = traj.diagnostics.mass_col.front();
    for (double m : traj.diagnostics.mass_col)
        CHECK(std::abs(m - m0) / m0 < 1e-12);
}

TEST_CASE("strang self-convergence is second order") {
    const SpectralGrid grid = test_grid();
    const FieldPair initial = benchmark_initial(grid);
    ApproxParams params;
    SchemeConfig cfg;
    cfg.t_end = 0.1;
    cfg.snapshot_stride = 1000000;  // keep only first and last

    auto final_state = [&](double dt) {
        cfg.dt = dt;
        return run(grid, initial, params, cfg).snapshots.back();
    };
    const FieldPair ref = final_state(0.1 / 512.0);
    const double e1 = state_distance(final_state(0.1 / 32.0), ref);
    const double e2 = state_distance(final_state(0.1 / 64.0), ref);
    const double order = std::log2(e1 / e2);
    CHECK(order > 1.9);
    CHECK(order < 2.5);
}

TEST_CASE("lie self-convergence is first order") {
    const SpectralGrid grid = test_grid();
    const FieldPair initial = benchmark_initial(grid);
    ApproxParams params;
    SchemeConfig cfg;
    cfg.t_end = 0.1;
    cfg.scheme = Scheme::lie;
    cfg.snapshot_stride = 1000000;

    auto final_state = [&](double dt) {
        cfg.dt = dt;
        return run(grid, initial, params, cfg).snapshots.back();
    };
    const FieldPair ref = final_state(0.1 / 512.0);
    const double e1 = state_distance(final_state(0.1 / 32.0), ref);
    const double e2 = state_distance(final_state(0.1 / 64.0), ref);
    const double order = std::log2(e1 / e2);
    CHECK(order > 0.8);
    CHECK(order < 1.6);
}

TEST_CASE("run validates its time discretization") {
    const SpectralGrid grid = test_grid();
    const FieldPair initial = benchmark_initial(grid);
    ApproxParams params;
    SchemeConfig cfg;
    cfg.dt = 0.3;
    cfg.t_end = 1.0;  // not an integer multiple
    CHECK_THROWS_AS(run(grid, initial, params, cfg), std::invalid_argument);
    cfg.dt = -0.1;
    CHECK_THROWS_AS(run(grid, initial, params, cfg), std::invalid_argument);
}

TEST_CASE("snapshot count and times") {
    const SpectralGrid grid = test_grid();
    const FieldPair initial = benchmark_initial(grid);
    ApproxParams params;
    SchemeConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 0.1;
    const Trajectory traj = run(grid, initial, params, cfg);
    CHECK(traj.snapshots.size() == 11);
    CHECK(traj.snapshots.front().time == doctest::Approx(0.0));
    CHECK(traj.snapshots.back().time == doctest::Approx(0.1));
    CHECK(traj.diagnostics.size() == 11);
}

TEST_CASE("finite n keeps v band-limited along the flow") {
    const SpectralGrid grid = test_grid();
    const FieldPair initial = benchmark_initial(grid);
    ApproxParams params;
    params.m = 2.0;
    params.n = 4.0;
    SchemeConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.02;
    const Trajectory traj = run(grid, initial, params, cfg);
    const CVec spec = grid.forward(traj.snapshots.back().v.values);
    for (std::size_t b = 0; b < grid.size(); ++b)
        if (std::abs(grid.frequency(b)) > params.n + 1e-12)
            CHECK(std::abs(spec[b]) < 1e-13);
}

TEST_CASE("deterministic reproducibility of a stochastic run") {
    const SpectralGrid grid = test_grid();
    const FieldPair initial = benchmark_initial(grid, 0.5, 0.5);
    ApproxParams params;
    SchemeConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.05;
    NoiseSetup noise{NoiseOperator::power_law(grid, 0.1, 3.0, 33, 1),
                     NoiseOperator::power_law(grid, 0.1, 3.0, 33, 2), 42,
                     ChannelMode::real_noise};
    const Trajectory a = run(grid, initial, params, cfg, noise);
    const Trajectory b = run(grid, initial, params, cfg, noise);
    CHECK(a.diagnostics.to_csv() == b.diagnostics.to_csv());
    CHECK(state_distance(a.snapshots.back(), b.snapshots.back()) == 0.0);

    NoiseSetup other = noise;
    other.seed = 43;
    const Trajectory c = run(grid, initial, params, cfg, other);
    CHECK(state_distance(a.snapshots.back(), c.snapshots.back()) > 0.0);
}

TEST_CASE("stochastic step from the zero state is the propagated increment") {
    const SpectralGrid grid = test_grid();
    FieldPair zero;
    zero.u.values.assign(grid.size(), Complex(0.0, 0.0));
    zero.v.values.assign(grid.size(), 0.0);
    ApproxParams params;
    const double dt = 0.01;
    NoiseSetup noise{NoiseOperator::power_law(grid, 0.2, 3.0, 17, 1),
                     NoiseOperator::power_law(grid, 0.3, 3.0, 17, 2), 9,
                     ChannelMode::real_noise};
    const std::uint64_t step = 4;
    const FieldPair out = stochastic_step(grid, zero, params, noise, step, dt, Scheme::strang);

    const CVec inc1 = increment_field(grid, noise.op1, noise.seed, step, dt, noise.mode);
    const CVec exp1 = schrodinger_propagate(grid, inc1, dt);
    const CVec inc2 = increment_field(grid, noise.op2, noise.seed, step, dt, noise.mode);
    RVec real2(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) real2[j] = inc2[j].real();
    const RVec exp2 = airy_propagate(grid, real2, dt);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        CHECK(std::abs(out.u.values[j] - exp1[j]) < 1e-13);
        CHECK(out.v.values[j] == doctest::Approx(exp2[j]).epsilon(1e-12));
    }
}

TEST_CASE("blow-up raises with a partial trajectory") {
    const SpectralGrid grid = test_grid();
    FieldPair initial = benchmark_initial(grid, 1.0, 0.0);
    // A v field violating the advective step-size ceiling for dt = 0.2.
    for (std::size_t j = 0; j < grid.size(); ++j)
        initial.v.values[j] = 50.0 / std::cosh(grid.x(j));
    ApproxParams params;
    SchemeConfig cfg;
    cfg.dt = 0.2;
    cfg.t_end = 1.0;
    try {
        run(grid, initial, params, cfg);
        FAIL("expected BlowUpError");
    } catch (const BlowUpError& err) {
        CHECK(err.partial.snapshots.size() >= 1);
        CHECK(err.step_index <= 5);
    }
}

TEST_CASE("benchmark datum profile") {
    const SpectralGrid grid = test_grid();
    const FieldPair s = benchmark_initial(grid, 2.0, 3.0);
    const std::size_t mid = grid.size() / 2;  // x = 0
    CHECK(std::abs(s.u.values[mid]) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.v.values[mid] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(s.u.values[0]) < 1e-12);  // sech decays across the box
    CHECK(s.time == 0.0);
}
