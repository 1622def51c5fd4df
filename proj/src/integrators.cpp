#include "skdv/integrators.hpp"

#include "skdv/cutoffs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skdv {

namespace {

bool finite(const CVec& u) {
    for (const auto& z : u)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

bool finite(const RVec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

double max_abs(const RVec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Modewise linear-group phase tables for a fixed step size.
struct PhaseTables {
    CVec schrodinger_half, schrodinger_full;
    CVec airy_half, airy_full;

    PhaseTables(const SpectralGrid& grid, double dt) {
        const std::size_t n = grid.size();
        schrodinger_half.resize(n);
        schrodinger_full.resize(n);
        airy_half.resize(n);
        airy_full.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double xi = grid.frequency(k);
            schrodinger_half[k] = std::polar(1.0, -xi * xi * 0.5 * dt);
            schrodinger_full[k] = std::polar(1.0, -xi * xi * dt);
            // The unpaired Nyquist bin is fixed by the discrete Airy group
            // (odd-derivative convention), matching airy_propagate_spectrum.
            const double cubic = (k == n / 2) ? 0.0 : xi * xi * xi;
            airy_half[k] = std::polar(1.0, cubic * 0.5 * dt);
            airy_full[k] = std::polar(1.0, cubic * dt);
        }
    }
};

void apply_table(const CVec& table, CVec& spectrum) {
    for (std::size_t k = 0; k < spectrum.size(); ++k) spectrum[k] *= table[k];
}

void linear_substep(const SpectralGrid& grid, FieldPair& state, const CVec& s_table,
                    const CVec& airy_table) {
    CVec su = grid.forward(state.u.values);
    apply_table(s_table, su);
    state.u.values = grid.inverse(su);
    CVec sv = grid.forward(state.v.values);
    apply_table(airy_table, sv);
    state.v.values = grid.inverse_real(sv);
}

// d_t v = n2(u, v) with u frozen, one classical RK4 step.
RVec rk4_v_substep(const SpectralGrid& grid, const CVec& u, const RVec& v,
                   const ApproxParams& params, double dt, bool dealias) {
    const std::size_t n = grid.size();
    const RVec k1 = n2(grid, u, v, params, dealias);
    RVec tmp(n);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = v[j] + 0.5 * dt * k1[j];
    const RVec k2 = n2(grid, u, tmp, params, dealias);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = v[j] + 0.5 * dt * k2[j];
    const RVec k3 = n2(grid, u, tmp, params, dealias);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = v[j] + dt * k3[j];
    const RVec k4 = n2(grid, u, tmp, params, dealias);
    RVec out(n);
    for (std::size_t j = 0; j < n; ++j)
        out[j] = v[j] + dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    return out;
}

// Nonlinear substep over dt: the v channel first (RK4 with |u|^2 frozen),
// then the exact u phase rotation. The rotation phase uses the trapezoidal
// average of v over the substep, which keeps the composition second order;
// with average_v = false the initial v is used (first-order Lie variant).
void nonlinear_substep(const SpectralGrid& grid, FieldPair& state, const ApproxParams& params,
                       double dt, bool dealias, bool average_v) {
    const std::size_t n = grid.size();
    const RVec v_new = rk4_v_substep(grid, state.u.values, state.v.values, params, dt, dealias);
    const double g1 = params.constants.gamma1;
    const double beta = params.constants.beta;
    for (std::size_t j = 0; j < n; ++j) {
        const double amp2 = std::norm(state.u.values[j]);
        const double v_eff =
            average_v ? 0.5 * (state.v.values[j] + v_new[j]) : state.v.values[j];
        const double phase = (g1 * cutoffs::psi_K(amp2, params.K) * v_eff +
                              beta * cutoffs::phi_K(amp2, params.K) * amp2) *
                             dt;
        state.u.values[j] *= std::polar(1.0, -phase);
    }
    state.v.values = v_new;
}

void check_state(const SpectralGrid& grid, const FieldPair& state, double dt,
                 std::size_t step_index) {
    if (!finite(state.u.values) || !finite(state.v.values))
        throw BlowUpError(step_index, "nonfinite field values (blow-up)");
    const double ceiling = 0.5 * grid.dx() / std::max(1.0, max_abs(state.v.values));
    if (dt > ceiling) throw BlowUpError(step_index, "dt exceeds the advective stability ceiling");
}

FieldPair step_with_tables(const SpectralGrid& grid, const FieldPair& state,
                           const ApproxParams& params, double dt, Scheme scheme, bool dealias,
                           const PhaseTables& tables) {
    FieldPair next = state;
    switch (scheme) {
        case Scheme::strang:
            linear_substep(grid, next, tables.schrodinger_half, tables.airy_half);
            nonlinear_substep(grid, next, params, dt, dealias, true);
            linear_substep(grid, next, tables.schrodinger_half, tables.airy_half);
            break;
        case Scheme::lie:
            linear_substep(grid, next, tables.schrodinger_full, tables.airy_full);
            nonlinear_substep(grid, next, params, dt, dealias, false);
            break;
        case Scheme::exp_euler_maruyama: {
            const CVec du = n1(grid, next.u.values, next.v.values, params, dealias);
            const RVec dv = n2(grid, next.u.values, next.v.values, params, dealias);
            for (std::size_t j = 0; j < grid.size(); ++j) {
                next.u.values[j] += dt * du[j];
                next.v.values[j] += dt * dv[j];
            }
            linear_substep(grid, next, tables.schrodinger_full, tables.airy_full);
            break;
        }
    }
    next.time = state.time + dt;
    return next;
}

void add_noise_increment(const SpectralGrid& grid, FieldPair& state, const NoiseSetup& noise,
                         std::uint64_t step_index, double dt, const PhaseTables& tables) {
    CVec inc1 = noise.op1.increment_spectrum(grid, noise.seed, step_index, dt, noise.mode);
    apply_table(tables.schrodinger_full, inc1);
    const CVec inc1_phys = grid.inverse(inc1);
    CVec inc2 = noise.op2.increment_spectrum(grid, noise.seed, step_index, dt, noise.mode);
    apply_table(tables.airy_full, inc2);
    const RVec inc2_phys = grid.inverse_real(inc2);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        state.u.values[j] += inc1_phys[j];
        state.v.values[j] += inc2_phys[j];
    }
}

}  // namespace

FieldPair deterministic_step(const SpectralGrid& grid, const FieldPair& state,
                             const ApproxParams& params, double dt, Scheme scheme, bool dealias) {
    params.validate();
    const PhaseTables tables(grid, dt);
    FieldPair next = step_with_tables(grid, state, params, dt, scheme, dealias, tables);
    check_state(grid, next, dt, 0);
    return next;
}

FieldPair stochastic_step(const SpectralGrid& grid, const FieldPair& state,
                          const ApproxParams& params, const NoiseSetup& noise,
                          std::uint64_t step_index, double dt, Scheme scheme, bool dealias) {
    params.validate();
    const PhaseTables tables(grid, dt);
    FieldPair next = step_with_tables(grid, state, params, dt, scheme, dealias, tables);
    add_noise_increment(grid, next, noise, step_index, dt, tables);
    check_state(grid, next, dt, step_index);
    return next;
}

Trajectory run(const SpectralGrid& grid, const FieldPair& initial, const ApproxParams& params,
               const SchemeConfig& config, const std::optional<NoiseSetup>& noise) {
    params.validate();
    if (!(config.dt > 0.0)) throw std::invalid_argument("run: dt must be positive");
    if (config.t_end < 0.0) throw std::invalid_argument("run: t_end must be nonnegative");
    const double steps_exact = config.t_end / config.dt;
    const auto num_steps = static_cast<std::uint64_t>(std::llround(steps_exact));
    if (std::abs(steps_exact - static_cast<double>(num_steps)) >
        4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, steps_exact))
        throw std::invalid_argument("run: t_end must be an integer multiple of dt");

    FieldPair state = initial;
    state.time = 0.0;
    if (std::isfinite(params.m)) {
        state.u.values = sharp_project(grid, state.u.values, params.m);
        state.v.values = sharp_project(grid, state.v.values, params.m);
    }
    if (std::isfinite(params.n))
        state.v.values = sharp_project(grid, state.v.values, params.n);

    std::optional<NoiseSetup> local_noise = noise;
    if (local_noise && std::isfinite(params.m)) {
        local_noise->op1 = local_noise->op1.mollified(params.m);
        local_noise->op2 = local_noise->op2.mollified(params.m);
    }

    const PhaseTables tables(grid, config.dt);
    Trajectory traj;
    traj.snapshots.push_back(state);
    traj.diagnostics.append(grid, state, params);
    try {
        check_state(grid, state, config.dt, 0);
    } catch (BlowUpError& err) {
        err.partial = std::move(traj);
        throw;
    }

    for (std::uint64_t step = 0; step < num_steps; ++step) {
        try {
            state = step_with_tables(grid, state, params, config.dt, config.scheme, config.dealias,
                                     tables);
            if (local_noise)
                add_noise_increment(grid, state, *local_noise, step, config.dt, tables);
            check_state(grid, state, config.dt, step);
        } catch (BlowUpError& err) {
            err.partial = std::move(traj);
            throw;
        }
        const std::uint64_t done = step + 1;
        if (done % config.diagnostics_stride == 0 || done == num_steps)
            traj.diagnostics.append(grid, state, params);
        if (done % config.snapshot_stride == 0 || done == num_steps)
            traj.snapshots.push_back(state);
    }
    return traj;
}

FieldPair benchmark_initial(const SpectralGrid& grid, double amp_u, double amp_v) {
    FieldPair state;
    state.u.values.resize(grid.size());
    state.v.values.resize(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double x = grid.x(j);
        const double sech = 1.0 / std::cosh(x);
        state.u.values[j] = amp_u * sech * std::polar(1.0, x);
        state.v.values[j] = amp_v * sech * sech;
    }
    return state;
}

}  // namespace skdv
