#include "skdv/experiments.hpp"

#include "skdv/functionals.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace skdv {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

json config_block(const ExperimentConfig& cfg) { return json::parse(serialize_config(cfg)); }

json slope_block(const SlopeEstimate& s) {
    return {{"measured", s.measured},
            {"std_error", s.std_error},
            {"predicted", s.predicted},
            {"z", s.z}};
}

SlopeEstimate make_slope(const std::vector<double>& samples, double predicted) {
    SlopeEstimate out;
    const MeanStderr ms = mean_stderr(samples);
    out.measured = ms.mean;
    out.std_error = ms.se;
    out.predicted = predicted;
    out.z = ms.se > 0.0 ? (ms.mean - predicted) / ms.se
                        : (ms.mean == predicted ? 0.0 : kInf);
    return out;
}

std::uint64_t path_seed(std::uint64_t base, std::size_t path) {
    return base ^ static_cast<std::uint64_t>(path);
}

double final_state_distance(const SpectralGrid& grid, const FieldPair& a, const FieldPair& b) {
    CVec du(grid.size());
    RVec dv(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        du[j] = a.u.values[j] - b.u.values[j];
        dv[j] = a.v.values[j] - b.v.values[j];
    }
    return l2_norm(grid, du) + l2_norm(grid, dv);
}

std::vector<FieldPair> difference_trajectory(const Trajectory& a, const Trajectory& b) {
    if (a.snapshots.size() != b.snapshots.size())
        throw std::logic_error("difference_trajectory: snapshot counts differ");
    std::vector<FieldPair> diff(a.snapshots.size());
    for (std::size_t i = 0; i < a.snapshots.size(); ++i) {
        const FieldPair& sa = a.snapshots[i];
        const FieldPair& sb = b.snapshots[i];
        diff[i].time = sa.time;
        diff[i].u.values.resize(sa.u.values.size());
        diff[i].v.values.resize(sa.v.values.size());
        for (std::size_t j = 0; j < sa.u.values.size(); ++j)
            diff[i].u.values[j] = sa.u.values[j] - sb.u.values[j];
        for (std::size_t j = 0; j < sa.v.values.size(); ++j)
            diff[i].v.values[j] = sa.v.values[j] - sb.v.values[j];
    }
    return diff;
}

double max_relative_drift(const std::vector<double>& series) {
    const double base = std::max(std::abs(series.front()), 1e-30);
    double drift = 0.0;
    for (double value : series) drift = std::max(drift, std::abs(value - series.front()));
    return drift / base;
}

}  // namespace

double kahan_total(const std::vector<double>& values) {
    // Neumaier variant: compensates in both magnitude orders.
    double sum = 0.0, comp = 0.0;
    for (double value : values) {
        const double t = sum + value;
        if (std::abs(sum) >= std::abs(value))
            comp += (sum - t) + value;
        else
            comp += (value - t) + sum;
        sum = t;
    }
    return sum + comp;
}

MeanStderr mean_stderr(const std::vector<double>& values) {
    MeanStderr out;
    if (values.empty()) return out;
    const double n = static_cast<double>(values.size());
    out.mean = kahan_total(values) / n;
    if (values.size() < 2) return out;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - out.mean;
        sq[i] = d * d;
    }
    const double var = kahan_total(sq) / (n - 1.0);
    out.se = std::sqrt(var / n);
    return out;
}

StudyResources build_resources(const ExperimentConfig& cfg) {
    cfg.validate();
    StudyResources res{SpectralGrid(cfg.half_length, cfg.num_points),
                       cfg.approx_params(),
                       cfg.scheme_config(),
                       FieldPair{},
                       NoiseSetup{NoiseOperator::zero(SpectralGrid(cfg.half_length, cfg.num_points), 1),
                                  NoiseOperator::zero(SpectralGrid(cfg.half_length, cfg.num_points), 2),
                                  cfg.seed, cfg.channel_mode},
                       false};
    res.initial = benchmark_initial(res.grid, cfg.amp_u, cfg.amp_v);
    if (cfg.lambda0 > 0.0) {
        res.noise.op1 =
            NoiseOperator::power_law(res.grid, cfg.lambda0, cfg.decay_r, cfg.num_modes, 1);
        res.noise.op2 =
            NoiseOperator::power_law(res.grid, cfg.lambda0, cfg.decay_r, cfg.num_modes, 2);
        res.has_noise = true;
    }
    return res;
}

Trajectory simulate(const ExperimentConfig& cfg) {
    const StudyResources res = build_resources(cfg);
    if (res.has_noise) return run(res.grid, res.initial, res.params, res.scheme, res.noise);
    return run(res.grid, res.initial, res.params, res.scheme);
}

MCDriftReport mc_drift_study(const ExperimentConfig& cfg) {
    StudyResources res = build_resources(cfg);
    const double T = cfg.t_end;
    if (!(T > 0.0)) throw std::invalid_argument("mc_drift_study: t_end must be positive");
    const auto num_steps = static_cast<std::size_t>(std::llround(T / cfg.dt));

    SchemeConfig scheme = res.scheme;
    scheme.diagnostics_stride = num_steps;
    scheme.snapshot_stride = std::max<std::size_t>(1, num_steps / 4);

    NoiseOperator op1 = res.noise.op1;
    NoiseOperator op2 = res.noise.op2;
    if (std::isfinite(res.params.m) && res.has_noise) {
        op1 = op1.mollified(res.params.m);
        op2 = op2.mollified(res.params.m);
    }

    MCDriftReport report;
    report.paths_requested = cfg.num_paths;
    std::vector<double> mass_slopes, mom_slopes, energy_slopes, state_terms;
    mass_slopes.reserve(cfg.num_paths);
    mom_slopes.reserve(cfg.num_paths);
    energy_slopes.reserve(cfg.num_paths);
    state_terms.reserve(cfg.num_paths);

    for (std::size_t p = 0; p < cfg.num_paths; ++p) {
        NoiseSetup noise = res.noise;
        noise.seed = path_seed(cfg.seed, p);
        Trajectory traj;
        try {
            traj = res.has_noise ? run(res.grid, res.initial, res.params, scheme, noise)
                                 : run(res.grid, res.initial, res.params, scheme);
        } catch (const BlowUpError&) {
            ++report.blowups;
            continue;
        }
        const DiagnosticsRecord& d = traj.diagnostics;
        mass_slopes.push_back((d.mass_col.back() - d.mass_col.front()) / T);
        mom_slopes.push_back((d.momentum_col.back() - d.momentum_col.front()) / T);
        energy_slopes.push_back((d.energy_col.back() - d.energy_col.front()) / T);

        // Trapezoidal time average of the state-dependent Ito integrand of dE.
        const auto& snaps = traj.snapshots;
        double acc = 0.0;
        double prev_term = 0.0, prev_time = 0.0;
        for (std::size_t i = 0; i < snaps.size(); ++i) {
            const double term = energy_drift_state_term(res.grid, snaps[i], op1, op2,
                                                        res.params.constants, res.params.K,
                                                        cfg.channel_mode);
            if (i > 0) acc += 0.5 * (term + prev_term) * (snaps[i].time - prev_time);
            prev_term = term;
            prev_time = snaps[i].time;
        }
        state_terms.push_back(acc / T);
    }

    report.paths_used = mass_slopes.size();
    if (report.blowups * 100 > report.paths_requested)
        throw BlowUpError(0, "mc_drift_study: blow-up rate exceeds 1%");
    if (report.paths_used == 0) throw BlowUpError(0, "mc_drift_study: no surviving paths");

    const double mass_pred = res.has_noise ? predicted_drift_mass(op1, 1) : 0.0;
    const double mom_pred =
        res.has_noise ? predicted_drift_momentum(res.grid, op1, op2, res.params.constants) : 0.0;
    report.energy_state_term = mean_stderr(state_terms).mean;
    if (res.has_noise) {
        const double hd1 = op1.hs_hdot1_norm();
        const double hd2 = op2.hs_hdot1_norm();
        report.energy_gradient_u = hd1 * hd1;
        report.energy_gradient_v =
            res.params.constants.gamma1 / (2.0 * res.params.constants.gamma2) * hd2 * hd2;
    }
    const double energy_pred =
        report.energy_gradient_u + report.energy_gradient_v + report.energy_state_term;

    report.mass = make_slope(mass_slopes, mass_pred);
    report.momentum = make_slope(mom_slopes, mom_pred);
    report.energy = make_slope(energy_slopes, energy_pred);
    return report;
}

std::string MCDriftReport::to_json(const ExperimentConfig& cfg) const {
    json root;
    root["config"] = config_block(cfg);
    root["study"] = "mc-drift";
    root["paths_requested"] = paths_requested;
    root["paths_used"] = paths_used;
    root["blowups"] = blowups;
    root["mass"] = slope_block(mass);
    root["momentum"] = slope_block(momentum);
    root["energy"] = slope_block(energy);
    root["energy_parts"] = {{"gradient_u", energy_gradient_u},
                            {"gradient_v", energy_gradient_v},
                            {"state_term", energy_state_term}};
    return root.dump(2);
}

ConvergenceReport converge_study(const ExperimentConfig& cfg, char axis) {
    if (axis != 'k' && axis != 'n' && axis != 'm')
        throw std::invalid_argument("converge_study: axis must be 'k', 'n' or 'm'");
    StudyResources res = build_resources(cfg);

    std::vector<double> ladder = cfg.ladder;
    if (ladder.empty()) {
        if (axis == 'k') ladder = {2.0, 4.0, 8.0};
        if (axis == 'n') ladder = {8.0, 16.0, 32.0};
        if (axis == 'm') ladder = {0.5, 1.0, 2.0};
    }

    ApproxParams base = res.params;
    if (axis == 'n' && !std::isfinite(base.m)) {
        // The long-wave ladder runs at a fixed finite noise band.
        double lowest = kInf;
        for (double v : ladder) lowest = std::min(lowest, v);
        base.m = std::min(4.0, lowest);
    }

    auto with_axis = [&](double value) {
        ApproxParams p = base;
        if (axis == 'k') p.K = value;
        if (axis == 'n') p.n = value;
        if (axis == 'm') p.m = value;
        return p;
    };

    auto run_member = [&](const ApproxParams& p) {
        if (res.has_noise) return run(res.grid, res.initial, p, res.scheme, res.noise);
        return run(res.grid, res.initial, p, res.scheme);
    };

    ConvergenceReport report;
    report.axis = axis;
    const Trajectory reference = run_member(with_axis(kInf));
    for (double value : ladder) {
        LadderEntry entry;
        entry.value = value;
        try {
            const Trajectory member = run_member(with_axis(value));
            entry.error =
                workspace_norm(res.grid, difference_trajectory(member, reference), 1.0);
        } catch (const BlowUpError&) {
            entry.blew_up = true;
            entry.error = std::numeric_limits<double>::quiet_NaN();
        }
        report.entries.push_back(entry);
    }
    report.entries.push_back({kInf, 0.0, false});
    return report;
}

std::string ConvergenceReport::to_json(const ExperimentConfig& cfg) const {
    json root;
    root["config"] = config_block(cfg);
    root["study"] = std::string("converge-") + axis;
    json table = json::array();
    for (const LadderEntry& e : entries) {
        json row;
        row["value"] = std::isinf(e.value) ? json("inf") : json(e.value);
        row["error"] = e.blew_up ? json("blow-up") : json(e.error);
        table.push_back(row);
    }
    root["ladder"] = table;
    return root.dump(2);
}

DeterministicReport deterministic_suite(const ExperimentConfig& cfg) {
    StudyResources res = build_resources(cfg);
    const auto num_steps = static_cast<std::size_t>(std::llround(cfg.t_end / cfg.dt));
    if (num_steps == 0) throw std::invalid_argument("deterministic_suite: t_end must be positive");

    auto conservation = [&](double dt) {
        SchemeConfig scheme = res.scheme;
        scheme.dt = dt;
        scheme.diagnostics_stride = 1;
        scheme.snapshot_stride = static_cast<std::size_t>(std::llround(cfg.t_end / dt));
        return run(res.grid, res.initial, res.params, scheme).diagnostics;
    };
    const DiagnosticsRecord full = conservation(cfg.dt);
    const DiagnosticsRecord half = conservation(cfg.dt / 2.0);

    DeterministicReport report;
    report.mass_drift = max_relative_drift(full.mass_col);
    report.momentum_drift = max_relative_drift(full.momentum_col);
    report.energy_drift = max_relative_drift(full.energy_col);
    report.momentum_drift_half = max_relative_drift(half.momentum_col);
    report.energy_drift_half = max_relative_drift(half.energy_col);
    report.momentum_improvement = report.momentum_drift / std::max(report.momentum_drift_half, 1e-300);
    report.energy_improvement = report.energy_drift / std::max(report.energy_drift_half, 1e-300);

    auto final_state = [&](double dt) {
        SchemeConfig scheme = res.scheme;
        scheme.dt = dt;
        scheme.diagnostics_stride = static_cast<std::size_t>(std::llround(cfg.t_end / dt));
        scheme.snapshot_stride = scheme.diagnostics_stride;
        return run(res.grid, res.initial, res.params, scheme).snapshots.back();
    };
    const FieldPair reference = final_state(cfg.dt / 16.0);
    const double e1 = final_state_distance(res.grid, final_state(cfg.dt), reference);
    const double e2 = final_state_distance(res.grid, final_state(cfg.dt / 2.0), reference);
    report.strang_order = std::log2(e1 / e2);
    return report;
}

std::string DeterministicReport::to_json(const ExperimentConfig& cfg) const {
    json root;
    root["config"] = config_block(cfg);
    root["study"] = "deterministic-suite";
    root["mass_drift"] = mass_drift;
    root["momentum_drift"] = momentum_drift;
    root["energy_drift"] = energy_drift;
    root["momentum_drift_half_dt"] = momentum_drift_half;
    root["energy_drift_half_dt"] = energy_drift_half;
    root["momentum_improvement"] = momentum_improvement;
    root["energy_improvement"] = energy_improvement;
    root["self_convergence_order"] = strang_order;
    return root.dump(2);
}

LinearStochasticReport linear_stochastic_study(const ExperimentConfig& cfg) {
    StudyResources res = build_resources(cfg);
    const auto num_steps = static_cast<std::uint64_t>(std::llround(cfg.t_end / cfg.dt));
    if (num_steps == 0)
        throw std::invalid_argument("linear_stochastic_study: t_end must be positive");

    NoiseOperator op1 = res.noise.op1;
    if (std::isfinite(res.params.m) && res.has_noise) op1 = op1.mollified(res.params.m);

    const std::size_t n = res.grid.size();
    CVec table(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double xi = res.grid.frequency(k);
        table[k] = std::polar(1.0, -xi * xi * cfg.dt);
    }

    std::vector<double> h0(cfg.num_paths), h1(cfg.num_paths);
    for (std::size_t p = 0; p < cfg.num_paths; ++p) {
        const std::uint64_t seed = path_seed(cfg.seed, p);
        CVec state(n, Complex(0.0, 0.0));
        for (std::uint64_t step = 0; step < num_steps; ++step) {
            const CVec inc = op1.increment_spectrum(res.grid, seed, step, cfg.dt, cfg.channel_mode);
            for (std::size_t k = 0; k < n; ++k) state[k] = table[k] * (state[k] + inc[k]);
        }
        double s0 = 0.0, s1 = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double xi = res.grid.frequency(k);
            const double p2 = std::norm(state[k]);
            s0 += p2;
            s1 += (1.0 + xi * xi) * p2;
        }
        h0[p] = s0 * res.grid.dx();
        h1[p] = s1 * res.grid.dx();
    }

    LinearStochasticReport report;
    const double hs0 = op1.hs_norm(0.0);
    const double hs1 = op1.hs_norm(1.0);
    report.sigma0 = make_slope(h0, cfg.t_end * hs0 * hs0);
    report.sigma1 = make_slope(h1, cfg.t_end * hs1 * hs1);
    return report;
}

std::string LinearStochasticReport::to_json(const ExperimentConfig& cfg) const {
    json root;
    root["config"] = config_block(cfg);
    root["study"] = "linear-stochastic";
    root["sigma0"] = slope_block(sigma0);
    root["sigma1"] = slope_block(sigma1);
    return root.dump(2);
}

AprioriReport apriori_scan(const ExperimentConfig& cfg, const std::vector<double>& lambda_scan) {
    if (lambda_scan.empty()) throw std::invalid_argument("apriori_scan: empty scan");
    if (cfg.constants.gamma1 * cfg.constants.gamma2 <= 0.0)
        throw std::invalid_argument("apriori_scan: requires gamma1 * gamma2 > 0");
    AprioriReport report;
    for (double lambda0 : lambda_scan) {
        ExperimentConfig local = cfg;
        local.lambda0 = lambda0;
        StudyResources res = build_resources(local);
        const auto num_steps = static_cast<std::size_t>(std::llround(cfg.t_end / cfg.dt));
        SchemeConfig scheme = res.scheme;
        scheme.diagnostics_stride = 1;
        scheme.snapshot_stride = std::max<std::size_t>(1, num_steps);

        AprioriEntry entry;
        entry.lambda0 = lambda0;
        std::vector<double> sups;
        for (std::size_t p = 0; p < local.num_paths; ++p) {
            NoiseSetup noise = res.noise;
            noise.seed = path_seed(local.seed, p);
            Trajectory traj;
            try {
                traj = res.has_noise ? run(res.grid, res.initial, res.params, scheme, noise)
                                     : run(res.grid, res.initial, res.params, scheme);
            } catch (const BlowUpError&) {
                ++entry.blowups;
                continue;
            }
            double sup = 0.0;
            for (std::size_t i = 0; i < traj.diagnostics.size(); ++i)
                sup = std::max(sup, traj.diagnostics.u_h1[i] * traj.diagnostics.u_h1[i] +
                                        traj.diagnostics.v_h1[i] * traj.diagnostics.v_h1[i]);
            sups.push_back(sup);
        }
        if (sups.empty()) throw BlowUpError(0, "apriori_scan: all paths blew up");
        entry.lhs_mean = mean_stderr(sups).mean;

        NoiseOperator op1 = res.noise.op1;
        NoiseOperator op2 = res.noise.op2;
        if (std::isfinite(res.params.m) && res.has_noise) {
            op1 = op1.mollified(res.params.m);
            op2 = op2.mollified(res.params.m);
        }
        FieldPair data = res.initial;
        if (std::isfinite(res.params.m)) {
            data.u.values = sharp_project(res.grid, data.u.values, res.params.m);
            data.v.values = sharp_project(res.grid, data.v.values, res.params.m);
        }
        entry.bracket = data_moment_bracket(res.grid, data.u.values, data.v.values, op1, op2);
        entry.ratio = entry.bracket > 0.0 ? entry.lhs_mean / entry.bracket : 0.0;
        report.fitted_constant = std::max(report.fitted_constant, entry.ratio);
        report.entries.push_back(entry);
    }
    return report;
}

std::string AprioriReport::to_json(const ExperimentConfig& cfg) const {
    json root;
    root["config"] = config_block(cfg);
    root["study"] = "apriori-scan";
    json table = json::array();
    for (const AprioriEntry& e : entries)
        table.push_back({{"lambda0", e.lambda0},
                         {"lhs_mean", e.lhs_mean},
                         {"bracket", e.bracket},
                         {"ratio", e.ratio},
                         {"blowups", e.blowups}});
    root["scan"] = table;
    root["fitted_constant"] = fitted_constant;
    return root.dump(2);
}

}  // namespace skdv
