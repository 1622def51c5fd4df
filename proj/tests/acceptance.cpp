// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria are quantitative; every tolerance is pinned here.
#include "skdv/cutoffs.hpp"
#include "skdv/experiments.hpp"
#include "skdv/functionals.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

using namespace skdv;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

int failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", value);
    return buf;
}

// ---------------------------------------------------------------- criterion 1
void criterion_spectral() {
    const SpectralGrid grid(16.0 * kPi, 1024);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    CVec field(grid.size());
    for (auto& z : field) z = Complex(gauss(rng), gauss(rng));

    const CVec spectrum = grid.forward(field);
    const CVec back = grid.inverse(spectrum);
    double roundtrip = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j)
        roundtrip = std::max(roundtrip, std::abs(back[j] - field[j]));

    double phys = 0.0, spec = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        phys += std::norm(field[j]);
        spec += std::norm(spectrum[j]);
    }
    const double parseval = std::abs(phys - spec) / phys;

    // Projections are 0/1 Fourier multipliers, so idempotence and nesting are
    // exact on spectra; composing through physical space is bounded by the
    // transform round-trip roundoff, checked separately below.
    CVec p4 = spectrum;
    sharp_project_spectrum(grid, p4, 4.0);
    CVec p4_twice = p4;
    sharp_project_spectrum(grid, p4_twice, 4.0);
    CVec p2_of_p4 = p4;
    sharp_project_spectrum(grid, p2_of_p4, 2.0);
    CVec p2 = spectrum;
    sharp_project_spectrum(grid, p2, 2.0);
    double idem = 0.0, nest = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        idem = std::max(idem, std::abs(p4_twice[j] - p4[j]));
        nest = std::max(nest, std::abs(p2_of_p4[j] - p2[j]));
    }
    const CVec p4_field_twice = sharp_project(grid, sharp_project(grid, field, 4.0), 4.0);
    const CVec p4_field = grid.inverse(p4);
    double idem_field = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j)
        idem_field = std::max(idem_field, std::abs(p4_field_twice[j] - p4_field[j]));

    // Tail identity: the smooth tail multiplier is exactly 1 above n and the
    // (I - P_n) spectrum is exactly zero at and below n, so applying the tail
    // multiplier to it changes nothing.
    CVec high_spec = spectrum;
    {
        CVec low = spectrum;
        sharp_project_spectrum(grid, low, 8.0);
        for (std::size_t j = 0; j < grid.size(); ++j) high_spec[j] -= low[j];
    }
    CVec tail_spec = high_spec;
    smooth_tail_project_spectrum(grid, tail_spec, 8.0);
    double tail = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j)
        tail = std::max(tail, std::abs(tail_spec[j] - high_spec[j]));

    const bool pass = roundtrip < 1e-12 && parseval < 1e-12 && idem == 0.0 && nest == 0.0 &&
                      tail == 0.0 && idem_field < 1e-12;
    report(1, "spectral core properties", pass,
           "roundtrip " + fmt(roundtrip) + ", parseval " + fmt(parseval) + ", idem " + fmt(idem) +
               ", nest " + fmt(nest) + ", tail " + fmt(tail) + ", idem(field) " +
               fmt(idem_field));
}

// ------------------------------------------------------------ criteria 2 + 3
void criterion_conservation_and_order() {
    ExperimentConfig cfg;  // defaults: N=1024, L=16pi, dt=1e-3, t_end=1
    cfg.lambda0 = 0.0;
    const DeterministicReport suite = deterministic_suite(cfg);

    const bool pass2 = suite.mass_drift < 1e-10 && suite.momentum_drift < 1e-6 &&
                       suite.energy_drift < 1e-6 && suite.momentum_improvement >= 3.5 &&
                       suite.energy_improvement >= 3.5;
    report(2, "deterministic conservation", pass2,
           "mass " + fmt(suite.mass_drift) + ", I " + fmt(suite.momentum_drift) + ", E " +
               fmt(suite.energy_drift) + ", I x" + fmt(suite.momentum_improvement) + ", E x" +
               fmt(suite.energy_improvement));

    const bool pass3 = suite.strang_order >= 1.9;
    report(3, "strang self-convergence order", pass3, "order " + fmt(suite.strang_order));
}

// ---------------------------------------------------------------- criterion 4
void criterion_linear_stochastic() {
    ExperimentConfig cfg;
    cfg.amp_u = 0.0;
    cfg.amp_v = 0.0;
    cfg.t_end = 0.5;
    cfg.num_paths = 2000;
    cfg.seed = 20260825;
    const LinearStochasticReport rep = linear_stochastic_study(cfg);
    const bool pass = std::abs(rep.sigma0.z) < 3.0 && std::abs(rep.sigma1.z) < 3.0;
    report(4, "linear stochastic second moment", pass,
           "z(sigma=0) " + fmt(rep.sigma0.z) + ", z(sigma=1) " + fmt(rep.sigma1.z));
}

// ----------------------------------------------------------- criteria 5 + 6
void criterion_mass_momentum_drift() {
    ExperimentConfig cfg;
    cfg.t_end = 0.25;
    cfg.num_paths = 2000;
    cfg.amp_u = 1.0;
    cfg.amp_v = 1.0;
    cfg.K = 8.0;  // active cutoff machinery, plateau on this data
    cfg.seed = 31415;
    const MCDriftReport rep = mc_drift_study(cfg);
    const bool pass5 = std::abs(rep.mass.z) < 3.0 && rep.blowups == 0;
    report(5, "mass drift identity", pass5,
           "slope " + fmt(rep.mass.measured) + " vs " + fmt(rep.mass.predicted) + ", z " +
               fmt(rep.mass.z));
    const bool pass6 = std::abs(rep.momentum.z) < 3.0;
    report(6, "momentum drift identity", pass6,
           "slope " + fmt(rep.momentum.measured) + " vs " + fmt(rep.momentum.predicted) + ", z " +
               fmt(rep.momentum.z));
}

// ---------------------------------------------------------------- criterion 7
void criterion_energy_drift() {
    // Linear regime: zero data, short horizon; the drift of E[E_t] is the
    // closed-form gradient correction (the homogeneous first-order sums).
    ExperimentConfig lin;
    lin.amp_u = 0.0;
    lin.amp_v = 0.0;
    lin.t_end = 0.2;
    lin.num_paths = 1000;
    lin.seed = 2718;
    const MCDriftReport lin_rep = mc_drift_study(lin);
    const double lin_pred = lin_rep.energy_gradient_u + lin_rep.energy_gradient_v;
    const double lin_z = lin_rep.energy.std_error > 0.0
                             ? (lin_rep.energy.measured - lin_pred) / lin_rep.energy.std_error
                             : kInf;

    // Full cutoff system at small amplitude against the ensemble-evaluated
    // state-dependent drift.
    ExperimentConfig full;
    full.amp_u = 0.5;
    full.amp_v = 0.5;
    full.K = 2.0;
    full.t_end = 0.25;
    full.num_paths = 1000;
    full.seed = 1618;
    const MCDriftReport full_rep = mc_drift_study(full);

    const bool pass = std::abs(lin_z) < 3.0 && std::abs(full_rep.energy.z) < 3.0;
    report(7, "energy drift identity", pass,
           "linear z " + fmt(lin_z) + ", cutoff z " + fmt(full_rep.energy.z) + " (grad_u " +
               fmt(full_rep.energy_gradient_u) + ", grad_v " + fmt(full_rep.energy_gradient_v) +
               ", state " + fmt(full_rep.energy_state_term) + ")");
}

// ---------------------------------------------------------------- criterion 8
void criterion_cutoff_equivalence() {
    ExperimentConfig cfg;
    cfg.amp_u = 0.5;  // max |u|^2 = 0.25, max |v| = 0.5: inside the K=4 plateau
    cfg.amp_v = 0.5;
    cfg.t_end = 0.25;
    cfg.lambda0 = 0.05;
    cfg.seed = 55;
    cfg.ladder = {4.0};
    const ConvergenceReport rep = converge_study(cfg, 'k');
    const double err = rep.entries.front().error;
    report(8, "cutoff equivalence on the plateau", err < 1e-10, "workspace error " + fmt(err));
}

// ---------------------------------------------------------------- criterion 9
void criterion_hierarchy() {
    auto nonincreasing = [](const ConvergenceReport& rep) {
        for (std::size_t i = 1; i + 1 < rep.entries.size(); ++i) {
            if (rep.entries[i].blew_up || rep.entries[i - 1].blew_up) return false;
            if (rep.entries[i].error > rep.entries[i - 1].error * 1.1) return false;
        }
        return true;
    };

    ExperimentConfig kc;
    kc.amp_u = 2.5;  // large enough to activate the amplitude cutoffs
    kc.amp_v = 1.0;
    kc.t_end = 0.25;
    kc.seed = 100;
    kc.ladder = {2.0, 4.0, 8.0};
    const ConvergenceReport krep = converge_study(kc, 'k');

    ExperimentConfig nc;
    nc.amp_u = 1.0;
    nc.amp_v = 1.0;
    nc.t_end = 0.25;
    nc.lambda0 = 0.0;  // smooth deterministic data pins the spectral tail decay
    nc.m = 2.0;
    nc.seed = 100;
    nc.ladder = {4.0, 8.0, 16.0};
    const ConvergenceReport nrep = converge_study(nc, 'n');
    // > 10x drop per doubling past the data bandwidth, before the machine floor.
    bool n_fast = false;
    for (std::size_t i = 1; i + 1 < nrep.entries.size(); ++i) {
        const double prev = nrep.entries[i - 1].error, cur = nrep.entries[i].error;
        if (prev > 1e-12 && cur > 0.0 && prev / cur > 10.0) n_fast = true;
        if (prev > 1e-12 && cur == 0.0) n_fast = true;
    }

    ExperimentConfig mc;
    mc.amp_u = 1.0;
    mc.amp_v = 1.0;
    mc.t_end = 0.25;
    mc.seed = 100;
    mc.ladder = {0.5, 1.0, 2.0};
    const ConvergenceReport mrep = converge_study(mc, 'm');

    auto errs = [](const ConvergenceReport& rep) {
        std::string out;
        for (std::size_t i = 0; i + 1 < rep.entries.size(); ++i)
            out += (i ? " " : "") + fmt(rep.entries[i].error);
        return out;
    };
    const bool pass = nonincreasing(krep) && nonincreasing(nrep) && nonincreasing(mrep) && n_fast;
    report(9, "hierarchy ladder convergence", pass,
           "K [" + errs(krep) + "], n [" + errs(nrep) + "], m [" + errs(mrep) + "], n-drop>10x " +
               (n_fast ? "yes" : "no"));
}

// --------------------------------------------------------------- criterion 10
void criterion_apriori() {
    ExperimentConfig cfg;
    cfg.t_end = 0.5;
    cfg.num_paths = 100;
    cfg.seed = 424242;
    AprioriReport rep;
    bool blew = false;
    try {
        rep = apriori_scan(cfg, {0.05, 0.1, 0.2});
    } catch (const BlowUpError&) {
        blew = true;
    }
    bool pass = !blew;
    std::string detail = "blow-up during scan";
    if (!blew) {
        double lo = kInf, hi = 0.0;
        std::size_t blowups = 0;
        for (const AprioriEntry& e : rep.entries) {
            lo = std::min(lo, e.ratio);
            hi = std::max(hi, e.ratio);
            blowups += e.blowups;
        }
        // Bounded by the single fitted constant by construction; the content
        // is stability of the ratio across the noise scan and no blow-up.
        pass = blowups == 0 && lo > 0.0 && hi / lo < 3.0;
        detail = "ratios in [" + fmt(lo) + ", " + fmt(hi) + "], C " + fmt(rep.fitted_constant) +
                 ", blowups " + std::to_string(blowups);
    }
    report(10, "a-priori bound structure", pass, detail);
}

// --------------------------------------------------------------- criterion 11
void criterion_determinism() {
    ExperimentConfig cfg;
    cfg.num_points = 256;
    cfg.t_end = 0.05;
    cfg.seed = 97;
    const std::string a = simulate(cfg).diagnostics.to_csv();
    const std::string b = simulate(cfg).diagnostics.to_csv();
    cfg.seed = 98;
    const std::string c = simulate(cfg).diagnostics.to_csv();
    const bool pass = a == b && a != c;
    report(11, "bit-identical determinism", pass,
           a == b ? "identical CSV; distinct seed differs" : "CSV mismatch for identical seed");
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_spectral();
    criterion_determinism();
    criterion_conservation_and_order();
    criterion_cutoff_equivalence();
    criterion_hierarchy();
    criterion_linear_stochastic();
    criterion_mass_momentum_drift();
    criterion_energy_drift();
    criterion_apriori();
    const auto dt = std::chrono::duration_cast<std::chrono::seconds>(
        std::chrono::steady_clock::now() - t0);
    std::printf("%s: %d criterion(s) failed, %llds total\n", failures ? "FAILURE" : "SUCCESS",
                failures, static_cast<long long>(dt.count()));
    return failures == 0 ? 0 : 1;
}
