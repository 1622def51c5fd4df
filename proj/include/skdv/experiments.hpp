#pragma once

#include "skdv/config.hpp"
#include "skdv/integrators.hpp"

#include <string>
#include <vector>

namespace skdv {

/// Ordered compensated (Kahan) sum; the reduction order is fixed by the
/// element order, so repeated runs are bit-identical.
double kahan_total(const std::vector<double>& values);

struct MeanStderr {
    double mean = 0.0;
    double se = 0.0;
};
MeanStderr mean_stderr(const std::vector<double>& values);

struct SlopeEstimate {
    double measured = 0.0;
    double std_error = 0.0;
    double predicted = 0.0;
    double z = 0.0;
};

struct StudyResources {
    SpectralGrid grid;
    ApproxParams params;
    SchemeConfig scheme;
    FieldPair initial;
    NoiseSetup noise;
    bool has_noise = false;
};
StudyResources build_resources(const ExperimentConfig& cfg);

/// Single trajectory with the config's noise (if any).
Trajectory simulate(const ExperimentConfig& cfg);

/// Monte Carlo drift study: per-path endpoint slopes of mass, I and E over
/// [0, t_end] against the Ito predictions. Paths use seed ^ path_index.
/// Blow-up paths are excluded below a 1% rate, otherwise BlowUpError.
struct MCDriftReport {
    std::size_t paths_requested = 0;
    std::size_t paths_used = 0;
    std::size_t blowups = 0;
    SlopeEstimate mass;
    SlopeEstimate momentum;
    SlopeEstimate energy;
    double energy_gradient_u = 0.0;
    double energy_gradient_v = 0.0;
    double energy_state_term = 0.0;
    std::string to_json(const ExperimentConfig& cfg) const;
};
MCDriftReport mc_drift_study(const ExperimentConfig& cfg);

/// One hierarchy ladder (axis 'k', 'n' or 'm') against the infinite-cutoff
/// reference on a common noise path; error in the discrete workspace norm.
struct LadderEntry {
    double value = 0.0;
    double error = 0.0;
    bool blew_up = false;
};
struct ConvergenceReport {
    char axis = 'k';
    std::vector<LadderEntry> entries;  // ladder order, reference (error 0) last
    std::string to_json(const ExperimentConfig& cfg) const;
};
ConvergenceReport converge_study(const ExperimentConfig& cfg, char axis);

/// Deterministic conservation drifts and split-step self-convergence orders.
struct DeterministicReport {
    double mass_drift = 0.0;
    double momentum_drift = 0.0;
    double energy_drift = 0.0;
    double momentum_drift_half = 0.0;
    double energy_drift_half = 0.0;
    double momentum_improvement = 0.0;
    double energy_improvement = 0.0;
    double strang_order = 0.0;
    std::string to_json(const ExperimentConfig& cfg) const;
};
DeterministicReport deterministic_suite(const ExperimentConfig& cfg);

/// Second moment of the discrete stochastic convolution from zero data:
/// E |u(t)|^2_{H^sigma} against t |Phi|^2_{L_2^{0,sigma}}, sigma in {0, 1}.
struct LinearStochasticReport {
    SlopeEstimate sigma0;
    SlopeEstimate sigma1;
    std::string to_json(const ExperimentConfig& cfg) const;
};
LinearStochasticReport linear_stochastic_study(const ExperimentConfig& cfg);

/// Noise-scale scan of the pathwise H^1 a-priori structure: the measured
/// E sup_t(|u|^2_{H^1} + |v|^2_{H^1}) against the data/noise moment bracket.
struct AprioriEntry {
    double lambda0 = 0.0;
    double lhs_mean = 0.0;
    double bracket = 0.0;
    double ratio = 0.0;
    std::size_t blowups = 0;
};
struct AprioriReport {
    std::vector<AprioriEntry> entries;
    double fitted_constant = 0.0;  // max ratio over the scan
    std::string to_json(const ExperimentConfig& cfg) const;
};
AprioriReport apriori_scan(const ExperimentConfig& cfg, const std::vector<double>& lambda_scan);

}  // namespace skdv
