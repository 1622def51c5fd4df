#pragma once

#include "skdv/dynamics.hpp"
#include "skdv/noise.hpp"
#include "skdv/spectral.hpp"

#include <string>
#include <vector>

namespace skdv {

double quadrature(const SpectralGrid& grid, const RVec& integrand);

double mass(const SpectralGrid& grid, const CVec& u);
double mass_power(const SpectralGrid& grid, const CVec& u, int k);

/// I = int Im(u d_x conj(u)) dx + (gamma1 / 2 gamma2) |v|_{L^2}^2
double momentum_functional(const SpectralGrid& grid, const CVec& u, const RVec& v,
                           const PhysicalConstants& constants);

/// E = int |d_x u|^2 + (gamma1/2gamma2)(|d_x v|^2 - psi2_K(v))
///       + gamma1 phi_K(|u|^2)|u|^2 v + beta psi1_K(|u|^2) dx
double energy_functional(const SpectralGrid& grid, const CVec& u, const RVec& v,
                         const PhysicalConstants& constants, double K);

/// Deterministic slope of E|u(t)|^2_{L^2}: |Phi|^2_{L_2^{0,0}}. For k > 1
/// returns the factor k|Phi|^2 multiplying the running E|u|^{2(k-1)}.
double predicted_drift_mass(const NoiseOperator& op, int k = 1);

/// The k(k-1) Ito term of d|u|^{2k} evaluated on a state:
///   real noise:    k(k-1) |u|^{2(k-2)} sum_i 2 Re(u, Phi e_i)^2
///   complex noise: k(k-1) |u|^{2(k-2)} sum_i |(u, Phi e_i)|^2
double mass_power_ito_term(const SpectralGrid& grid, const CVec& u, const NoiseOperator& op,
                           int k, ChannelMode mode);

/// Slope of E[I(t)]: sum_i (Phi1 e_i, d_x Phi1 e_i) + (gamma1/2gamma2) |Phi2|^2_{L_2^{0,0}}.
/// The first sum vanishes identically on the real trigonometric basis.
double predicted_drift_momentum(const SpectralGrid& grid, const NoiseOperator& op1,
                                const NoiseOperator& op2, const PhysicalConstants& constants);

struct EnergyDriftPrediction {
    double gradient_constant_u;  // sum_i |d_x Phi1 e_i|^2  (homogeneous H^1 sum)
    double gradient_constant_v;  // (gamma1/2gamma2) sum_i |d_x Phi2 e_i|^2
    double state_term_mean;      // ensemble mean of the state-dependent integrands
    double total() const { return gradient_constant_u + gradient_constant_v + state_term_mean; }
};

/// Instantaneous drift of E[E_t] evaluated on an ensemble of states.
/// The gradient corrections are the homogeneous first-order sums obtained by
/// applying the Ito formula to |d_x u|^2 and |d_x v|^2 directly.
/// Throws std::invalid_argument on an empty ensemble.
EnergyDriftPrediction predicted_drift_energy(const SpectralGrid& grid,
                                             const std::vector<FieldPair>& ensemble,
                                             const NoiseOperator& op1, const NoiseOperator& op2,
                                             const PhysicalConstants& constants, double K,
                                             ChannelMode mode);

/// The state-dependent Ito integrand of dE for a single state.
double energy_drift_state_term(const SpectralGrid& grid, const FieldPair& state,
                               const NoiseOperator& op1, const NoiseOperator& op2,
                               const PhysicalConstants& constants, double K, ChannelMode mode);

/// Right-hand data/noise moment bracket of the H^1 a-priori bound for
/// deterministic initial data.
double data_moment_bracket(const SpectralGrid& grid, const CVec& u0, const RVec& v0,
                           const NoiseOperator& op1, const NoiseOperator& op2);

/// Per-snapshot functional time series. Column order matches the CSV schema.
struct DiagnosticsRecord {
    std::vector<double> time;
    std::vector<double> mass_col;
    std::vector<double> mass_p2, mass_p3, mass_p5;
    std::vector<double> momentum_col;   // I
    std::vector<double> energy_col;     // E at the run's K
    std::vector<double> u_h1, v_h1, v_l2;
    std::vector<double> u_l4_4, v_l3_3;

    void append(const SpectralGrid& grid, const FieldPair& state, const ApproxParams& params);
    std::size_t size() const { return time.size(); }
    std::string to_csv() const;
};

}  // namespace skdv
