#include "skdv/functionals.hpp"

#include "skdv/cutoffs.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace skdv {

double quadrature(const SpectralGrid& grid, const RVec& integrand) {
    // Trapezoidal rule on a periodic uniform grid reduces to the rectangle rule.
    double sum = 0.0;
    for (double value : integrand) sum += value;
    return sum * grid.dx();
}

double mass(const SpectralGrid& grid, const CVec& u) {
    const double norm = l2_norm(grid, u);
    return norm * norm;
}

double mass_power(const SpectralGrid& grid, const CVec& u, int k) {
    if (k != 1 && k != 2 && k != 3 && k != 5)
        throw std::invalid_argument("mass_power: k must be in {1,2,3,5}");
    return std::pow(mass(grid, u), k);
}

double momentum_functional(const SpectralGrid& grid, const CVec& u, const RVec& v,
                           const PhysicalConstants& constants) {
    if (constants.gamma2 == 0.0) throw std::invalid_argument("momentum_functional: gamma2 == 0");
    const CVec ux = derivative(grid, u, 1);
    RVec integrand(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j)
        integrand[j] = std::imag(u[j] * std::conj(ux[j]));
    const double vl2 = l2_norm(grid, v);
    return quadrature(grid, integrand) + constants.gamma1 / (2.0 * constants.gamma2) * vl2 * vl2;
}

double energy_functional(const SpectralGrid& grid, const CVec& u, const RVec& v,
                         const PhysicalConstants& constants, double K) {
    if (constants.gamma2 == 0.0) throw std::invalid_argument("energy_functional: gamma2 == 0");
    const double ratio = constants.gamma1 / (2.0 * constants.gamma2);
    const CVec ux = derivative(grid, u, 1);
    const RVec vx = derivative(grid, v, 1);
    RVec integrand(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double amp2 = std::norm(u[j]);
        integrand[j] = std::norm(ux[j]) +
                       ratio * (vx[j] * vx[j] - cutoffs::psi2_K(v[j], K)) +
                       constants.gamma1 * cutoffs::phi_K(amp2, K) * amp2 * v[j] +
                       constants.beta * cutoffs::psi1_K(amp2, K);
    }
    return quadrature(grid, integrand);
}

double predicted_drift_mass(const NoiseOperator& op, int k) {
    const double hs = op.hs_norm(0.0);
    return static_cast<double>(k) * hs * hs;
}

double mass_power_ito_term(const SpectralGrid& grid, const CVec& u, const NoiseOperator& op,
                           int k, ChannelMode mode) {
    if (k < 2) return 0.0;
    double sum = 0.0;
    for (const auto& m : op.modes()) {
        if (m.lambda == 0.0) continue;
        const RVec e = op.mode_samples(grid, m);
        Complex inner(0.0, 0.0);
        for (std::size_t j = 0; j < grid.size(); ++j) inner += u[j] * e[j];
        inner *= grid.dx();
        const double lam2 = m.lambda * m.lambda;
        if (mode == ChannelMode::real_noise)
            sum += lam2 * 2.0 * inner.real() * inner.real();
        else
            sum += lam2 * std::norm(inner);
    }
    const double base = mass(grid, u);
    return static_cast<double>(k) * static_cast<double>(k - 1) * std::pow(base, k - 2) * sum;
}

double predicted_drift_momentum(const SpectralGrid& grid, const NoiseOperator& op1,
                                const NoiseOperator& op2, const PhysicalConstants& constants) {
    if (constants.gamma2 == 0.0) throw std::invalid_argument("predicted_drift_momentum: gamma2 == 0");
    double first = 0.0;
    for (const auto& m : op1.modes()) {
        if (m.lambda == 0.0) continue;
        const RVec e = op1.mode_samples(grid, m);
        const RVec ex = derivative(grid, e, 1);
        RVec integrand(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j) integrand[j] = e[j] * ex[j];
        first += m.lambda * m.lambda * quadrature(grid, integrand);
    }
    const double hs2 = op2.hs_norm(0.0);
    return first + constants.gamma1 / (2.0 * constants.gamma2) * hs2 * hs2;
}

double energy_drift_state_term(const SpectralGrid& grid, const FieldPair& state,
                               const NoiseOperator& op1, const NoiseOperator& op2,
                               const PhysicalConstants& constants, double K, ChannelMode mode) {
    const RVec rho1 = op1.variation_profile(grid);
    const RVec rho2 = op2.variation_profile(grid);
    const double g1 = constants.gamma1;
    const double beta = constants.beta;
    const double ratio4 = g1 / (4.0 * constants.gamma2);
    RVec integrand(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const Complex uj = state.u.values[j];
        const double vj = state.v.values[j];
        const double x = std::norm(uj);
        const double phi = cutoffs::phi_K(x, K);
        const double dphi = cutoffs::phi_K_d1(x, K);
        const double ddphi = cutoffs::phi_K_d2(x, K);
        const double psi = phi + x * dphi;  // psi_K
        double coupling, quartic;
        if (mode == ChannelMode::real_noise) {
            const double a2 = uj.real() * uj.real();
            // 1/2 d^2/da^2 of h(|u|^2) with h' = psi, h'' = 2 phi' + x phi''
            coupling = g1 * vj * (psi + 2.0 * a2 * (2.0 * dphi + x * ddphi));
            quartic = beta * (x * phi + 2.0 * a2 * psi);
        } else {
            // circularly symmetric: 1/4 (d^2/da^2 + d^2/db^2)
            coupling = g1 * vj * (psi + x * (2.0 * dphi + x * ddphi));
            quartic = beta * (x * phi + x * psi);
        }
        const double v_corr =
            ratio4 * (2.0 * vj * cutoffs::phi_K(vj, K) + vj * vj * cutoffs::phi_K_d1(vj, K));
        integrand[j] = coupling * rho1[j] + quartic * rho1[j] - v_corr * rho2[j];
    }
    return quadrature(grid, integrand);
}

EnergyDriftPrediction predicted_drift_energy(const SpectralGrid& grid,
                                             const std::vector<FieldPair>& ensemble,
                                             const NoiseOperator& op1, const NoiseOperator& op2,
                                             const PhysicalConstants& constants, double K,
                                             ChannelMode mode) {
    if (ensemble.empty()) throw std::invalid_argument("predicted_drift_energy: empty ensemble");
    EnergyDriftPrediction out;
    const double hd1 = op1.hs_hdot1_norm();
    const double hd2 = op2.hs_hdot1_norm();
    out.gradient_constant_u = hd1 * hd1;
    out.gradient_constant_v = constants.gamma1 / (2.0 * constants.gamma2) * hd2 * hd2;
    double acc = 0.0;
    for (const auto& state : ensemble)
        acc += energy_drift_state_term(grid, state, op1, op2, constants, K, mode);
    out.state_term_mean = acc / static_cast<double>(ensemble.size());
    return out;
}

double data_moment_bracket(const SpectralGrid& grid, const CVec& u0, const RVec& v0,
                           const NoiseOperator& op1, const NoiseOperator& op2) {
    const double u_l2 = l2_norm(grid, u0);
    const double v_l2 = l2_norm(grid, v0);
    const double phi1 = op1.hs_norm(1.0);
    const double phi2 = op2.hs_norm(1.0);
    RVec u4(grid.size()), v3(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double a = std::norm(u0[j]);
        u4[j] = a * a;
        v3[j] = std::abs(v0[j]) * v0[j] * v0[j];
    }
    const CVec ux = derivative(grid, u0, 1);
    const RVec vx = derivative(grid, v0, 1);
    double bracket = 0.0;
    for (int i : {1, 5})
        bracket += std::pow(u_l2, 2 * i) + std::pow(phi1, 2 * i) + std::pow(phi2, 2 * i);
    bracket += v_l2 * v_l2;
    bracket += std::abs(quadrature(grid, v3));
    bracket += l2_norm(grid, ux) * l2_norm(grid, ux);
    bracket += l2_norm(grid, vx) * l2_norm(grid, vx);
    bracket += quadrature(grid, u4);
    return bracket;
}

void DiagnosticsRecord::append(const SpectralGrid& grid, const FieldPair& state,
                               const ApproxParams& params) {
    const CVec& u = state.u.values;
    const RVec& v = state.v.values;
    time.push_back(state.time);
    const double m = mass(grid, u);
    mass_col.push_back(m);
    mass_p2.push_back(m * m);
    mass_p3.push_back(m * m * m);
    mass_p5.push_back(m * m * m * m * m);
    momentum_col.push_back(momentum_functional(grid, u, v, params.constants));
    energy_col.push_back(energy_functional(grid, u, v, params.constants, params.K));
    u_h1.push_back(sobolev_norm(grid, u, 1.0));
    v_h1.push_back(sobolev_norm(grid, v, 1.0));
    v_l2.push_back(l2_norm(grid, v));
    RVec u4(grid.size()), v3(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double a = std::norm(u[j]);
        u4[j] = a * a;
        v3[j] = std::abs(v[j]) * v[j] * v[j];
    }
    u_l4_4.push_back(quadrature(grid, u4));
    v_l3_3.push_back(std::abs(quadrature(grid, v3)));
}

std::string DiagnosticsRecord::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "time,mass,mass_p2,mass_p3,mass_p5,I,E,u_H1,v_H1,v_L2,u_L4_4,v_L3_3\n";
    for (std::size_t i = 0; i < time.size(); ++i) {
        os << time[i] << ',' << mass_col[i] << ',' << mass_p2[i] << ',' << mass_p3[i] << ','
           << mass_p5[i] << ',' << momentum_col[i] << ',' << energy_col[i] << ',' << u_h1[i] << ','
           << v_h1[i] << ',' << v_l2[i] << ',' << u_l4_4[i] << ',' << v_l3_3[i] << '\n';
    }
    return os.str();
}

}  // namespace skdv
