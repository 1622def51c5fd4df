#include "skdv/dynamics.hpp"

#include "skdv/cutoffs.hpp"

#include <cmath>
#include <stdexcept>

namespace skdv {

void ApproxParams::validate() const {
    if (constants.gamma2 == 0.0) throw std::invalid_argument("ApproxParams: gamma2 must be nonzero");
    if (!(m > 0.0)) throw std::invalid_argument("ApproxParams: m must be positive");
    if (!(n > 0.0)) throw std::invalid_argument("ApproxParams: n must be positive");
    if (!(K > 0.0)) throw std::invalid_argument("ApproxParams: K must be positive");
    if (std::isfinite(m) && std::isfinite(n) && n < m)
        throw std::invalid_argument("ApproxParams: n must be >= m");
}

void schrodinger_propagate_spectrum(const SpectralGrid& grid, CVec& spectrum, double t) {
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double xi = grid.frequency(k);
        spectrum[k] *= std::polar(1.0, -xi * xi * t);
    }
}

CVec schrodinger_propagate(const SpectralGrid& grid, const CVec& field, double t) {
    CVec spectrum = grid.forward(field);
    schrodinger_propagate_spectrum(grid, spectrum, t);
    return grid.inverse(spectrum);
}

void airy_propagate_spectrum(const SpectralGrid& grid, CVec& spectrum, double t) {
    // The unpaired Nyquist bin is exempt: the odd-derivative convention zeroes
    // xi^3 there, so the group generated by the discrete d_xxx fixes it (and a
    // complex phase on that bin would not survive the real return trip).
    const std::size_t nyq = grid.size() / 2;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (k == nyq) continue;
        const double xi = grid.frequency(k);
        spectrum[k] *= std::polar(1.0, xi * xi * xi * t);
    }
}

CVec airy_propagate(const SpectralGrid& grid, const CVec& field, double t) {
    CVec spectrum = grid.forward(field);
    airy_propagate_spectrum(grid, spectrum, t);
    return grid.inverse(spectrum);
}

RVec airy_propagate(const SpectralGrid& grid, const RVec& field, double t) {
    CVec spectrum = grid.forward(field);
    airy_propagate_spectrum(grid, spectrum, t);
    return grid.inverse_real(spectrum);
}

CVec n1(const SpectralGrid& grid, const CVec& u, const RVec& v, const ApproxParams& params,
        bool dealias) {
    const std::size_t n = grid.size();
    if (u.size() != n || v.size() != n) throw std::invalid_argument("n1: field length mismatch");
    const double g1 = params.constants.gamma1;
    const double beta = params.constants.beta;
    CVec out(n);
    const Complex minus_i(0.0, -1.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double amp2 = std::norm(u[j]);
        const double psi = cutoffs::psi_K(amp2, params.K);
        const double phi = cutoffs::phi_K(amp2, params.K);
        out[j] = minus_i * (g1 * psi * u[j] * v[j] + beta * phi * amp2 * u[j]);
    }
    if (dealias) {
        CVec spectrum = grid.forward(out);
        dealias_spectrum(grid, spectrum);
        out = grid.inverse(spectrum);
    }
    return out;
}

RVec n2(const SpectralGrid& grid, const CVec& u, const RVec& v, const ApproxParams& params,
        bool dealias) {
    const std::size_t n = grid.size();
    if (u.size() != n || v.size() != n) throw std::invalid_argument("n2: field length mismatch");
    const double g2 = params.constants.gamma2;
    RVec product(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double amp2 = std::norm(u[j]);
        product[j] = g2 * cutoffs::phi_K(amp2, params.K) * amp2 -
                     0.5 * cutoffs::phi_K(v[j], params.K) * v[j] * v[j];
    }
    CVec spectrum = grid.forward(product);
    if (dealias) dealias_spectrum(grid, spectrum);
    derivative_spectrum(grid, spectrum, 1);
    if (std::isfinite(params.n)) sharp_project_spectrum(grid, spectrum, params.n);
    return grid.inverse_real(spectrum);
}

StateDerivative full_drift(const SpectralGrid& grid, const FieldPair& state,
                           const ApproxParams& params) {
    StateDerivative d;
    d.du = n1(grid, state.u.values, state.v.values, params);
    d.dv = n2(grid, state.u.values, state.v.values, params);
    const CVec lap = derivative(grid, state.u.values, 2);
    const RVec vxxx = derivative(grid, state.v.values, 3);
    const Complex i(0.0, 1.0);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        d.du[j] += i * lap[j];
        d.dv[j] -= vxxx[j];
    }
    return d;
}

}  // namespace skdv
