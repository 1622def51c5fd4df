#pragma once

#include "skdv/spectral.hpp"

#include <limits>

namespace skdv {

struct PhysicalConstants {
    double gamma1 = 1.0;
    double gamma2 = 1.0;
    double beta = 1.0;
};

/// Member of the approximation hierarchy. Infinity disables the respective
/// cutoff: m, n are frequency cutoffs (noise / long-wave projection), K is
/// the amplitude cutoff scale. Invariant n >= m when both are finite.
struct ApproxParams {
    double m = std::numeric_limits<double>::infinity();
    double n = std::numeric_limits<double>::infinity();
    double K = std::numeric_limits<double>::infinity();
    PhysicalConstants constants;

    void validate() const;
};

// Free Schroedinger group S(t) = e^{i t d_xx}: modewise e^{-i xi^2 t}.
void schrodinger_propagate_spectrum(const SpectralGrid& grid, CVec& spectrum, double t);
CVec schrodinger_propagate(const SpectralGrid& grid, const CVec& field, double t);

// Airy group U(t) = e^{-t d_xxx}: modewise e^{i xi^3 t}, preserves realness.
void airy_propagate_spectrum(const SpectralGrid& grid, CVec& spectrum, double t);
CVec airy_propagate(const SpectralGrid& grid, const CVec& field, double t);
RVec airy_propagate(const SpectralGrid& grid, const RVec& field, double t);

/// N1 = -i gamma1 psi_K(|u|^2) u v - i beta phi_K(|u|^2) |u|^2 u,
/// evaluated pointwise then dealiased (2/3 rule). K = inf gives the plain
/// nonlinearity.
CVec n1(const SpectralGrid& grid, const CVec& u, const RVec& v, const ApproxParams& params,
        bool dealias = true);

/// N2 = P_n d_x(gamma2 phi_K(|u|^2)|u|^2 - phi_K(v) v^2 / 2).
RVec n2(const SpectralGrid& grid, const CVec& u, const RVec& v, const ApproxParams& params,
        bool dealias = true);

/// (i d_xx u + N1, -d_xxx v + N2)
struct StateDerivative {
    CVec du;
    RVec dv;
};
StateDerivative full_drift(const SpectralGrid& grid, const FieldPair& state,
                           const ApproxParams& params);

}  // namespace skdv
