#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace skdv {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;
using RVec = std::vector<double>;

/// Periodic pseudospectral grid on [-L, L) with N equispaced points.
///
/// The discrete transforms use the unitary convention (1/sqrt(N) in both
/// directions), so the plain coefficient sums satisfy Parseval exactly.
/// Physical-space L^2 norms carry the quadrature weight dx = 2L/N.
class SpectralGrid {
public:
    SpectralGrid(double half_length, std::size_t num_points);

    double half_length() const { return half_length_; }
    std::size_t size() const { return n_; }
    double dx() const { return 2.0 * half_length_ / static_cast<double>(n_); }
    double x(std::size_t j) const { return -half_length_ + dx() * static_cast<double>(j); }

    /// Signed lattice frequency of FFT bin k: xi = (pi/L) * k for k in [-N/2, N/2).
    double frequency(std::size_t bin) const;
    double frequency_spacing() const { return 3.14159265358979323846 / half_length_; }
    double nyquist_frequency() const;

    /// Unitary DFT of a physical field; throws std::invalid_argument on length mismatch.
    CVec forward(const CVec& physical) const;
    CVec forward(const RVec& physical) const;
    CVec inverse(const CVec& spectrum) const;
    RVec inverse_real(const CVec& spectrum) const;

    bool operator==(const SpectralGrid& other) const {
        return half_length_ == other.half_length_ && n_ == other.n_;
    }

private:
    void fft(CVec& a, bool invert) const;

    double half_length_;
    std::size_t n_;
    std::vector<std::size_t> bit_reverse_;
    CVec roots_;  // e^{-2*pi*i*j/N}, j = 0..N-1
};

struct ComplexField {
    CVec values;
};

struct RealField {
    RVec values;
};

struct FieldPair {
    ComplexField u;
    RealField v;
    double time = 0.0;
};

// Spectral derivative via the (i*xi)^order multiplier. Odd orders zero the
// unpaired Nyquist bin so realness survives. order in {1,2,3}.
CVec derivative(const SpectralGrid& grid, const CVec& field, int order);
RVec derivative(const SpectralGrid& grid, const RVec& field, int order);
void derivative_spectrum(const SpectralGrid& grid, CVec& spectrum, int order);

// Sharp projection P_m: zero every mode with |xi| > cutoff.
CVec sharp_project(const SpectralGrid& grid, const CVec& field, double cutoff);
RVec sharp_project(const SpectralGrid& grid, const RVec& field, double cutoff);
void sharp_project_spectrum(const SpectralGrid& grid, CVec& spectrum, double cutoff);

// Smooth tail projection P~_{>n}: multiplier 1 for |xi| >= n, 0 for |xi| <= n/2.
CVec smooth_tail_project(const SpectralGrid& grid, const CVec& field, double n);
void smooth_tail_project_spectrum(const SpectralGrid& grid, CVec& spectrum, double n);

// 2/3-rule dealiasing: zero bins with signed index magnitude > N/3.
void dealias_spectrum(const SpectralGrid& grid, CVec& spectrum);

double l2_norm(const SpectralGrid& grid, const CVec& field);
double l2_norm(const SpectralGrid& grid, const RVec& field);
double sobolev_norm(const SpectralGrid& grid, const CVec& field, double s);
double sobolev_norm(const SpectralGrid& grid, const RVec& field, double s);

/// Discrete surrogate of the X_sigma(T) trajectory norm:
///   max_t(|u(t)|_{H^s} + |v(t)|_{H^s}) + |max_t|u||_{L^2} + |max_t|v||_{L^2}.
/// Throws std::invalid_argument on an empty trajectory.
double workspace_norm(const SpectralGrid& grid, const std::vector<FieldPair>& trajectory,
                      double s);

}  // namespace skdv
