#pragma once

#include "skdv/spectral.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace skdv {

enum class ChannelMode { real_noise, complex_noise };

/// Philox4x32-10 counter-based generator. One (key, counter) pair yields
/// four 32-bit words; Gaussians are produced by Box-Muller on two 64-bit
/// uniforms, so a draw is a pure function of its indices.
struct Philox {
    static std::array<std::uint32_t, 4> block(std::uint64_t key,
                                              const std::array<std::uint32_t, 4>& counter);
    /// Standard normal keyed by (seed, step, mode, slot).
    static double gaussian(std::uint64_t seed, std::uint64_t step, std::uint32_t mode,
                           std::uint32_t slot);
};

/// One real trigonometric basis mode of L^2([-L,L)): the constant, or a
/// cosine/sine at wavenumber k (frequency xi = k*pi/L), all unit L^2 norm.
struct NoiseMode {
    enum Kind { constant, cosine, sine };
    Kind kind;
    std::size_t wavenumber;  // 0 for the constant mode
    double lambda;
};

/// Diagonal Hilbert-Schmidt operator Phi over the trigonometric basis.
class NoiseOperator {
public:
    /// Power-law spectrum lambda_i = lambda0 * (1 + xi_i^2)^{-r/2} over
    /// num_modes modes ordered constant, cos_1, sin_1, cos_2, ...
    static NoiseOperator power_law(const SpectralGrid& grid, double lambda0, double decay_r,
                                   std::size_t num_modes, int channel);

    static NoiseOperator zero(const SpectralGrid& grid, int channel);

    const std::vector<NoiseMode>& modes() const { return modes_; }
    int channel() const { return channel_; }
    double frequency(const NoiseMode& mode) const;

    /// (sum_i lambda_i^2 (1+xi_i^2)^s)^{1/2}
    double hs_norm(double s) const;
    /// Homogeneous first-order sum: (sum_i |d/dx Phi e_i|_{L^2}^2)^{1/2} = (sum lambda_i^2 xi_i^2)^{1/2}
    double hs_hdot1_norm() const;

    /// P_m Phi: zero lambda on modes with |xi| > m. Throws for m <= 0.
    NoiseOperator mollified(double m) const;

    /// Unitary-DFT spectrum of the increment sum_i lambda_i sqrt(dt) zeta_i e_i.
    /// Channel 1 draws per the given mode; channel 2 is always real.
    CVec increment_spectrum(const SpectralGrid& grid, std::uint64_t seed, std::uint64_t step,
                            double dt, ChannelMode mode) const;

    /// Physical samples of basis mode e_i on the grid.
    RVec mode_samples(const SpectralGrid& grid, const NoiseMode& mode) const;

    /// rho(x) = sum_i lambda_i^2 e_i(x)^2, the spatial quadratic-variation profile.
    RVec variation_profile(const SpectralGrid& grid) const;

private:
    NoiseOperator(std::vector<NoiseMode> modes, double half_length, int channel)
        : modes_(std::move(modes)), half_length_(half_length), channel_(channel) {}

    std::vector<NoiseMode> modes_;
    double half_length_;
    int channel_;
};

CVec increment_field(const SpectralGrid& grid, const NoiseOperator& op, std::uint64_t seed,
                     std::uint64_t step, double dt, ChannelMode mode);

}  // namespace skdv
