#include "skdv/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace skdv {

namespace {

constexpr double kPi = 3.14159265358979323846;

inline void philox_round(std::array<std::uint32_t, 4>& ctr, std::array<std::uint32_t, 2>& key) {
    constexpr std::uint64_t mul0 = 0xD2511F53u;
    constexpr std::uint64_t mul1 = 0xCD9E8D57u;
    const std::uint64_t p0 = mul0 * ctr[0];
    const std::uint64_t p1 = mul1 * ctr[2];
    std::array<std::uint32_t, 4> out;
    out[0] = static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0];
    out[1] = static_cast<std::uint32_t>(p1);
    out[2] = static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1];
    out[3] = static_cast<std::uint32_t>(p0);
    ctr = out;
    key[0] += 0x9E3779B9u;  // golden-ratio Weyl constants
    key[1] += 0xBB67AE85u;
}

inline double to_unit_interval(std::uint64_t bits) {
    // (0, 1]: 53 significant bits, never zero.
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1p-53;
}

}  // namespace

std::array<std::uint32_t, 4> Philox::block(std::uint64_t key_in,
                                           const std::array<std::uint32_t, 4>& counter) {
    std::array<std::uint32_t, 4> ctr = counter;
    std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(key_in),
                                        static_cast<std::uint32_t>(key_in >> 32)};
    for (int round = 0; round < 10; ++round) philox_round(ctr, key);
    return ctr;
}

double Philox::gaussian(std::uint64_t seed, std::uint64_t step, std::uint32_t mode,
                        std::uint32_t slot) {
    const std::array<std::uint32_t, 4> counter = {static_cast<std::uint32_t>(step),
                                                  static_cast<std::uint32_t>(step >> 32), mode,
                                                  slot};
    const auto words = Philox::block(seed, counter);
    const std::uint64_t a = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
    const std::uint64_t b = (static_cast<std::uint64_t>(words[2]) << 32) | words[3];
    const double u1 = to_unit_interval(a);
    const double u2 = to_unit_interval(b);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

NoiseOperator NoiseOperator::power_law(const SpectralGrid& grid, double lambda0, double decay_r,
                                       std::size_t num_modes, int channel) {
    if (channel != 1 && channel != 2) throw std::invalid_argument("NoiseOperator: channel must be 1 or 2");
    std::vector<NoiseMode> modes;
    modes.reserve(num_modes);
    const double dxi = grid.frequency_spacing();
    std::size_t k = 1;
    while (modes.size() < num_modes) {
        if (modes.empty()) {
            modes.push_back({NoiseMode::constant, 0, lambda0});
            continue;
        }
        if (k >= grid.size() / 2)
            throw std::invalid_argument("NoiseOperator: num_modes exceeds grid bandwidth");
        const double xi = dxi * static_cast<double>(k);
        const double lambda = lambda0 * std::pow(1.0 + xi * xi, -0.5 * decay_r);
        modes.push_back({NoiseMode::cosine, k, lambda});
        if (modes.size() < num_modes) modes.push_back({NoiseMode::sine, k, lambda});
        ++k;
    }
    return NoiseOperator(std::move(modes), grid.half_length(), channel);
}

NoiseOperator NoiseOperator::zero(const SpectralGrid& grid, int channel) {
    return NoiseOperator({}, grid.half_length(), channel);
}

double NoiseOperator::frequency(const NoiseMode& mode) const {
    return kPi / half_length_ * static_cast<double>(mode.wavenumber);
}

double NoiseOperator::hs_norm(double s) const {
    double sum = 0.0;
    for (const auto& mode : modes_) {
        const double xi = frequency(mode);
        sum += mode.lambda * mode.lambda * std::pow(1.0 + xi * xi, s);
    }
    return std::sqrt(sum);
}

double NoiseOperator::hs_hdot1_norm() const {
    double sum = 0.0;
    for (const auto& mode : modes_) {
        const double xi = frequency(mode);
        sum += mode.lambda * mode.lambda * xi * xi;
    }
    return std::sqrt(sum);
}

NoiseOperator NoiseOperator::mollified(double m) const {
    if (!(m > 0.0)) throw std::invalid_argument("mollify: m must be positive");
    NoiseOperator out = *this;
    for (auto& mode : out.modes_)
        if (std::abs(frequency(mode)) > m) mode.lambda = 0.0;
    return out;
}

CVec NoiseOperator::increment_spectrum(const SpectralGrid& grid, std::uint64_t seed,
                                       std::uint64_t step, double dt, ChannelMode mode) const {
    const std::size_t n = grid.size();
    CVec spectrum(n, Complex(0.0, 0.0));
    const double sqrt_dt = std::sqrt(dt);
    const double root_n = std::sqrt(static_cast<double>(n));
    const double inv_sqrt_L = 1.0 / std::sqrt(grid.half_length());
    const bool complex_draw = channel_ == 1 && mode == ChannelMode::complex_noise;
    const std::uint32_t slot_base = channel_ == 1 ? 0 : 4;

    for (std::size_t i = 0; i < modes_.size(); ++i) {
        const NoiseMode& m = modes_[i];
        if (m.lambda == 0.0) continue;
        Complex zeta;
        if (complex_draw) {
            zeta = Complex(Philox::gaussian(seed, step, static_cast<std::uint32_t>(i), slot_base),
                           Philox::gaussian(seed, step, static_cast<std::uint32_t>(i), slot_base + 1)) /
                   std::sqrt(2.0);
        } else {
            zeta = Complex(Philox::gaussian(seed, step, static_cast<std::uint32_t>(i), slot_base), 0.0);
        }
        const Complex amp = m.lambda * sqrt_dt * zeta;
        if (m.kind == NoiseMode::constant) {
            spectrum[0] += amp * root_n * inv_sqrt_L / std::sqrt(2.0);
            continue;
        }
        const std::size_t k = m.wavenumber;
        const double parity = (k % 2 == 0) ? 1.0 : -1.0;
        const Complex coef = amp * parity * root_n * 0.5 * inv_sqrt_L;
        if (m.kind == NoiseMode::cosine) {
            spectrum[k] += coef;
            spectrum[n - k] += coef;
        } else {
            spectrum[k] += coef * Complex(0.0, -1.0);
            spectrum[n - k] += coef * Complex(0.0, 1.0);
        }
    }
    return spectrum;
}

RVec NoiseOperator::mode_samples(const SpectralGrid& grid, const NoiseMode& mode) const {
    const std::size_t n = grid.size();
    RVec samples(n);
    const double inv_sqrt_L = 1.0 / std::sqrt(grid.half_length());
    const double xi = frequency(mode);
    for (std::size_t j = 0; j < n; ++j) {
        switch (mode.kind) {
            case NoiseMode::constant:
                samples[j] = inv_sqrt_L / std::sqrt(2.0);
                break;
            case NoiseMode::cosine:
                samples[j] = std::cos(xi * grid.x(j)) * inv_sqrt_L;
                break;
            case NoiseMode::sine:
                samples[j] = std::sin(xi * grid.x(j)) * inv_sqrt_L;
                break;
        }
    }
    return samples;
}

RVec NoiseOperator::variation_profile(const SpectralGrid& grid) const {
    RVec profile(grid.size(), 0.0);
    for (const auto& mode : modes_) {
        if (mode.lambda == 0.0) continue;
        const RVec samples = mode_samples(grid, mode);
        for (std::size_t j = 0; j < grid.size(); ++j)
            profile[j] += mode.lambda * mode.lambda * samples[j] * samples[j];
    }
    return profile;
}

CVec increment_field(const SpectralGrid& grid, const NoiseOperator& op, std::uint64_t seed,
                     std::uint64_t step, double dt, ChannelMode mode) {
    return grid.inverse(op.increment_spectrum(grid, seed, step, dt, mode));
}

}  // namespace skdv
