#include "skdv/spectral.hpp"

#include "skdv/cutoffs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skdv {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Signed mode index of bin k in [-N/2, N/2).
long signed_index(std::size_t bin, std::size_t n) {
    return bin < n / 2 ? static_cast<long>(bin) : static_cast<long>(bin) - static_cast<long>(n);
}

}  // namespace

SpectralGrid::SpectralGrid(double half_length, std::size_t num_points)
    : half_length_(half_length), n_(num_points) {
    if (!(half_length > 0.0)) throw std::invalid_argument("SpectralGrid: half_length must be positive");
    if (num_points < 16 || !is_power_of_two(num_points))
        throw std::invalid_argument("SpectralGrid: num_points must be a power of two >= 16");

    bit_reverse_.resize(n_);
    std::size_t log2n = 0;
    while ((std::size_t{1} << log2n) < n_) ++log2n;
    for (std::size_t i = 0; i < n_; ++i) {
        std::size_t r = 0;
        for (std::size_t b = 0; b < log2n; ++b)
            if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2n - 1 - b);
        bit_reverse_[i] = r;
    }
    roots_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) {
        double ang = -2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_);
        roots_[j] = Complex(std::cos(ang), std::sin(ang));
    }
}

double SpectralGrid::frequency(std::size_t bin) const {
    return frequency_spacing() * static_cast<double>(signed_index(bin, n_));
}

double SpectralGrid::nyquist_frequency() const {
    return frequency_spacing() * static_cast<double>(n_ / 2);
}

void SpectralGrid::fft(CVec& a, bool invert) const {
    const std::size_t n = n_;
    for (std::size_t i = 0; i < n; ++i)
        if (i < bit_reverse_[i]) std::swap(a[i], a[bit_reverse_[i]]);

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                Complex w = roots_[j * stride];
                if (invert) w = std::conj(w);
                Complex even = a[i + j];
                Complex odd = a[i + j + len / 2] * w;
                a[i + j] = even + odd;
                a[i + j + len / 2] = even - odd;
            }
        }
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& z : a) z *= scale;
}

CVec SpectralGrid::forward(const CVec& physical) const {
    if (physical.size() != n_) throw std::invalid_argument("forward: field length mismatch");
    CVec spectrum = physical;
    fft(spectrum, false);
    return spectrum;
}

CVec SpectralGrid::forward(const RVec& physical) const {
    if (physical.size() != n_) throw std::invalid_argument("forward: field length mismatch");
    CVec spectrum(n_);
    for (std::size_t j = 0; j < n_; ++j) spectrum[j] = Complex(physical[j], 0.0);
    fft(spectrum, false);
    return spectrum;
}

CVec SpectralGrid::inverse(const CVec& spectrum) const {
    if (spectrum.size() != n_) throw std::invalid_argument("inverse: spectrum length mismatch");
    CVec physical = spectrum;
    fft(physical, true);
    return physical;
}

RVec SpectralGrid::inverse_real(const CVec& spectrum) const {
    CVec physical = inverse(spectrum);
    RVec out(n_);
    for (std::size_t j = 0; j < n_; ++j) out[j] = physical[j].real();
    return out;
}

void derivative_spectrum(const SpectralGrid& grid, CVec& spectrum, int order) {
    if (order < 1 || order > 3) throw std::invalid_argument("derivative: order must be 1, 2 or 3");
    const std::size_t n = grid.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (order % 2 == 1 && k == n / 2) {
            spectrum[k] = Complex(0.0, 0.0);  // unpaired Nyquist mode
            continue;
        }
        Complex mult(1.0, 0.0);
        const Complex ixi(0.0, grid.frequency(k));
        for (int p = 0; p < order; ++p) mult *= ixi;
        spectrum[k] *= mult;
    }
}

CVec derivative(const SpectralGrid& grid, const CVec& field, int order) {
    CVec spectrum = grid.forward(field);
    derivative_spectrum(grid, spectrum, order);
    return grid.inverse(spectrum);
}

RVec derivative(const SpectralGrid& grid, const RVec& field, int order) {
    CVec spectrum = grid.forward(field);
    derivative_spectrum(grid, spectrum, order);
    return grid.inverse_real(spectrum);
}

void sharp_project_spectrum(const SpectralGrid& grid, CVec& spectrum, double cutoff) {
    if (!(cutoff > 0.0)) throw std::invalid_argument("sharp_project: cutoff must be positive");
    if (std::isinf(cutoff)) return;
    const std::size_t n = grid.size();
    for (std::size_t k = 0; k < n; ++k)
        if (std::abs(grid.frequency(k)) > cutoff) spectrum[k] = Complex(0.0, 0.0);
}

CVec sharp_project(const SpectralGrid& grid, const CVec& field, double cutoff) {
    CVec spectrum = grid.forward(field);
    sharp_project_spectrum(grid, spectrum, cutoff);
    return grid.inverse(spectrum);
}

RVec sharp_project(const SpectralGrid& grid, const RVec& field, double cutoff) {
    CVec spectrum = grid.forward(field);
    sharp_project_spectrum(grid, spectrum, cutoff);
    return grid.inverse_real(spectrum);
}

void smooth_tail_project_spectrum(const SpectralGrid& grid, CVec& spectrum, double n) {
    if (!(n > 0.0)) throw std::invalid_argument("smooth_tail_project: n must be positive");
    const std::size_t size = grid.size();
    for (std::size_t k = 0; k < size; ++k)
        spectrum[k] *= cutoffs::tail_profile(grid.frequency(k) / n);
}

CVec smooth_tail_project(const SpectralGrid& grid, const CVec& field, double n) {
    CVec spectrum = grid.forward(field);
    smooth_tail_project_spectrum(grid, spectrum, n);
    return grid.inverse(spectrum);
}

void dealias_spectrum(const SpectralGrid& grid, CVec& spectrum) {
    const std::size_t n = grid.size();
    const long limit = static_cast<long>(n / 3);
    for (std::size_t k = 0; k < n; ++k) {
        long idx = k < n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
        if (std::labs(idx) > limit) spectrum[k] = Complex(0.0, 0.0);
    }
}

double l2_norm(const SpectralGrid& grid, const CVec& field) {
    double sum = 0.0;
    for (const auto& z : field) sum += std::norm(z);
    return std::sqrt(sum * grid.dx());
}

double l2_norm(const SpectralGrid& grid, const RVec& field) {
    double sum = 0.0;
    for (double v : field) sum += v * v;
    return std::sqrt(sum * grid.dx());
}

double sobolev_norm(const SpectralGrid& grid, const CVec& field, double s) {
    if (s < 0.0) throw std::invalid_argument("sobolev_norm: s must be nonnegative");
    CVec spectrum = grid.forward(field);
    double sum = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double xi = grid.frequency(k);
        sum += std::pow(1.0 + xi * xi, s) * std::norm(spectrum[k]);
    }
    return std::sqrt(sum * grid.dx());
}

double sobolev_norm(const SpectralGrid& grid, const RVec& field, double s) {
    CVec c(field.size());
    for (std::size_t j = 0; j < field.size(); ++j) c[j] = Complex(field[j], 0.0);
    return sobolev_norm(grid, c, s);
}

double workspace_norm(const SpectralGrid& grid, const std::vector<FieldPair>& trajectory,
                      double s) {
    if (trajectory.empty()) throw std::invalid_argument("workspace_norm: empty trajectory");
    const std::size_t n = grid.size();
    double max_sobolev = 0.0;
    RVec env_u(n, 0.0), env_v(n, 0.0);
    for (const auto& snap : trajectory) {
        if (snap.u.values.size() != n || snap.v.values.size() != n)
            throw std::invalid_argument("workspace_norm: field length mismatch");
        max_sobolev = std::max(max_sobolev, sobolev_norm(grid, snap.u.values, s) +
                                                sobolev_norm(grid, snap.v.values, s));
        for (std::size_t j = 0; j < n; ++j) {
            env_u[j] = std::max(env_u[j], std::abs(snap.u.values[j]));
            env_v[j] = std::max(env_v[j], std::abs(snap.v.values[j]));
        }
    }
    return max_sobolev + l2_norm(grid, env_u) + l2_norm(grid, env_v);
}

}  // namespace skdv
