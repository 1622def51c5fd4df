#pragma once

#include "skdv/dynamics.hpp"
#include "skdv/functionals.hpp"
#include "skdv/noise.hpp"
#include "skdv/spectral.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace skdv {

enum class Scheme { strang, lie, exp_euler_maruyama };

struct SchemeConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    Scheme scheme = Scheme::strang;
    std::size_t snapshot_stride = 1;
    std::size_t diagnostics_stride = 1;
    bool dealias = true;
};

struct Trajectory {
    std::vector<FieldPair> snapshots;
    DiagnosticsRecord diagnostics;
};

struct BlowUpError : std::runtime_error {
    BlowUpError(std::size_t step, const std::string& what_arg)
        : std::runtime_error(what_arg), step_index(step) {}
    std::size_t step_index;
    Trajectory partial;  // filled by run()
};

struct NoiseSetup {
    NoiseOperator op1;
    NoiseOperator op2;
    std::uint64_t seed = 0;
    ChannelMode mode = ChannelMode::real_noise;
};

/// One deterministic step of the split scheme.
FieldPair deterministic_step(const SpectralGrid& grid, const FieldPair& state,
                             const ApproxParams& params, double dt, Scheme scheme,
                             bool dealias = true);

/// Deterministic step followed by the propagated noise increment
/// (exponential Euler-Maruyama treatment of the stochastic convolution).
FieldPair stochastic_step(const SpectralGrid& grid, const FieldPair& state,
                          const ApproxParams& params, const NoiseSetup& noise,
                          std::uint64_t step_index, double dt, Scheme scheme,
                          bool dealias = true);

/// Advance initial data to t_end. Noise operators are mollified at params.m;
/// initial data is projected to P_m when m is finite. Deterministic given
/// (initial, params, config, seed).
Trajectory run(const SpectralGrid& grid, const FieldPair& initial, const ApproxParams& params,
               const SchemeConfig& config, const std::optional<NoiseSetup>& noise = std::nullopt);

/// Smooth benchmark datum: u = A sech(x) e^{ix}, v = B sech(x)^2.
FieldPair benchmark_initial(const SpectralGrid& grid, double amp_u = 1.0, double amp_v = 1.0);

}  // namespace skdv
