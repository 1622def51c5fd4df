#pragma once

#include "skdv/dynamics.hpp"
#include "skdv/integrators.hpp"
#include "skdv/noise.hpp"

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace skdv {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fully resolved experiment description. Every field has a default; a config
/// file overrides fields by JSON object path (see README for the schema).
/// Infinite cutoffs are written as the string "inf".
struct ExperimentConfig {
    // grid
    double half_length = 16.0 * 3.14159265358979323846;
    std::size_t num_points = 1024;

    // constants
    PhysicalConstants constants;

    // approx
    double m = std::numeric_limits<double>::infinity();
    double n = std::numeric_limits<double>::infinity();
    double K = std::numeric_limits<double>::infinity();

    // noise (shared spectrum shape for both channels)
    double lambda0 = 0.1;
    double decay_r = 3.0;
    std::size_t num_modes = 129;
    std::uint64_t seed = 0;
    ChannelMode channel_mode = ChannelMode::real_noise;

    // scheme
    double dt = 1e-3;
    double t_end = 1.0;
    Scheme scheme = Scheme::strang;
    std::size_t snapshot_stride = 1;
    std::size_t diagnostics_stride = 1;
    bool dealias = true;

    // initial datum u = amp_u sech(x) e^{ix}, v = amp_v sech^2(x)
    double amp_u = 1.0;
    double amp_v = 1.0;

    // study
    std::string study_kind = "simulate";
    std::size_t num_paths = 100;
    std::vector<double> ladder;  // per-axis cutoff ladder; empty = study default

    // output
    std::string output_dir = ".";

    ApproxParams approx_params() const;
    SchemeConfig scheme_config() const;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Parse a JSON config document; unknown keys are rejected by field name.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Serialized form re-parses to an equivalent config (round-trip invariant).
std::string serialize_config(const ExperimentConfig& config);

}  // namespace skdv
