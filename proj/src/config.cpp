#include "skdv/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace skdv {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& why) {
    throw ConfigError("config field '" + field + "': " + why);
}

double get_number(const json& obj, const std::string& path, const std::string& key,
                  double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) fail(path + key, "expected a number");
    return v.get<double>();
}

/// Cutoff values additionally admit the string "inf".
double get_cutoff(const json& obj, const std::string& path, const std::string& key,
                  double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (v.is_string()) {
        if (v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        fail(path + key, "expected a number or \"inf\"");
    }
    if (!v.is_number()) fail(path + key, "expected a number or \"inf\"");
    return v.get<double>();
}

std::size_t get_size(const json& obj, const std::string& path, const std::string& key,
                     std::size_t fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_unsigned()) fail(path + key, "expected a nonnegative integer");
    return v.get<std::size_t>();
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* key : allowed)
            if (it.key() == key) ok = true;
        if (!ok) fail(path + it.key(), "unknown key");
    }
}

json cutoff_json(double value) {
    if (std::isinf(value)) return json("inf");
    return json(value);
}

}  // namespace

ApproxParams ExperimentConfig::approx_params() const {
    ApproxParams p;
    p.m = m;
    p.n = n;
    p.K = K;
    p.constants = constants;
    return p;
}

SchemeConfig ExperimentConfig::scheme_config() const {
    SchemeConfig c;
    c.dt = dt;
    c.t_end = t_end;
    c.scheme = scheme;
    c.snapshot_stride = snapshot_stride;
    c.diagnostics_stride = diagnostics_stride;
    c.dealias = dealias;
    return c;
}

void ExperimentConfig::validate() const {
    if (!(half_length > 0.0)) fail("grid.half_length", "must be positive");
    if (num_points < 16 || (num_points & (num_points - 1)) != 0)
        fail("grid.num_points", "must be a power of two, at least 16");
    if (constants.gamma2 == 0.0) fail("constants.gamma2", "must be nonzero");
    if (!(K > 0.0)) fail("approx.K", "must be positive (or \"inf\")");
    if (!(m > 0.0)) fail("approx.m", "must be positive (or \"inf\")");
    if (!(n > 0.0)) fail("approx.n", "must be positive (or \"inf\")");
    if (std::isfinite(n) && std::isfinite(m) && n < m) fail("approx.n", "must satisfy n >= m");
    if (lambda0 < 0.0) fail("noise.lambda0", "must be nonnegative");
    if (num_modes == 0) fail("noise.num_modes", "must be at least 1");
    if (!(dt > 0.0)) fail("scheme.dt", "must be positive");
    if (t_end < 0.0) fail("scheme.t_end", "must be nonnegative");
    const double steps = t_end / dt;
    if (std::abs(steps - std::llround(steps)) >
        4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, steps))
        fail("scheme.t_end", "must be an integer multiple of scheme.dt");
    if (snapshot_stride == 0) fail("scheme.snapshot_stride", "must be positive");
    if (diagnostics_stride == 0) fail("scheme.diagnostics_stride", "must be positive");
    if (num_paths == 0) fail("study.num_paths", "must be positive");
    for (double value : ladder)
        if (!(value > 0.0)) fail("study.ladder", "entries must be positive (or \"inf\")");
}

ExperimentConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ConfigError(std::string("config is not valid JSON: ") + err.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be a JSON object");
    check_keys(root, "",
               {"grid", "constants", "approx", "noise", "scheme", "initial", "study", "output"});

    ExperimentConfig cfg;
    if (root.contains("grid")) {
        const json& g = root.at("grid");
        check_keys(g, "grid.", {"half_length", "num_points"});
        cfg.half_length = get_number(g, "grid.", "half_length", cfg.half_length);
        cfg.num_points = get_size(g, "grid.", "num_points", cfg.num_points);
    }
    if (root.contains("constants")) {
        const json& c = root.at("constants");
        check_keys(c, "constants.", {"gamma1", "gamma2", "beta"});
        cfg.constants.gamma1 = get_number(c, "constants.", "gamma1", cfg.constants.gamma1);
        if (!c.contains("gamma2")) fail("constants.gamma2", "required when constants are given");
        cfg.constants.gamma2 = get_number(c, "constants.", "gamma2", cfg.constants.gamma2);
        cfg.constants.beta = get_number(c, "constants.", "beta", cfg.constants.beta);
    }
    if (root.contains("approx")) {
        const json& a = root.at("approx");
        check_keys(a, "approx.", {"m", "n", "K"});
        cfg.m = get_cutoff(a, "approx.", "m", cfg.m);
        cfg.n = get_cutoff(a, "approx.", "n", cfg.n);
        cfg.K = get_cutoff(a, "approx.", "K", cfg.K);
    }
    if (root.contains("noise")) {
        const json& nz = root.at("noise");
        check_keys(nz, "noise.", {"lambda0", "decay_r", "num_modes", "seed", "channel_mode"});
        cfg.lambda0 = get_number(nz, "noise.", "lambda0", cfg.lambda0);
        cfg.decay_r = get_number(nz, "noise.", "decay_r", cfg.decay_r);
        cfg.num_modes = get_size(nz, "noise.", "num_modes", cfg.num_modes);
        cfg.seed = get_size(nz, "noise.", "seed", cfg.seed);
        if (nz.contains("channel_mode")) {
            const std::string mode = nz.at("channel_mode").is_string()
                                         ? nz.at("channel_mode").get<std::string>()
                                         : std::string();
            if (mode == "real")
                cfg.channel_mode = ChannelMode::real_noise;
            else if (mode == "complex")
                cfg.channel_mode = ChannelMode::complex_noise;
            else
                fail("noise.channel_mode", "expected \"real\" or \"complex\"");
        }
    }
    if (root.contains("scheme")) {
        const json& s = root.at("scheme");
        check_keys(s, "scheme.",
                   {"name", "dt", "t_end", "snapshot_stride", "diagnostics_stride", "dealias"});
        cfg.dt = get_number(s, "scheme.", "dt", cfg.dt);
        cfg.t_end = get_number(s, "scheme.", "t_end", cfg.t_end);
        cfg.snapshot_stride = get_size(s, "scheme.", "snapshot_stride", cfg.snapshot_stride);
        cfg.diagnostics_stride =
            get_size(s, "scheme.", "diagnostics_stride", cfg.diagnostics_stride);
        if (s.contains("dealias")) {
            if (!s.at("dealias").is_boolean()) fail("scheme.dealias", "expected a boolean");
            cfg.dealias = s.at("dealias").get<bool>();
        }
        if (s.contains("name")) {
            const std::string name =
                s.at("name").is_string() ? s.at("name").get<std::string>() : std::string();
            if (name == "strang")
                cfg.scheme = Scheme::strang;
            else if (name == "lie")
                cfg.scheme = Scheme::lie;
            else if (name == "exp_euler_maruyama")
                cfg.scheme = Scheme::exp_euler_maruyama;
            else
                fail("scheme.name", "expected \"strang\", \"lie\" or \"exp_euler_maruyama\"");
        }
    }
    if (root.contains("initial")) {
        const json& i = root.at("initial");
        check_keys(i, "initial.", {"amp_u", "amp_v"});
        cfg.amp_u = get_number(i, "initial.", "amp_u", cfg.amp_u);
        cfg.amp_v = get_number(i, "initial.", "amp_v", cfg.amp_v);
    }
    if (root.contains("study")) {
        const json& st = root.at("study");
        check_keys(st, "study.", {"kind", "num_paths", "ladder"});
        if (st.contains("kind")) {
            if (!st.at("kind").is_string()) fail("study.kind", "expected a string");
            cfg.study_kind = st.at("kind").get<std::string>();
        }
        cfg.num_paths = get_size(st, "study.", "num_paths", cfg.num_paths);
        if (st.contains("ladder")) {
            if (!st.at("ladder").is_array()) fail("study.ladder", "expected an array");
            cfg.ladder.clear();
            for (const json& v : st.at("ladder")) {
                if (v.is_string() && v.get<std::string>() == "inf")
                    cfg.ladder.push_back(std::numeric_limits<double>::infinity());
                else if (v.is_number())
                    cfg.ladder.push_back(v.get<double>());
                else
                    fail("study.ladder", "entries must be numbers or \"inf\"");
            }
        }
    }
    if (root.contains("output")) {
        const json& o = root.at("output");
        check_keys(o, "output.", {"dir"});
        if (o.contains("dir")) {
            if (!o.at("dir").is_string()) fail("output.dir", "expected a string");
            cfg.output_dir = o.at("dir").get<std::string>();
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
    json root;
    root["grid"] = {{"half_length", cfg.half_length}, {"num_points", cfg.num_points}};
    root["constants"] = {{"gamma1", cfg.constants.gamma1},
                         {"gamma2", cfg.constants.gamma2},
                         {"beta", cfg.constants.beta}};
    root["approx"] = {
        {"m", cutoff_json(cfg.m)}, {"n", cutoff_json(cfg.n)}, {"K", cutoff_json(cfg.K)}};
    root["noise"] = {
        {"lambda0", cfg.lambda0},
        {"decay_r", cfg.decay_r},
        {"num_modes", cfg.num_modes},
        {"seed", cfg.seed},
        {"channel_mode", cfg.channel_mode == ChannelMode::real_noise ? "real" : "complex"}};
    const char* scheme_name = cfg.scheme == Scheme::strang
                                  ? "strang"
                                  : (cfg.scheme == Scheme::lie ? "lie" : "exp_euler_maruyama");
    root["scheme"] = {{"name", scheme_name},
                      {"dt", cfg.dt},
                      {"t_end", cfg.t_end},
                      {"snapshot_stride", cfg.snapshot_stride},
                      {"diagnostics_stride", cfg.diagnostics_stride},
                      {"dealias", cfg.dealias}};
    root["initial"] = {{"amp_u", cfg.amp_u}, {"amp_v", cfg.amp_v}};
    json ladder = json::array();
    for (double v : cfg.ladder) ladder.push_back(cutoff_json(v));
    root["study"] = {{"kind", cfg.study_kind}, {"num_paths", cfg.num_paths}, {"ladder", ladder}};
    root["output"] = {{"dir", cfg.output_dir}};
    return root.dump(2);
}

}  // namespace skdv
