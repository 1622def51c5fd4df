#include <CLI11.hpp>
#include <json.hpp>

#include "skdv/config.hpp"
#include "skdv/experiments.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct CliOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::size_t paths = 0;
    bool paths_given = false;
    bool quiet = false;
    std::size_t threads = 0;  // accepted for interface stability; runs are sequential
};

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + path.string());
    out << content;
}

skdv::ExperimentConfig resolve_config(const CliOptions& opts) {
    skdv::ExperimentConfig cfg;
    if (!opts.config_path.empty()) cfg = skdv::load_config(opts.config_path);
    if (opts.seed_given) cfg.seed = opts.seed;
    if (opts.paths_given) cfg.num_paths = opts.paths;
    cfg.validate();
    return cfg;
}

int dispatch(const std::string& command, const CliOptions& opts) {
    const skdv::ExperimentConfig cfg = resolve_config(opts);
    const fs::path out(opts.out_dir);
    std::string report_name;
    std::string report;

    if (command == "simulate") {
        const skdv::Trajectory traj = skdv::simulate(cfg);
        write_file(out / "trajectory.csv", traj.diagnostics.to_csv());
        nlohmann::json summary;
        summary["config"] = nlohmann::json::parse(skdv::serialize_config(cfg));
        summary["study"] = "simulate";
        summary["snapshots"] = traj.snapshots.size();
        summary["final_time"] = traj.snapshots.back().time;
        report_name = "simulate.json";
        report = summary.dump(2);
    } else if (command == "deterministic-suite") {
        report_name = "deterministic_suite.json";
        report = skdv::deterministic_suite(cfg).to_json(cfg);
    } else if (command == "mc-drift") {
        report_name = "mc_drift.json";
        report = skdv::mc_drift_study(cfg).to_json(cfg);
    } else if (command == "converge-k" || command == "converge-n" || command == "converge-m") {
        const char axis = command.back();
        report_name = std::string("converge_") + axis + ".json";
        report = skdv::converge_study(cfg, axis).to_json(cfg);
    } else if (command == "linear-stochastic") {
        report_name = "linear_stochastic.json";
        report = skdv::linear_stochastic_study(cfg).to_json(cfg);
    } else {
        std::cerr << "unknown subcommand: " << command << "\n";
        return 2;
    }

    write_file(out / report_name, report);
    if (!opts.quiet) std::cout << report << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudospectral simulator for the stochastic Schrodinger-KdV system"};
    app.require_subcommand(1);
    app.fallthrough();

    CliOptions opts;
    app.add_option("--config", opts.config_path, "JSON config file");
    app.add_option("--out", opts.out_dir, "output directory");
    auto* seed_opt = app.add_option("--seed", opts.seed, "override the config seed");
    auto* paths_opt = app.add_option("--paths", opts.paths, "override the Monte Carlo path count");
    app.add_flag("--quiet", opts.quiet, "suppress report echo on stdout");
    app.add_option("--threads", opts.threads, "worker pool size (results are independent of it)");

    const char* subcommands[] = {"simulate",   "deterministic-suite", "mc-drift",
                                 "converge-k", "converge-n",          "converge-m",
                                 "linear-stochastic"};
    for (const char* name : subcommands) app.add_subcommand(name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        if (err.get_exit_code() == 0) return app.exit(err);  // --help
        app.exit(err);
        return 2;
    }

    opts.seed_given = seed_opt->count() > 0;
    opts.paths_given = paths_opt->count() > 0;

    try {
        return dispatch(app.get_subcommands().front()->get_name(), opts);
    } catch (const skdv::BlowUpError& err) {
        std::cerr << "aborted: " << err.what() << "\n";
        return 3;
    } catch (const skdv::ConfigError& err) {
        std::cerr << "invalid configuration: " << err.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& err) {
        std::cerr << "invalid configuration: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
