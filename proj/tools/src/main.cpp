// anderson_lab: runs one experiment per invocation from a JSON config.
//
// Exit status: 0 when every asserted bound holds, 1 when one is violated,
// 2 on configuration or runtime errors.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "anderson_lab/runner.hpp"

namespace fs = std::filesystem;
using namespace anderson::lab;

namespace {

Json load_config(const std::string& path) {
    if (path.empty()) return Json::object();
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError({std::string("config is not valid JSON: ") + e.what()});
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for the discrete Anderson model"};
    app.require_subcommand(1);
    std::string config_path, out_dir, format;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    auto* seed_opt = app.add_option("--seed", seed, "Override base_seed from the config");
    auto* workers_opt = app.add_option("--workers", workers, "Worker threads (0 = hardware concurrency)");
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", out_dir, "Output directory (default: standard output)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    // Options may also follow the subcommand.
    app.fallthrough();
    for (const auto& kind : experiment_kinds()) app.add_subcommand(kind, "Run the " + kind + " experiment");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const std::string experiment = app.get_subcommands().front()->get_name();
        const Json config = load_config(config_path);
        Overrides ov;
        if (*seed_opt) ov.seed = seed;
        if (*workers_opt) ov.workers = workers;
        if (format.empty()) format = config.is_object() && config.contains("format") && config["format"].is_string()
                                         ? config["format"].get<std::string>()
                                         : "csv";
        if (out_dir.empty() && config.is_object() && config.contains("out") && config["out"].is_string())
            out_dir = config["out"].get<std::string>();
        const Format fmt = parse_format(format);

        const RunResult res = run(experiment, config, ov);
        if (out_dir.empty()) {
            emit(std::cout, res, fmt);
        } else {
            fs::create_directories(out_dir);
            const fs::path file = fs::path(out_dir) / (experiment + "." + extension(fmt));
            std::ofstream os(file, std::ios::binary);
            if (!os) throw std::runtime_error("cannot write '" + file.string() + "'");
            emit(os, res, fmt);
            if (!os) throw std::runtime_error("write failed for '" + file.string() + "'");
            std::cerr << "wrote " << res.records.size() << " records to " << file.string() << "\n";
        }
        if (!res.all_pass()) {
            std::cerr << "one or more asserted bounds were violated\n";
            return 1;
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
