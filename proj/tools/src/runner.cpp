#include "anderson_lab/runner.hpp"

#include <chrono>
#include <ctime>

#include "experiments.hpp"

namespace anderson::lab {

namespace {

// Plumbing keys that never change the numbers and so stay out of the digest.
const std::set<std::string> kPlumbing{"workers", "out", "format", "record_timestamp"};

struct Parsed {
    Json normalized;
    detail::Prepared prepared;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    bool timestamp = false;
};

Parsed parse(const std::string& experiment, const Json& config, const Overrides& ov) {
    const auto& reg = detail::registry();
    const auto it = reg.find(experiment);
    if (it == reg.end()) throw ConfigError({"unknown experiment '" + experiment + "'"});
    Reader r(config);
    Parsed p;
    const std::string kind = r.text("experiment", experiment);
    r.require(kind == experiment, "experiment field '" + kind + "' does not match the subcommand '" + experiment + "'");
    const auto d = r.integer("d", 1);
    r.require(d >= 1 && d <= 3, "d must be 1, 2 or 3");
    p.seed = r.count("base_seed", 1);
    if (ov.seed) p.seed = *ov.seed;
    r.override_value("base_seed", p.seed);
    Reader plumbing(config);
    p.workers = static_cast<unsigned>(plumbing.count("workers", 1));
    if (ov.workers) p.workers = *ov.workers;
    p.timestamp = plumbing.flag("record_timestamp", false);
    if (plumbing.has("format")) {
        const std::string f = plumbing.text("format", "csv");
        if (f != "csv" && f != "json") r.error("format must be csv or json");
    }
    for (const auto& e : plumbing.errors()) r.error(e);
    if (d >= 1 && d <= 3) p.prepared = it->second(r, static_cast<std::size_t>(d));
    r.finish(kPlumbing);
    if (!r.errors().empty()) throw ConfigError(r.errors());
    p.normalized = r.normalized();
    return p;
}

}  // namespace

const std::vector<std::string>& experiment_kinds() {
    static const std::vector<std::string> kinds = [] {
        std::vector<std::string> k;
        for (const auto& [name, f] : detail::registry()) k.push_back(name);
        return k;
    }();
    return kinds;
}

Json normalize(const std::string& experiment, const Json& config, const Overrides& overrides) {
    return parse(experiment, config, overrides).normalized;
}

RunResult run(const std::string& experiment, const Json& config, const Overrides& overrides) {
    Parsed p = parse(experiment, config, overrides);
    RunResult res;
    res.experiment = experiment;
    res.digest = digest(p.normalized);
    res.base_seed = p.seed;
    res.trials = p.prepared.trials;
    if (p.timestamp) {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        res.timestamp = buf;
    }
    res.records = p.prepared.run(detail::Context{p.seed, p.workers});
    return res;
}

}  // namespace anderson::lab
