#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anderson_lab/config.hpp"
#include "anderson_lab/record.hpp"

namespace anderson::lab {

const std::vector<std::string>& experiment_kinds();

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
};

// Validates the config for the given experiment, runs it and returns its records.
// Throws ConfigError on invalid configuration.
RunResult run(const std::string& experiment, const Json& config, const Overrides& overrides = {});

// Normalized config (defaults filled, overrides applied, plumbing keys dropped).
Json normalize(const std::string& experiment, const Json& config, const Overrides& overrides = {});

}  // namespace anderson::lab
