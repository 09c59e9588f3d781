#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "anderson/disorder.hpp"
#include "anderson/operator.hpp"

namespace anderson::lab {

using Json = nlohmann::ordered_json;

// Validation failure listing every violated constraint.
struct ConfigError : std::runtime_error {
    explicit ConfigError(std::vector<std::string> v);
    std::vector<std::string> violations;
};

// Reads typed fields out of a config object. Each read records the effective
// value (defaults included) in a normalized copy and collects problems instead
// of throwing, so one pass reports all of them.
class Reader {
public:
    explicit Reader(const Json& src);

    double number(const std::string& key, std::optional<double> def = std::nullopt);
    std::int64_t integer(const std::string& key, std::optional<std::int64_t> def = std::nullopt);
    std::uint64_t count(const std::string& key, std::optional<std::uint64_t> def = std::nullopt);
    bool flag(const std::string& key, bool def);
    std::string text(const std::string& key, std::optional<std::string> def = std::nullopt);
    std::vector<double> numbers(const std::string& key, std::optional<std::vector<double>> def = std::nullopt);
    std::vector<std::int64_t> integers(const std::string& key,
                                       std::optional<std::vector<std::int64_t>> def = std::nullopt);
    bool has(const std::string& key) const;
    Distribution distribution(const std::string& key = "distribution",
                              std::optional<Distribution> def = std::nullopt);
    BoundaryKind boundary(const std::string& key, BoundaryKind def);

    // Records a violated constraint when ok is false.
    void require(bool ok, const std::string& message);
    void error(const std::string& message) { errors_.push_back(message); }
    // Keys the reader never consumed are reported as unknown.
    void finish(const std::set<std::string>& ignored);

    // Replaces the recorded value of key (used for command-line overrides).
    void override_value(const std::string& key, Json v) { norm_[key] = std::move(v); }
    const Json& normalized() const { return norm_; }
    const std::vector<std::string>& errors() const { return errors_; }

private:
    const Json* lookup(const std::string& key);
    const Json& src_;
    Json norm_ = Json::object();
    std::set<std::string> used_;
    std::vector<std::string> errors_;
};

Json distribution_to_json(const Distribution& d);

// FNV-1a 64 of the compact dump, as 16 hex digits.
std::string digest(const Json& normalized);

}  // namespace anderson::lab
