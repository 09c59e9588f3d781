#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace anderson::lab {

using Value = std::variant<std::int64_t, double, bool, std::string>;

// One output row. Fields keep insertion order; asserted names boolean fields
// that are checked bounds (a false one makes the run exit with status 1).
struct Record {
    std::vector<std::pair<std::string, Value>> fields;
    std::vector<std::string> asserted;

    Record& set(std::string key, Value v);
    Record& check(std::string key, bool ok);  // sets a boolean field and marks it asserted
    const Value* find(const std::string& key) const;
    bool all_asserted_pass() const;
};

struct RunResult {
    std::string experiment;
    std::string digest;
    std::uint64_t base_seed = 0;
    std::uint64_t trials = 0;
    std::optional<std::string> timestamp;
    std::vector<Record> records;
    bool all_pass() const;
};

enum class Format { Csv, Json };
Format parse_format(const std::string& s);
const char* extension(Format f);

std::string format_double(double x);  // %.17g
std::string csv_quote(const std::string& s);

// Provenance columns come first, then the union of record keys in order of appearance.
void emit_csv(std::ostream& os, const RunResult& run);
// JSON Lines: one object per record. Non-finite doubles are written as strings.
void emit_json(std::ostream& os, const RunResult& run);
void emit(std::ostream& os, const RunResult& run, Format f);

}  // namespace anderson::lab
