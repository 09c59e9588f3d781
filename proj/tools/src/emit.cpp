#include "anderson_lab/record.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>

#include <json.hpp>

#include "anderson/errors.hpp"

namespace anderson::lab {

Record& Record::set(std::string key, Value v) {
    for (auto& [k, old] : fields)
        if (k == key) {
            old = std::move(v);
            return *this;
        }
    fields.emplace_back(std::move(key), std::move(v));
    return *this;
}

Record& Record::check(std::string key, bool ok) {
    if (std::find(asserted.begin(), asserted.end(), key) == asserted.end()) asserted.push_back(key);
    return set(std::move(key), ok);
}

const Value* Record::find(const std::string& key) const {
    for (const auto& [k, v] : fields)
        if (k == key) return &v;
    return nullptr;
}

bool Record::all_asserted_pass() const {
    for (const auto& k : asserted) {
        const Value* v = find(k);
        if (!v || !std::holds_alternative<bool>(*v) || !std::get<bool>(*v)) return false;
    }
    return true;
}

bool RunResult::all_pass() const {
    return std::all_of(records.begin(), records.end(), [](const Record& r) { return r.all_asserted_pass(); });
}

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw DomainError("format must be csv or json (got '" + s + "')");
}

const char* extension(Format f) { return f == Format::Csv ? "csv" : "jsonl"; }

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

namespace {

std::string to_text(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, double>) return format_double(x);
            else if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
            else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(x);
            else return x;
        },
        v);
}

std::vector<std::pair<std::string, Value>> provenance(const RunResult& run) {
    std::vector<std::pair<std::string, Value>> p{
        {"experiment", run.experiment},
        {"config_digest", run.digest},
        {"base_seed", run.base_seed <= static_cast<std::uint64_t>(INT64_MAX) ? Value(static_cast<std::int64_t>(run.base_seed)) : Value(std::to_string(run.base_seed))},
        {"trials", static_cast<std::int64_t>(run.trials)},
    };
    if (run.timestamp) p.emplace_back("timestamp", *run.timestamp);
    return p;
}

}  // namespace

void emit_csv(std::ostream& os, const RunResult& run) {
    if (run.records.empty()) throw DomainError("nothing to emit");
    const auto prov = provenance(run);
    std::vector<std::string> header;
    for (const auto& [k, v] : prov) header.push_back(k);
    for (const auto& r : run.records)
        for (const auto& [k, v] : r.fields)
            if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << csv_quote(header[i]);
    os << "\n";
    for (const auto& r : run.records) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) os << ",";
            const Value* v = nullptr;
            if (i < prov.size()) v = &prov[i].second;
            else v = r.find(header[i]);
            if (v) os << csv_quote(to_text(*v));
        }
        os << "\n";
    }
}

void emit_json(std::ostream& os, const RunResult& run) {
    if (run.records.empty()) throw DomainError("nothing to emit");
    const auto prov = provenance(run);
    for (const auto& r : run.records) {
        nlohmann::ordered_json j;
        for (const auto& [k, v] : prov) j[k] = std::visit([](const auto& x) { return nlohmann::ordered_json(x); }, v);
        for (const auto& [k, v] : r.fields) {
            if (const double* d = std::get_if<double>(&v); d && !std::isfinite(*d))
                j[k] = format_double(*d);
            else
                j[k] = std::visit([](const auto& x) { return nlohmann::ordered_json(x); }, v);
        }
        os << j.dump() << "\n";
    }
}

void emit(std::ostream& os, const RunResult& run, Format f) {
    if (f == Format::Csv)
        emit_csv(os, run);
    else
        emit_json(os, run);
}

}  // namespace anderson::lab
