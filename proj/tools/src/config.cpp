#include "anderson_lab/config.hpp"

#include <cmath>
#include <cstdio>

#include "anderson/errors.hpp"

namespace anderson::lab {

namespace {

std::string join(const std::vector<std::string>& v) {
    std::string s = "configuration error:";
    for (const auto& x : v) s += "\n  - " + x;
    return s;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> v) : std::runtime_error(join(v)), violations(std::move(v)) {}

Reader::Reader(const Json& src) : src_(src) {
    if (!src_.is_object()) errors_.push_back("config must be a JSON object");
}

bool Reader::has(const std::string& key) const { return src_.is_object() && src_.contains(key); }

const Json* Reader::lookup(const std::string& key) {
    used_.insert(key);
    if (!has(key) || src_.at(key).is_null()) return nullptr;
    return &src_.at(key);
}

double Reader::number(const std::string& key, std::optional<double> def) {
    const Json* j = lookup(key);
    double v = def.value_or(0.0);
    if (!j) {
        if (!def) errors_.push_back(key + " is required");
    } else if (!j->is_number()) {
        errors_.push_back(key + " must be a number");
    } else {
        v = j->get<double>();
        if (!std::isfinite(v)) errors_.push_back(key + " must be finite");
    }
    norm_[key] = v;
    return v;
}

std::int64_t Reader::integer(const std::string& key, std::optional<std::int64_t> def) {
    const Json* j = lookup(key);
    std::int64_t v = def.value_or(0);
    if (!j) {
        if (!def) errors_.push_back(key + " is required");
    } else if (!j->is_number_integer()) {
        errors_.push_back(key + " must be an integer");
    } else {
        v = j->get<std::int64_t>();
    }
    norm_[key] = v;
    return v;
}

std::uint64_t Reader::count(const std::string& key, std::optional<std::uint64_t> def) {
    const Json* j = lookup(key);
    std::uint64_t v = def.value_or(0);
    if (!j) {
        if (!def) errors_.push_back(key + " is required");
    } else if (j->is_number_unsigned()) {
        v = j->get<std::uint64_t>();
    } else if (j->is_number_integer() && j->get<std::int64_t>() >= 0) {
        v = static_cast<std::uint64_t>(j->get<std::int64_t>());
    } else {
        errors_.push_back(key + " must be a nonnegative integer");
    }
    norm_[key] = v;
    return v;
}

bool Reader::flag(const std::string& key, bool def) {
    const Json* j = lookup(key);
    bool v = def;
    if (j) {
        if (!j->is_boolean())
            errors_.push_back(key + " must be true or false");
        else
            v = j->get<bool>();
    }
    norm_[key] = v;
    return v;
}

std::string Reader::text(const std::string& key, std::optional<std::string> def) {
    const Json* j = lookup(key);
    std::string v = def.value_or("");
    if (!j) {
        if (!def) errors_.push_back(key + " is required");
    } else if (!j->is_string()) {
        errors_.push_back(key + " must be a string");
    } else {
        v = j->get<std::string>();
    }
    norm_[key] = v;
    return v;
}

std::vector<double> Reader::numbers(const std::string& key, std::optional<std::vector<double>> def) {
    const Json* j = lookup(key);
    std::vector<double> v = def.value_or(std::vector<double>{});
    if (!j) {
        if (!def) errors_.push_back(key + " is required");
    } else if (!j->is_array()) {
        errors_.push_back(key + " must be an array of numbers");
    } else {
        v.clear();
        for (const auto& x : *j) {
            if (!x.is_number() || !std::isfinite(x.get<double>())) {
                errors_.push_back(key + " must contain finite numbers only");
                break;
            }
            v.push_back(x.get<double>());
        }
    }
    norm_[key] = v;
    return v;
}

std::vector<std::int64_t> Reader::integers(const std::string& key, std::optional<std::vector<std::int64_t>> def) {
    const Json* j = lookup(key);
    std::vector<std::int64_t> v = def.value_or(std::vector<std::int64_t>{});
    if (!j) {
        if (!def) errors_.push_back(key + " is required");
    } else if (!j->is_array()) {
        errors_.push_back(key + " must be an array of integers");
    } else {
        v.clear();
        for (const auto& x : *j) {
            if (!x.is_number_integer()) {
                errors_.push_back(key + " must contain integers only");
                break;
            }
            v.push_back(x.get<std::int64_t>());
        }
    }
    norm_[key] = v;
    return v;
}

Json distribution_to_json(const Distribution& d) {
    Json j;
    j["kind"] = to_string(d.kind);
    switch (d.kind) {
        case Distribution::Kind::Uniform:
            j["a"] = d.a;
            j["b"] = d.b;
            break;
        case Distribution::Kind::ScaledUniform:
            j["lambda"] = d.lambda;
            break;
        case Distribution::Kind::Bernoulli:
            j["p"] = d.p;
            j["v0"] = d.v0;
            j["v1"] = d.v1;
            break;
        case Distribution::Kind::Constant:
            j["value"] = d.v0;
            break;
    }
    return j;
}

Distribution Reader::distribution(const std::string& key, std::optional<Distribution> def) {
    const Json* j = lookup(key);
    Distribution out = def.value_or(Distribution::uniform(0.0, 1.0));
    if (!j) {
        if (!def) errors_.push_back(key + " is required");
        norm_[key] = distribution_to_json(out);
        return out;
    }
    Reader sub(*j);
    const std::string kind = sub.text("kind");
    try {
        if (kind == "uniform") {
            const double a = sub.number("a", 0.0), b = sub.number("b", 1.0);
            if (sub.errors().empty()) out = Distribution::uniform(a, b);
        } else if (kind == "scaled_uniform") {
            const double l = sub.number("lambda");
            if (sub.errors().empty()) out = Distribution::scaled_uniform(l);
        } else if (kind == "bernoulli") {
            const double p = sub.number("p", 0.5), v0 = sub.number("v0", 0.0), v1 = sub.number("v1", 1.0);
            if (sub.errors().empty()) out = Distribution::bernoulli(p, v0, v1);
        } else if (kind == "constant") {
            const double v = sub.number("value", 0.0);
            if (sub.errors().empty()) out = Distribution::constant(v);
        } else if (!kind.empty()) {
            sub.error("kind must be one of uniform, scaled_uniform, bernoulli, constant (got '" + kind + "')");
        }
    } catch (const std::exception& e) {
        sub.error(e.what());
    }
    sub.finish({});
    for (const auto& e : sub.errors()) errors_.push_back(key + "." + e);
    norm_[key] = distribution_to_json(out);
    return out;
}

BoundaryKind Reader::boundary(const std::string& key, BoundaryKind def) {
    const std::string s = text(key, std::string(to_string(def)));
    try {
        const BoundaryKind b = parse_boundary_kind(s);
        norm_[key] = to_string(b);
        return b;
    } catch (const std::exception&) {
        errors_.push_back(key + " must be one of simple, neumann, dirichlet (got '" + s + "')");
        return def;
    }
}

void Reader::require(bool ok, const std::string& message) {
    if (!ok) errors_.push_back(message);
}

void Reader::finish(const std::set<std::string>& ignored) {
    if (!src_.is_object()) return;
    for (const auto& [k, v] : src_.items())
        if (!used_.count(k) && !ignored.count(k)) errors_.push_back("unknown key '" + k + "'");
}

std::string digest(const Json& normalized) {
    const std::string s = normalized.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace anderson::lab
