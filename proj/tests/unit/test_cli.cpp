#include <doctest.h>

#include <sstream>

#include "anderson_lab/runner.hpp"

using namespace anderson;
using namespace anderson::lab;

namespace {

std::string render(const RunResult& r, Format f) {
    std::ostringstream os;
    emit(os, r, f);
    return os.str();
}

// Minimal RFC-4180 reader for the round-trip checks.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows(1);
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (quoted) {
            if (ch == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                cell += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cell += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            rows.back().push_back(cell);
            cell.clear();
        } else if (ch == '\n') {
            rows.back().push_back(cell);
            cell.clear();
            rows.emplace_back();
        } else if (ch != '\r') {
            cell += ch;
        }
    }
    if (rows.back().empty()) rows.pop_back();
    return rows;
}

Json wegner_config(std::uint64_t trials = 2000) {
    return Json{{"experiment", "wegner"}, {"d", 1}, {"L", 2}, {"energy", 2.5}, {"eps", {0.05, 0.025}},
                {"distribution", {{"kind", "uniform"}, {"a", 0.0}, {"b", 1.0}}}, {"trials", trials},
                {"base_seed", 11}};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("every experiment kind is registered") {
    const auto& kinds = experiment_kinds();
    for (const char* k : {"dos", "wegner", "two_cube_wegner", "lifshitz", "green_check", "ct_check", "msa_single",
                          "msa_two_cube", "msa_schedule", "initial_scale", "dynamics"})
        CHECK(std::find(kinds.begin(), kinds.end(), k) != kinds.end());
}

TEST_CASE("wegner run produces the expected records") {
    const RunResult r = run("wegner", wegner_config(10000));
    CHECK(r.experiment == "wegner");
    CHECK(r.base_seed == 11);
    CHECK(r.trials == 10000);
    REQUIRE(r.records.size() == 3);
    const Value* bound = r.records[0].find("bound");
    REQUIRE(bound != nullptr);
    CHECK(std::get<double>(*bound) == doctest::Approx(1.0));
    CHECK(std::get<bool>(*r.records[0].find("pass")));
    CHECK(r.all_pass());
    CHECK_FALSE(r.timestamp.has_value());
}

TEST_CASE("results do not depend on the worker count") {
    Json c = wegner_config();
    const std::string one = render(run("wegner", c, Overrides{std::nullopt, 1u}), Format::Csv);
    const std::string four = render(run("wegner", c, Overrides{std::nullopt, 4u}), Format::Csv);
    CHECK(one == four);
    c["workers"] = 3;
    CHECK(render(run("wegner", c), Format::Csv) == one);
    // Reproducibility across runs.
    CHECK(render(run("wegner", wegner_config()), Format::Json) == render(run("wegner", wegner_config()), Format::Json));
}

TEST_CASE("CSV and JSON carry the same numbers") {
    const RunResult r = run("wegner", wegner_config());
    const auto rows = parse_csv(render(r, Format::Csv));
    std::istringstream js(render(r, Format::Json));
    std::vector<Json> objs;
    for (std::string line; std::getline(js, line);) objs.push_back(Json::parse(line));
    REQUIRE(rows.size() == objs.size() + 1);
    const auto& header = rows.front();
    for (std::size_t i = 0; i < objs.size(); ++i) {
        REQUIRE(rows[i + 1].size() == header.size());
        for (std::size_t k = 0; k < header.size(); ++k) {
            const std::string& cell = rows[i + 1][k];
            if (!objs[i].contains(header[k])) {
                CHECK(cell.empty());
                continue;
            }
            const Json& v = objs[i][header[k]];
            if (v.is_number_float()) {
                CHECK(std::strtod(cell.c_str(), nullptr) == v.get<double>());
            } else if (v.is_number_integer()) {
                CHECK(std::stoll(cell) == v.get<std::int64_t>());
            } else if (v.is_boolean()) {
                CHECK(cell == (v.get<bool>() ? "true" : "false"));
            } else if (v.is_string()) {
                CHECK(cell == v.get<std::string>());
            }
        }
    }
}

TEST_CASE("emission details") {
    RunResult r;
    r.experiment = "x";
    r.digest = "0123456789abcdef";
    r.base_seed = 3;
    r.trials = 1;
    Record rec;
    rec.set("label", std::string("a,\"b\"")).set("v", 0.1).set("n", std::int64_t{7}).check("ok", true);
    r.records.push_back(rec);
    const std::string csv = render(r, Format::Csv);
    CHECK(csv == "experiment,config_digest,base_seed,trials,label,v,n,ok\n"
                 "x,0123456789abcdef,3,1,\"a,\"\"b\"\"\",0.10000000000000001,7,true\n");
    CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
    CHECK(std::strtod(format_double(0.1).c_str(), nullptr) == 0.1);

    Record inf;
    inf.set("v", std::numeric_limits<double>::infinity());
    r.records = {inf};
    const Json j = Json::parse(render(r, Format::Json));
    CHECK(j["v"] == "inf");
    CHECK(parse_format("json") == Format::Json);
    CHECK(std::string(extension(Format::Json)) == "jsonl");
    CHECK_THROWS(parse_format("xml"));

    Record failing;
    failing.check("bound_ok", false).set("note", false);
    r.records = {failing};
    CHECK_FALSE(r.all_pass());
    Record fine;
    fine.set("note", false);
    r.records = {fine};
    CHECK(r.all_pass());
}

TEST_CASE("configuration errors list every problem") {
    Json bad = wegner_config();
    bad["trials"] = 0;
    bad["eps"] = Json::array({-1.0});
    bad["colour"] = "blue";
    try {
        run("wegner", bad);
        FAIL("expected a configuration error");
    } catch (const ConfigError& e) {
        CHECK(e.violations.size() >= 3);
        const std::string all = e.what();
        CHECK(all.find("trials") != std::string::npos);
        CHECK(all.find("eps") != std::string::npos);
        CHECK(all.find("colour") != std::string::npos);
    }
    Json alpha{{"experiment", "msa_schedule"}, {"d", 1}, {"alpha", 2.5}, {"p", 4}};
    try {
        run("msa_schedule", alpha);
        FAIL("expected a configuration error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("1 < alpha < 2p/(p+2d)") != std::string::npos);
    }
    CHECK_THROWS_AS(run("dos", wegner_config()), ConfigError);  // experiment mismatch
    Json bern = wegner_config();
    bern["distribution"] = {{"kind", "bernoulli"}, {"p", 0.5}, {"v0", 0.0}, {"v1", 1.0}};
    CHECK_THROWS_AS(run("wegner", bern), ConfigError);
    Json dim = wegner_config();
    dim["d"] = 4;
    CHECK_THROWS_AS(run("wegner", dim), ConfigError);
}

TEST_CASE("digest tracks semantic fields only") {
    const Json base = wegner_config();
    const std::string d0 = digest(normalize("wegner", base));
    Json plumbing = base;
    plumbing["workers"] = 7;
    plumbing["format"] = "json";
    plumbing["out"] = "/tmp/elsewhere";
    CHECK(digest(normalize("wegner", plumbing)) == d0);
    // Spelling out a default does not change the digest.
    Json explicit_default = base;
    explicit_default["bc"] = "simple";
    CHECK(digest(normalize("wegner", explicit_default)) == d0);
    for (const auto& [key, value] : {std::pair<std::string, Json>{"trials", 2001}, {"energy", 2.6}, {"base_seed", 12},
                                     {"L", 3}, {"eps", Json::array({0.05})}}) {
        Json changed = base;
        changed[key] = value;
        CHECK_MESSAGE(digest(normalize("wegner", changed)) != d0, key);
    }
    CHECK(digest(normalize("wegner", base, Overrides{99u, std::nullopt})) != d0);
    CHECK(run("wegner", base).digest == d0);
    CHECK(d0.size() == 16);
}

TEST_CASE("seed override") {
    const RunResult a = run("wegner", wegner_config(), Overrides{5u, std::nullopt});
    CHECK(a.base_seed == 5);
    Json c = wegner_config();
    c["base_seed"] = 5;
    CHECK(render(run("wegner", c), Format::Csv) == render(a, Format::Csv));
}

TEST_CASE("schedule experiment reports gates") {
    const Json c{{"experiment", "msa_schedule"}, {"d", 1}, {"L0", 10}, {"alpha", 1.5}, {"p", 10}, {"k_max", 4}};
    const RunResult r = run("msa_schedule", c);
    CHECK(r.all_pass());
    bool saw_growth = false;
    for (const auto& rec : r.records) {
        const Value* name = rec.find("name");
        if (name && std::get<std::string>(*name) == "scale_growth") {
            saw_growth = true;
            CHECK_FALSE(std::get<bool>(*rec.find("gate_pass")));
        }
    }
    CHECK(saw_growth);
}

}  // TEST_SUITE
