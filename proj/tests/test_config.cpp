#include <doctest.h>

#include <string>

#include "mosco1d/commands.hpp"
#include "mosco1d/config.hpp"
#include "mosco1d/error.hpp"

using namespace mosco1d;

namespace {

std::string config_path(const char* name) { return std::string(MOSCO1D_CONFIG_DIR) + "/" + name; }

ErrorCode code_of(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

std::string message_of(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("config round trip")
{
    for (const char* name : {"brownian.json", "lebesgue_comb.json", "lebesgue_windows.json", "cauchy_comb.json",
                             "stieltjes_comb.json"}) {
        const ScenarioConfig a = load_config(config_path(name));
        const std::string text = serialize_config(a);
        const ScenarioConfig b = parse_config(text);
        CHECK(a == b);
        CHECK(serialize_config(b) == text);
    }
}

TEST_CASE("round trip keeps atoms, spans and infinities")
{
    const std::string text = R"({"version": 1, "name": "x",
        "interval": {"a": 0, "b": "inf", "e": 1},
        "speed": {"kind": "density", "density": "rational", "p": 3, "atoms": [{"at": 2, "mass": 0.5}]},
        "set": {"kind": "interval_union", "spans": [[0.5, 1.5], [2, "inf"]]},
        "sequence": {"kind": "constant", "indices": [1]}})";
    const ScenarioConfig a = parse_config(text);
    CHECK(a.a == 0.0);
    CHECK(a.b == kInf);
    CHECK(a.speed.atoms.size() == 1);
    CHECK(a.set.spans.size() == 2);
    CHECK(parse_config(serialize_config(a)) == a);
}

TEST_CASE("malformed configs name the offending key")
{
    CHECK(code_of(R"({"version": 1, "speeed": {}})") == ErrorCode::ConfigError);
    CHECK(message_of(R"({"version": 1, "speeed": {}})").find("speeed") != std::string::npos);
    CHECK(message_of(R"({"version": 1, "solver": {"N": "many"}})").find("solver.N") != std::string::npos);
    CHECK(message_of(R"({"version": 1, "run": {"test_functions": ["sinc"]}})").find("run.test_functions") !=
          std::string::npos);
    CHECK(message_of(R"({"name": "no version"})").find("version") != std::string::npos);
    CHECK(code_of(R"({"version": 2})") == ErrorCode::ConfigError);
    CHECK(code_of("{ not json") == ErrorCode::ConfigError);
    CHECK(code_of(R"({"version": 1, "set": {"kind": "fat_cantor", "ratio": 1.5}})") == ErrorCode::ConfigError);
    CHECK_THROWS_AS(load_config(config_path("missing.json")), Error);
}

TEST_CASE("classify report")
{
    const std::string bm = classify_report(load_config(config_path("brownian.json")));
    CHECK(bm.find("global: recurrent, conservative") != std::string::npos);
    const std::string fc = classify_report(load_config(config_path("lebesgue_comb.json")));
    CHECK(fc.find("global: transient") != std::string::npos);
    CHECK(fc.find("n=32: recurrent, conservative") != std::string::npos);
}

TEST_CASE("scenario from config")
{
    const Scenario s = build_scenario(load_config(config_path("lebesgue_windows.json")));
    CHECK(s.direction == Direction::Increasing);
    CHECK(s.bc_limit == BoundaryCondition::Absorbing);
    CHECK_FALSE(s.limit_set.has_value());
    CHECK(s.test_functions.size() == 3);
    CHECK(s.indices.back() == 32);
    CHECK_THROWS_AS(build_scenario(parse_config(R"({"version": 1})")), Error);
}

TEST_CASE("unwritable output directory is an I/O error")
{
    const ScenarioConfig c = load_config(config_path("brownian.json"));
    const auto rep = run_mosco_config(c);
    try {
        write_mosco_outputs(rep, config_path("brownian.json") + "/sub");
        FAIL("expected an exception");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IoError);
    }
}
