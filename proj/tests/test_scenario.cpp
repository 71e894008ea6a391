#include <doctest.h>

#include <filesystem>
#include <string>

#include "purcell/scenario.hpp"

using namespace purcell;

namespace {

const std::filesystem::path kScenarioDir = std::filesystem::path(PURCELL_SOURCE_DIR) / "scenarios";

std::string field_of(const std::string& json_text) {
    try {
        parse_scenario(json_text, ".");
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "<no error>";
}

const char* kPoint = R"({
  "environment": {"kind": "homogeneous", "n": 1.5},
  "reference": {"kind": "homogeneous", "n": 1.0},
  "source": {"kind": "point", "position": [0, 0, 0], "orientation": [0, 0, 1]},
  "sweep": {"spectrum": {"k_min": 0.004, "k_max": 0.006, "count": 5}}
})";

} // namespace

TEST_CASE("fnv1a64 reference values") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("homogeneous point scenario runs") {
    const ScenarioConfig cfg = parse_scenario(kPoint, ".");
    CHECK(cfg.name == "scenario");
    CHECK(cfg.config_hash == fnv1a64(kPoint));
    const ScenarioResult r = run_scenario(cfg, 1);
    REQUIRE(r.gamma_ratio.size() == 5);
    for (double g : r.gamma_ratio) CHECK(g == doctest::Approx(1.5).epsilon(1e-14));
    const std::string csv = format_csv(r);
    CHECK(csv.rfind("# scenario=scenario config_fnv1a64=", 0) == 0);
    CHECK(csv.find("\nk,lambda_nm,gamma_ratio\n0.0040000000000000001,") != std::string::npos);
}

TEST_CASE("config errors name the offending field") {
    CHECK(field_of(R"({"reference": {"kind": "homogeneous", "n": 1}})") == "/environment");
    CHECK(field_of(R"({"environment": {"kind": "homogeneous", "n": "x"}, "reference": {"kind": "homogeneous", "n": 1},
                       "source": {"kind": "point", "position": [0,0,0], "orientation": [0,0,1]},
                       "sweep": {"spectrum": {"k_values": [0.005]}}})") == "/environment/n");
    CHECK(field_of(R"({"environment": {"kind": "homogeneous", "n": 1}, "reference": {"kind": "homogeneous", "n": 1},
                       "source": {"kind": "point", "position": [0,0], "orientation": [0,0,1]},
                       "sweep": {"spectrum": {"k_values": [0.005]}}})") == "/source/position");
    CHECK(field_of(R"({"environment": {"kind": "homogeneous", "n": 1}, "reference": {"kind": "homogeneous", "n": 1},
                       "source": {"kind": "point", "position": [0,0,0], "orientation": [0,0,0]},
                       "sweep": {"spectrum": {"k_values": [0.005]}}})") == "/source/orientation");
    CHECK(field_of(R"({"environment": {"kind": "homogeneous", "n": 1}, "reference": {"kind": "homogeneous", "n": 1},
                       "source": {"kind": "point", "position": [0,0,0], "orientation": [0,0,1]},
                       "sweep": {"length": {"d_min_nm": 0, "d_max_nm": 10, "count": 3, "k": 0.005}}})") == "/source/kind");
    CHECK(field_of(R"({"environment": {"kind": "qnm", "qnms": []}, "reference": {"kind": "homogeneous", "n": 1}})") ==
          "/environment/qnms");
    CHECK_THROWS_AS(parse_scenario("{not json", "."), ConfigError);
}

TEST_CASE("missing grid file is a config error") {
    try {
        load_scenario(std::filesystem::path(PURCELL_SOURCE_DIR) / "tests/data/missing_grid.json");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "/environment/modes/0/field/path");
        CHECK(std::string(e.what()).find("no_such_field.txt") != std::string::npos);
    }
}

TEST_CASE("summary JSON round trip") {
    const ScenarioSummary s{"x", 0.0049473900056532176, -1.25e-3, 12.5};
    const ScenarioSummary back = parse_summary_json(format_summary_json(s));
    CHECK(back.scenario == s.scenario);
    CHECK(back.k_or_d_at_extremum == s.k_or_d_at_extremum);
    CHECK(back.gamma_ratio_min == s.gamma_ratio_min);
    CHECK(back.gamma_ratio_max == s.gamma_ratio_max);
}

TEST_CASE("bundled scenarios parse and are deterministic across workers") {
    for (const char* name : {"l3_pair_spectrum.json", "l3_nanowire_length.json"}) {
        CAPTURE(name);
        const ScenarioConfig cfg = load_scenario(kScenarioDir / name);
        CHECK(format_csv(run_scenario(cfg, 1)) == format_csv(run_scenario(cfg, 4)));
    }
}

TEST_CASE("pair scenario in antiphase across the node is superradiant at resonance") {
    const ScenarioResult r = run_scenario(load_scenario(kScenarioDir / "l3_pair_spectrum.json"), 1);
    const ScenarioSummary s = summarize(r);
    CHECK(s.k_or_d_at_extremum == doctest::Approx(2.0 * kPi / 1270.0).epsilon(1e-4));
    CHECK(s.gamma_ratio_max > s.gamma_ratio_min);
}
