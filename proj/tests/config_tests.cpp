#include <stdexcept>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "rcsim/config.hpp"

using namespace rcsim;

TEST_SUITE("config") {

TEST_CASE("defaults render to JSON and parse back unchanged") {
    const RunConfig defaults;
    const std::string text = config_json(defaults);
    const RunConfig back = parse_config(text);
    CHECK(config_json(back) == text);
    CHECK(back.task == "inverter");
    CHECK(back.seed == 1);
}

TEST_CASE("partial documents override only what they mention") {
    const RunConfig cfg = parse_config(
        R"({"seed": 42, "inverter": {"ridge": 0.5, "topology": {"n": 99}}})");
    CHECK(cfg.seed == 42);
    CHECK(cfg.inverter.ridge == 0.5);
    CHECK(cfg.inverter.topology.n == 99);
    // untouched values keep their defaults
    const RunConfig defaults;
    CHECK(cfg.inverter.train_len == defaults.inverter.train_len);
    CHECK(cfg.video.pixel_thresh == defaults.video.pixel_thresh);
    CHECK(cfg.task == defaults.task);
    CHECK(cfg.autoencoder.topology.spectral_radius ==
          defaults.autoencoder.topology.spectral_radius);
}

TEST_CASE("unknown keys are reported with their dotted path") {
    try {
        parse_config(R"({"inverter": {"topology": {"spectral_radis": 0.9}}})");
        FAIL("expected rejection");
    } catch (const std::exception& e) {
        const std::string what = e.what();
        CHECK(what.find("inverter.topology.spectral_radis") != std::string::npos);
    }
    CHECK_THROWS(parse_config(R"({"speed": 3})"));
}

TEST_CASE("type mismatches are rejected") {
    CHECK_THROWS(parse_config(R"({"seed": "one"})"));
    CHECK_THROWS(parse_config(R"({"inverter": {"ridge": "small"}})"));
    CHECK_THROWS(parse_config(R"({"inverter": {"topology": {"n": 12.5}}})"));
    CHECK_THROWS(parse_config(R"({"inverter": 3})"));
    CHECK_THROWS(parse_config("not json at all"));
    // an integer-valued field accepts integers only; floats accept both
    const RunConfig ok = parse_config(R"({"inverter": {"ridge": 1}})");
    CHECK(ok.inverter.ridge == 1.0);
}

TEST_CASE("the task name is validated") {
    CHECK(parse_config(R"({"task": "video"})").task == "video");
    CHECK(parse_config(R"({"task": "autoencoder"})").task == "autoencoder");
    CHECK_THROWS(parse_config(R"({"task": "oscillator"})"));
}

TEST_CASE("string-valued enums are parsed and validated") {
    const RunConfig cfg = parse_config(
        R"({"autoencoder": {"signal": {"kind": "mackey_glass"}, "reservoir": {"backend": "asn"}}})");
    CHECK(cfg.autoencoder.signal.kind == SignalKind::mackey_glass);
    CHECK(cfg.autoencoder.reservoir.backend == ActivationBackend::asn);
    CHECK_THROWS(parse_config(R"({"autoencoder": {"signal": {"kind": "noise"}}})"));
}

}  // TEST_SUITE
