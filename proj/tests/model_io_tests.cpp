#include <stdexcept>
#include <Eigen/Dense>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "rcsim/model_io.hpp"
#include "rcsim/topology.hpp"

using namespace rcsim;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "rcsim-model-tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ModelFile sample_model() {
    ModelFile m;
    TopologyGen gen;
    gen.n = 12;
    gen.inputs = 2;
    gen.outputs = 1;
    m.topology = generate_topology(gen, 33);
    ReadoutWeights w;
    w.w_out = Eigen::MatrixXd::Zero(1, 12);
    for (int i = 0; i < 12; ++i) w.w_out(0, i) = 0.1 * (i + 1);
    w.trained_on.samples = 500;
    w.trained_on.ridge = 1e-8;
    w.trained_on.seed = 7;
    m.readout = w;
    return m;
}

}  // namespace

TEST_SUITE("model_io") {

TEST_CASE("save, load, save again is byte-identical") {
    const ModelFile m = sample_model();
    const fs::path p1 = scratch("a.json"), p2 = scratch("b.json");
    save_model(m, p1.string());
    const ModelFile back = load_model(p1.string());
    save_model(back, p2.string());
    CHECK(slurp(p1) == slurp(p2));
    CHECK(slurp(p1) == model_json(m));

    CHECK(back.topology.w_self == m.topology.w_self);
    CHECK(back.topology.delays == m.topology.delays);
    REQUIRE(back.readout.has_value());
    CHECK(back.readout->w_out == m.readout->w_out);
    CHECK(back.readout->trained_on.samples == 500);
    CHECK(back.reservoir.decay == m.reservoir.decay);
    CHECK(back.device.v_dd == m.device.v_dd);
}

TEST_CASE("serialization is canonical: sorted keys, trailing newline") {
    const std::string text = model_json(sample_model());
    CHECK(text.back() == '\n');
    const nlohmann::json j = nlohmann::json::parse(text);
    CHECK(j.contains("format_version"));
    CHECK(j["format_version"] == 1);
    CHECK(j.contains("device"));
    CHECK(j.contains("reservoir"));
    CHECK(j.contains("topology"));
    CHECK(j.contains("readout"));
    // key order in the rendered text is alphabetical (canonical form)
    CHECK(text.find("\"device\"") < text.find("\"format_version\""));
    CHECK(text.find("\"format_version\"") < text.find("\"readout\""));
    CHECK(text.find("\"readout\"") < text.find("\"reservoir\""));
    CHECK(text.find("\"reservoir\"") < text.find("\"topology\""));
}

TEST_CASE("a model without a readout round-trips as untrained") {
    ModelFile m = sample_model();
    m.readout.reset();
    const fs::path p = scratch("untrained.json");
    save_model(m, p.string());
    const ModelFile back = load_model(p.string());
    CHECK(!back.readout.has_value());
}

TEST_CASE("dimension inconsistencies are rejected") {
    ModelFile m = sample_model();
    m.topology.w_self.conservativeResize(12, 11);
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);

    m = sample_model();
    m.readout->w_out.conservativeResize(1, 11);
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);

    m = sample_model();
    m.format_version = 2;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}

TEST_CASE("a one-ulp weight change shows up in the file") {
    const ModelFile m = sample_model();
    ModelFile tweaked = m;
    double& v = tweaked.readout->w_out(0, 3);
    v = std::nextafter(v, 2.0);
    CHECK(model_json(m) != model_json(tweaked));
}

TEST_CASE("unknown keys are tolerated, missing ones are not") {
    const fs::path p = scratch("fwd.json");
    save_model(sample_model(), p.string());

    nlohmann::json j = nlohmann::json::parse(slurp(p));
    j["future_extension"] = {{"enabled", true}};
    {
        std::ofstream out(p, std::ios::binary);
        out << j.dump(2) << "\n";
    }
    CHECK_NOTHROW(load_model(p.string()));

    j.erase("reservoir");
    {
        std::ofstream out(p, std::ios::binary);
        out << j.dump(2) << "\n";
    }
    try {
        load_model(p.string());
        FAIL("expected a missing-key error");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("reservoir") != std::string::npos);
    }
}

TEST_CASE("wrong format version is rejected at load time") {
    const fs::path p = scratch("version.json");
    save_model(sample_model(), p.string());
    nlohmann::json j = nlohmann::json::parse(slurp(p));
    j["format_version"] = 99;
    {
        std::ofstream out(p, std::ios::binary);
        out << j.dump(2) << "\n";
    }
    CHECK_THROWS(load_model(p.string()));
    CHECK_THROWS(load_model(scratch("nope.json").string()));
}

}  // TEST_SUITE
